// Copyright 2026 The regmap-gen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <string>

#include "regmap/vparse.hpp"

namespace regmap::vparse {
namespace {

std::string quote(const std::string& value) {
  std::string out = "\"";
  for (char c : value) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c); break;
    }
  }
  return out + "\"";
}

std::string print_attrs(const AttributeSet& attrs) {
  if (attrs.empty()) return "";
  std::string out = "(* ";
  bool first = true;
  for (const auto& entry : attrs.entries()) {
    if (!first) out += ", ";
    first = false;
    out += entry.key;
    if (entry.value) out += "=" + quote(*entry.value);
  }
  return out + " *) ";
}

}  // namespace

std::string print_normalized(const SourceUnit& unit) {
  std::string out;
  for (const auto& mod : unit.modules) {
    out += "module " + mod.name + "(";
    for (std::size_t i = 0; i < mod.ports.size(); ++i) {
      const PortDecl& port = mod.ports[i];
      out += i == 0 ? "\n    " : ",\n    ";
      out += print_attrs(port.attrs);
      out += std::string(to_string(port.direction)) + " ";
      if (port.is_signed) out += "signed ";
      if (port.msb && port.lsb) {
        out += "[" + std::to_string(*port.msb) + ":" +
               std::to_string(*port.lsb) + "] ";
      }
      out += port.name;
    }
    out += mod.ports.empty() ? ");\n" : "\n);\n";
    for (const auto& inst : mod.instances) {
      out += "    " + print_attrs(inst.attrs) + inst.module_name + " " +
             inst.instance_name + " (";
      if (inst.has_automatic_macro) out += "`AUTOMATIC_" + inst.instance_name;
      out += ");\n";
    }
    out += "endmodule\n";
  }
  return out;
}

}  // namespace regmap::vparse
