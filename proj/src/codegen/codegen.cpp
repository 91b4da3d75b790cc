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

#include "regmap/codegen.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include <fmt/format.h>

#include "json.hpp"

namespace regmap::codegen {
namespace {

constexpr std::string_view kToolName = "regmap-gen";

std::string banner(std::string_view file_name, std::string_view top_file) {
  std::string out = fmt::format("// {}\n", file_name);
  if (!top_file.empty()) {
    out += fmt::format("// generated by {} from {}; do not edit\n", kToolName,
                       top_file);
  } else {
    out += fmt::format("// generated by {}; do not edit\n", kToolName);
  }
  return out;
}

// Joins macro body lines with backslash continuations.
std::string macro(std::string_view name, const std::vector<std::string>& body) {
  std::string out = fmt::format("`define {}", name);
  for (std::size_t i = 0; i < body.size(); ++i) {
    out += i == 0 ? " " : "\\\n";
    out += body[i];
  }
  return out + "\n";
}

std::string range(int width) { return fmt::format("[{}:0]", width - 1); }

std::string hex(std::uint64_t value, int lb_hi) {
  return fmt::format("0x{:0{}x}", value, (lb_hi + 4) / 4);
}

std::string escape_cell(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n' || c == '\r') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

struct Connection {
  std::string port;
  std::string signal;
};

}  // namespace

std::string auto_header_name(std::string_view top) {
  return fmt::format("{}_auto.vh", top);
}
std::string addr_header_name(std::string_view top) {
  return fmt::format("addr_map_{}.vh", top);
}
std::string json_map_name(std::string_view top) {
  return fmt::format("regmap_{}.json", top);
}
std::string docs_name(std::string_view top) {
  return fmt::format("regmap_{}.md", top);
}

std::string emit_instance_macros(const hiertree::InstanceNode& tree,
                                 std::span<const RegisterSpec> regs,
                                 Diagnostics* warnings) {
  std::map<std::string, std::vector<const RegisterSpec*>> by_prefix;
  for (const auto& reg : regs) by_prefix[reg.prefix].push_back(&reg);

  std::string out;
  hiertree::for_each_node(tree, [&](const hiertree::InstanceNode& node) {
    if (node.is_top()) return;
    if (!node.has_automatic_macro) {
      warn(warnings, ErrorKind::kCollect,
           SourceLoc{node.site_file, node.line, node.col},
           fmt::format("instance '{}' is lb_automatic but its connections "
                       "never use `AUTOMATIC_{}",
                       node.instance_name, node.instance_name));
    }
    std::vector<Connection> conns;
    for (const RegisterSpec* reg : by_prefix[node.prefix]) {
      conns.push_back({reg->port_name, reg->full_name});
      if (reg->has_write_strobe()) {
        conns.push_back({reg->port_name + "_we", reg->write_strobe_name()});
      }
      if (reg->has_read_strobe()) {
        conns.push_back({reg->port_name + "_re", reg->read_strobe_name()});
      }
    }
    std::sort(conns.begin(), conns.end(),
              [](const Connection& a, const Connection& b) {
                return a.port > b.port;
              });
    std::vector<std::string> body;
    for (std::size_t i = 0; i < conns.size(); ++i) {
      std::string line = fmt::format("{}.{}({}){}", i == 0 ? "," : "    ",
                                     conns[i].port, conns[i].signal,
                                     i + 1 < conns.size() ? "," : "");
      body.push_back(std::move(line));
    }
    out += fmt::format("// module={} instance={} gvar={} gcnt={}\n",
                       node.module_name, node.instance_name,
                       node.gvar.value_or("None"),
                       node.gcnt ? std::to_string(*node.gcnt) : "None");
    out += macro("AUTOMATIC_" + node.prefix, body);
  });
  return out;
}

std::string emit_addr_map_header(const AddressMap& map, std::string_view top,
                                 std::string_view top_file) {
  std::string out = fmt::format("`define LB_HI {}\n", map.bus.lb_hi);
  out += banner(addr_header_name(top), top_file);
  for (const auto& entry : map.entries) {
    out += fmt::format("// {} bw: {}, base_addr: {}\n", entry.name(),
                       entry.addr_width, entry.base_addr);
    if (entry.addr_width == 0) {
      out += fmt::format("`define HIT_{} (lb_addr[`LB_HI:0]=={})\n",
                         entry.name(), entry.base_addr);
    } else {
      out += fmt::format("`define HIT_{} ((lb_addr[`LB_HI:0]&~{})=={})\n",
                         entry.name(), entry.span() - 1, entry.base_addr);
    }
  }
  return out;
}

std::string emit_decoder(const AddressMap& map) {
  std::vector<std::string> decls;
  std::vector<std::string> defaults;
  std::vector<std::string> writes;
  std::vector<std::string> reads;
  std::map<std::string, std::vector<std::string>> domains;

  for (const auto& entry : map.entries) {
    const RegisterSpec& reg = entry.reg;
    const std::string sign = reg.sign == Sign::kSigned ? "signed " : "";
    const std::string width = range(reg.data_width);
    if (!reg.is_writable()) {
      decls.push_back(fmt::format("wire {}{} {};", sign, width, reg.full_name));
      continue;
    }
    decls.push_back(fmt::format("reg {}{} {};", sign, width, reg.full_name));
    if (reg.has_write_strobe()) {
      decls.push_back(fmt::format("reg {};", reg.write_strobe_name()));
    }
    if (reg.has_read_strobe()) {
      decls.push_back(fmt::format("reg {};", reg.read_strobe_name()));
    }

    // Bus-side names; a crossing register is captured into a staging copy.
    std::string value = reg.full_name;
    std::string strobe = reg.write_strobe_name();
    if (reg.crosses_domain()) {
      value = reg.stage_name();
      strobe = reg.write_strobe_stage_name();
      decls.push_back(fmt::format("reg {}{} {};", sign, width, value));
      if (reg.has_write_strobe()) {
        decls.push_back(fmt::format("reg {};", strobe));
      }
      auto& block = domains[reg.clock_domain];
      block.push_back(fmt::format("    {} <= {};", reg.full_name, value));
      if (reg.has_write_strobe()) {
        block.push_back(
            fmt::format("    {} <= {};", reg.write_strobe_name(), strobe));
      }
    }

    if (reg.has_write_strobe()) {
      defaults.push_back(fmt::format("    {} <= 1'b0;", strobe));
    }
    if (reg.has_read_strobe()) {
      defaults.push_back(fmt::format("    {} <= 1'b0;", reg.read_strobe_name()));
    }
    if (reg.signal_type == SignalType::kSingleCycle) {
      defaults.push_back(fmt::format("    {} <= {}'d0;", value, reg.data_width));
    }

    std::string action = fmt::format("{} <= lb_data[{}:0];", value,
                                     reg.data_width - 1);
    if (reg.has_write_strobe()) action += fmt::format(" {} <= 1'b1;", strobe);
    writes.push_back(fmt::format("        if (`HIT_{}) begin {} end",
                                 reg.full_name, action));
    if (reg.has_read_strobe()) {
      reads.push_back(fmt::format("        if (`HIT_{}) {} <= 1'b1;",
                                  reg.full_name, reg.read_strobe_name()));
    }
  }

  std::vector<std::string> body = decls;
  if (!writes.empty()) {
    body.push_back("always @(posedge lb_clk) begin");
    body.insert(body.end(), defaults.begin(), defaults.end());
    body.push_back("    if (lb_write) begin");
    body.insert(body.end(), writes.begin(), writes.end());
    body.push_back("    end");
    if (!reads.empty()) {
      body.push_back("    if (lb_read) begin");
      body.insert(body.end(), reads.begin(), reads.end());
      body.push_back("    end");
    }
    body.push_back("end");
  }
  for (const auto& [domain, lines] : domains) {
    body.push_back(fmt::format("always @(posedge {}_clk) begin", domain));
    body.insert(body.end(), lines.begin(), lines.end());
    body.push_back("end");
  }
  return macro("AUTOMATIC_decode", body);
}

std::string emit_json(const AddressMap& map) {
  nlohmann::ordered_json root = nlohmann::ordered_json::object();
  for (const auto& entry : map.entries) {
    const RegisterSpec& reg = entry.reg;
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    obj["access"] = std::string(to_string(reg.access));
    obj["addr_width"] = entry.addr_width;
    obj["base_addr"] = entry.base_addr;
    obj["data_width"] = reg.data_width;
    obj["description"] = reg.description;
    obj["sign"] = std::string(to_string(reg.sign));
    root[entry.name()] = std::move(obj);
  }
  return root.dump(4) + "\n";
}

std::string emit_docs(const AddressMap& map, std::string_view top) {
  const int lb_hi = map.bus.lb_hi;
  std::string out = top.empty() ? std::string("# Register map\n")
                                : fmt::format("# Register map: {}\n", top);
  out += "\n";
  out += fmt::format("- Address space: {} locations (LB_HI = {})\n",
                     map.bus.address_space(), lb_hi);
  out += fmt::format("- Base offset: {}\n", hex(map.bus.base_offset, lb_hi));
  out += fmt::format("- Data width: {} bits\n", map.bus.data_width);
  out += fmt::format("- Registers: {}\n", map.entries.size());
  out += "\n";
  out += "| Name | Base | Width | Access | Sign | Clock domain | Description |\n";
  out += "|------|------|-------|--------|------|--------------|-------------|\n";
  for (const auto& entry : map.entries) {
    const RegisterSpec& reg = entry.reg;
    std::string base = hex(entry.base_addr, lb_hi);
    if (entry.addr_width > 0) {
      base += ".." + hex(entry.base_addr + entry.span() - 1, lb_hi);
    }
    out += fmt::format("| {} | {} | {} | {} | {} | {} | {} |\n",
                       escape_cell(reg.full_name), base, reg.data_width,
                       to_string(reg.access), to_string(reg.sign),
                       escape_cell(reg.clock_domain),
                       escape_cell(reg.description));
  }
  return out;
}

EmittedArtifacts emit_all(const hiertree::InstanceNode& tree,
                          std::span<const RegisterSpec> regs,
                          const AddressMap& map, const EmitOptions& options,
                          Diagnostics* warnings) {
  EmittedArtifacts out;
  out.auto_header = banner(auto_header_name(options.top), options.top_file);
  out.auto_header += emit_instance_macros(tree, regs, warnings);
  if (options.gen_decoder) out.auto_header += emit_decoder(map);
  out.addr_header = emit_addr_map_header(map, options.top, options.top_file);
  out.json_map = emit_json(map);
  out.docs = emit_docs(map, options.top);
  return out;
}

}  // namespace regmap::codegen
