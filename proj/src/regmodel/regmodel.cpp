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

#include "regmap/regmodel.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

namespace regmap {
namespace {

constexpr int kBusDataWidth = 32;

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(text[0])) && text[0] != '_')
    return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string join_prefix(const std::string& prefix, const std::string& name) {
  return prefix.empty() ? name : prefix + "_" + name;
}

}  // namespace

std::string_view to_string(Sign sign) {
  return sign == Sign::kSigned ? "signed" : "unsigned";
}

std::string_view to_string(Access access) {
  return access == Access::kRead ? "r" : "rw";
}

std::string_view to_string(SignalType type) {
  switch (type) {
    case SignalType::kPlain: return "plain";
    case SignalType::kPlusWe: return "plus-we";
    case SignalType::kPlusRe: return "plus-re";
    case SignalType::kSingleCycle: return "single-cycle";
  }
  return "?";
}

std::optional<SignalType> parse_signal_type(std::string_view text) {
  if (text == "plain") return SignalType::kPlain;
  if (text == "plus-we") return SignalType::kPlusWe;
  if (text == "plus-re") return SignalType::kPlusRe;
  if (text == "single-cycle") return SignalType::kSingleCycle;
  return std::nullopt;
}

std::vector<std::string> RegisterSpec::declared_signals() const {
  std::vector<std::string> names{full_name};
  if (has_write_strobe()) names.push_back(write_strobe_name());
  if (has_read_strobe()) names.push_back(read_strobe_name());
  if (is_writable() && crosses_domain()) {
    names.push_back(stage_name());
    if (has_write_strobe()) names.push_back(write_strobe_stage_name());
  }
  return names;
}

void BusConfig::validate() const {
  if (lb_hi < kMinLbHi || lb_hi > kMaxLbHi) {
    throw Error(ErrorKind::kUsage,
                "LB_HI must be in [" + std::to_string(kMinLbHi) + ", " +
                    std::to_string(kMaxLbHi) + "], got " +
                    std::to_string(lb_hi));
  }
  if (base_offset >= address_space()) {
    throw Error(ErrorKind::kUsage,
                "base offset " + std::to_string(base_offset) +
                    " is outside the " + std::to_string(address_space()) +
                    "-location address space");
  }
  if (data_width != kBusDataWidth) {
    throw Error(ErrorKind::kUsage, "bus data width must be 32");
  }
}

const AddressMapEntry* AddressMap::find(std::string_view name) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), name,
      [](const AddressMapEntry& e, std::string_view n) { return e.name() < n; });
  if (it == entries.end() || it->name() != name) return nullptr;
  return &*it;
}

namespace regmodel {
namespace {

class Collector {
 public:
  Collector(const hiertree::ModuleGraph& graph, Diagnostics* warnings)
      : graph_(graph), warnings_(warnings) {}

  void visit(const hiertree::InstanceNode& node) {
    const hiertree::ModuleRef& ref = graph_.at(node.module_name);
    check_unreachable(ref);
    const auto& ports = ref.decl->ports;
    for (const auto& port : ports) {
      if (!port.attrs.contains("external")) continue;
      if (absorbed_strobe(*ref.decl, port)) continue;
      SourceLoc loc{ref.file.string(), port.line, port.col};
      if (node.is_top()) {
        throw Error(ErrorKind::kCollect, loc,
                    "external port '" + port.name + "' on top module '" +
                        node.module_name +
                        "' has no instantiation site to route it through");
      }
      regs_.push_back(make_register(node, ref, port, loc));
    }
  }

  std::vector<RegisterSpec> finish() {
    std::sort(regs_.begin(), regs_.end(),
              [](const RegisterSpec& a, const RegisterSpec& b) {
                return a.full_name < b.full_name;
              });
    std::map<std::string, const RegisterSpec*> owners;
    for (const auto& reg : regs_) {
      for (const auto& signal : reg.declared_signals()) {
        auto [it, inserted] = owners.emplace(signal, &reg);
        if (!inserted) {
          const RegisterSpec& other = *it->second;
          throw Error(ErrorKind::kCollect, reg.loc,
                      "generated signal '" + signal + "' is produced by both " +
                          other.instance_path + "." + other.port_name +
                          " and " + reg.instance_path + "." + reg.port_name);
        }
      }
    }
    return std::move(regs_);
  }

 private:
  // `<base>_we` is folded into `<base>` when the base port is external.
  static bool absorbed_strobe(const vparse::ModuleDecl& mod,
                              const vparse::PortDecl& port) {
    if (!port.name.ends_with("_we")) return false;
    const auto* base = mod.find_port(port.name.substr(0, port.name.size() - 3));
    return base != nullptr && base->attrs.contains("external");
  }

  void check_unreachable(const hiertree::ModuleRef& ref) {
    auto report = [&](const std::string& module_name,
                      const std::string& instance_name, int line, int col) {
      const hiertree::ModuleRef* target = graph_.find(module_name);
      if (target == nullptr) return;
      for (const auto& port : target->decl->ports) {
        if (!port.attrs.contains("external")) continue;
        throw Error(ErrorKind::kCollect,
                    SourceLoc{ref.file.string(), line, col},
                    "instance '" + instance_name + "' of module '" +
                        module_name +
                        "' lacks (* lb_automatic *); its external registers "
                        "would be unreachable");
      }
    };
    for (const auto& inst : ref.decl->plain_instances) {
      report(inst.module_name, inst.instance_name, inst.line, inst.col);
    }
    for (const auto& inst : ref.decl->instances) {
      if (!inst.attrs.contains("lb_automatic")) {
        report(inst.module_name, inst.instance_name, inst.line, inst.col);
      }
    }
  }

  RegisterSpec make_register(const hiertree::InstanceNode& node,
                             const hiertree::ModuleRef& ref,
                             const vparse::PortDecl& port,
                             const SourceLoc& loc) {
    auto fail = [&](const std::string& message) {
      throw Error(ErrorKind::kCollect, loc,
                  "register '" + port.name + "' in module '" +
                      ref.decl->name + "': " + message);
    };

    RegisterSpec reg;
    reg.port_name = port.name;
    reg.prefix = node.prefix;
    reg.full_name = join_prefix(node.prefix, port.name);
    reg.instance_path = node.path_string(graph_.top);
    reg.module_name = ref.decl->name;
    reg.attrs = port.attrs;
    reg.loc = loc;

    if (port.direction == vparse::Direction::kInout) {
      fail("'external' is not allowed on an inout port");
    }
    reg.access = port.direction == vparse::Direction::kOutput
                     ? Access::kRead
                     : Access::kReadWrite;
    reg.data_width = port.width();
    if (reg.data_width > kBusDataWidth) {
      fail("width " + std::to_string(reg.data_width) +
           " exceeds the 32-bit bus data width");
    }
    reg.sign = port.is_signed ? Sign::kSigned : Sign::kUnsigned;

    if (const auto* st = port.attrs.find("signal_type")) {
      auto type = st->value ? parse_signal_type(*st->value) : std::nullopt;
      if (!type) {
        fail("signal_type '" + st->value.value_or("") +
             "' is not one of plus-we, plus-re, single-cycle");
      }
      reg.signal_type = *type;
    }
    if (const auto* cd = port.attrs.find("cd")) {
      if (!cd->value || !is_identifier(*cd->value)) {
        fail("clock domain '" + cd->value.value_or("") +
             "' must be a Verilog identifier");
      }
      reg.clock_domain = *cd->value;
    }
    if (const auto* desc = port.attrs.find("description")) {
      reg.description = desc->value.value_or("");
    }

    if (const auto* we = ref.decl->find_port(port.name + "_we")) {
      if (we->width() != 1) {
        fail("strobe sibling '" + we->name + "' is " +
             std::to_string(we->width()) + " bits wide; it must be 1 bit");
      }
      if (we->direction != vparse::Direction::kInput) {
        fail("strobe sibling '" + we->name + "' must be an input");
      }
      reg.has_trailing_we = true;
    }

    if (!reg.is_writable() &&
        (reg.signal_type != SignalType::kPlain || reg.has_trailing_we)) {
      fail("read-only (output) registers cannot carry strobes or "
           "signal_type " + std::string(to_string(reg.signal_type)));
    }
    if (reg.has_read_strobe() && reg.crosses_domain()) {
      fail("plus-re read strobes exist only in the lb clock domain");
    }
    if (reg.signal_type == SignalType::kPlusWe && !reg.has_trailing_we) {
      warn(warnings_, ErrorKind::kCollect, loc,
           "register '" + port.name + "' is plus-we but module '" +
               ref.decl->name + "' has no '" + port.name + "_we' port");
    }
    addr_width_of(reg);  // validates aw early, with a location
    return reg;
  }

  const hiertree::ModuleGraph& graph_;
  Diagnostics* warnings_;
  std::vector<RegisterSpec> regs_;
};

}  // namespace

std::vector<RegisterSpec> collect_registers(const hiertree::InstanceNode& tree,
                                            const hiertree::ModuleGraph& graph,
                                            Diagnostics* warnings) {
  Collector collector(graph, warnings);
  hiertree::for_each_node(
      tree, [&](const hiertree::InstanceNode& node) { collector.visit(node); });
  return collector.finish();
}

int addr_width_of(const RegisterSpec& reg) {
  const auto* aw = reg.attrs.find("aw");
  if (aw == nullptr) return 0;
  const std::string& text = aw->value.value_or("");
  bool digits = !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
    return (c >= '0' && c <= '9') || c == '_';
  });
  int value = 0;
  if (digits) {
    for (char c : text) {
      if (c == '_') continue;
      value = value * 10 + (c - '0');
      if (value > kMaxLbHi + 1) {
        digits = false;
        break;
      }
    }
  }
  if (!digits) {
    throw Error(ErrorKind::kCollect, reg.loc,
                "register '" + reg.full_name + "': aw '" + text +
                    "' is not a non-negative integer no larger than " +
                    std::to_string(kMaxLbHi + 1));
  }
  return value;
}

AddressMap allocate(std::span<const RegisterSpec> regs, const BusConfig& bus) {
  bus.validate();
  AddressMap map;
  map.bus = bus;

  std::vector<std::size_t> order(regs.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> widths;
  widths.reserve(regs.size());
  for (const auto& reg : regs) widths.push_back(addr_width_of(reg));
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (widths[a] != widths[b]) return widths[a] > widths[b];
    return regs[a].full_name < regs[b].full_name;
  });

  const std::uint64_t space = bus.address_space();
  std::uint64_t cursor = bus.base_offset;
  for (std::size_t i : order) {
    const std::uint64_t span = std::uint64_t{1} << widths[i];
    const std::uint64_t base = (cursor + span - 1) & ~(span - 1);
    if (base + span > space) {
      throw Error(ErrorKind::kAllocate, regs[i].loc,
                  "address space exhausted: cannot place '" +
                      regs[i].full_name + "' (" + std::to_string(span) +
                      " locations) below " + std::to_string(space));
    }
    map.entries.push_back(AddressMapEntry{regs[i], base, widths[i]});
    cursor = base + span;
  }
  std::sort(map.entries.begin(), map.entries.end(),
            [](const AddressMapEntry& a, const AddressMapEntry& b) {
              return a.name() < b.name();
            });
  for (std::size_t i = 1; i < map.entries.size(); ++i) {
    if (map.entries[i].name() == map.entries[i - 1].name()) {
      throw Error(ErrorKind::kAllocate, map.entries[i].reg.loc,
                  "duplicate register name '" + map.entries[i].name() + "'");
    }
  }
  return map;
}

}  // namespace regmodel
}  // namespace regmap
