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

#include "regmap/decodeoracle.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"

namespace regmap::oracle {
namespace {

constexpr std::uint64_t kSweepLimit = std::uint64_t{1} << 24;

std::uint64_t width_mask(int width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

// Spans ordered by base address for lookup.
class Decoder {
 public:
  explicit Decoder(const AddressMap& map) : map_(map) {
    order_.reserve(map.entries.size());
    for (std::size_t i = 0; i < map.entries.size(); ++i) order_.push_back(i);
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return map.entries[a].base_addr < map.entries[b].base_addr;
    });
  }

  const AddressMapEntry* find(std::uint64_t addr) const {
    addr &= map_.bus.address_space() - 1;
    auto it = std::upper_bound(
        order_.begin(), order_.end(), addr, [&](std::uint64_t a, std::size_t i) {
          return a < map_.entries[i].base_addr;
        });
    if (it == order_.begin()) return nullptr;
    const AddressMapEntry& entry = map_.entries[*std::prev(it)];
    if (addr - entry.base_addr < entry.span()) return &entry;
    return nullptr;
  }

 private:
  const AddressMap& map_;
  std::vector<std::size_t> order_;
};

struct SimReg {
  const AddressMapEntry* entry;
  std::uint64_t value = 0;  // bus-side register (the staging copy if crossing)
  bool we = false;
  bool re = false;
  std::uint64_t far_value = 0;  // consumer-domain copy when crossing
  bool far_we = false;
};

}  // namespace

std::optional<Hit> decode(const AddressMap& map, std::uint64_t addr) {
  Decoder decoder(map);
  const std::uint64_t masked = addr & (map.bus.address_space() - 1);
  const AddressMapEntry* entry = decoder.find(masked);
  if (entry == nullptr) return std::nullopt;
  return Hit{entry->name(), masked - entry->base_addr};
}

RegisterStore initial_store(const AddressMap& map) {
  RegisterStore store;
  for (const auto& entry : map.entries) {
    store.values[entry.name()] = 0;
    if (entry.reg.has_write_strobe()) store.write_strobes[entry.name()] = false;
    if (entry.reg.has_read_strobe()) store.read_strobes[entry.name()] = false;
  }
  return store;
}

std::vector<RegisterStore> simulate_write_sequence(
    const AddressMap& map, std::span<const BusTransaction> txns,
    std::size_t min_cycles) {
  for (std::size_t i = 1; i < txns.size(); ++i) {
    if (txns[i].cycle <= txns[i - 1].cycle) {
      throw Error(ErrorKind::kUsage,
                  "transactions must have strictly increasing cycles");
    }
  }
  std::size_t cycles = std::max<std::size_t>(min_cycles, 1);
  if (!txns.empty()) {
    cycles = std::max<std::size_t>(cycles, txns.back().cycle + 4);
  }

  Decoder decoder(map);
  std::vector<SimReg> regs;
  std::map<const AddressMapEntry*, std::size_t> index;
  for (const auto& entry : map.entries) {
    index[&entry] = regs.size();
    regs.push_back(SimReg{&entry});
  }

  auto snapshot = [&] {
    RegisterStore store;
    for (const auto& r : regs) {
      const RegisterSpec& spec = r.entry->reg;
      const bool far = spec.is_writable() && spec.crosses_domain();
      store.values[spec.full_name] = far ? r.far_value : r.value;
      if (spec.has_write_strobe()) {
        store.write_strobes[spec.full_name] = far ? r.far_we : r.we;
      }
      if (spec.has_read_strobe()) store.read_strobes[spec.full_name] = r.re;
    }
    return store;
  };

  std::vector<RegisterStore> trace;
  trace.reserve(cycles);
  trace.push_back(snapshot());
  std::size_t next_txn = 0;
  for (std::uint64_t cycle = 0; trace.size() < cycles; ++cycle) {
    const BusTransaction* txn = nullptr;
    if (next_txn < txns.size() && txns[next_txn].cycle == cycle) {
      txn = &txns[next_txn++];
    }
    // Consumer-domain stage samples the bus-side stage before it updates.
    for (auto& r : regs) {
      r.far_value = r.value;
      r.far_we = r.we;
      r.we = false;
      r.re = false;
      if (r.entry->reg.signal_type == SignalType::kSingleCycle) r.value = 0;
    }
    if (txn != nullptr && txn->kind != TxnKind::kIdle) {
      if (const AddressMapEntry* hit = decoder.find(txn->addr)) {
        SimReg& r = regs[index.at(hit)];
        const RegisterSpec& spec = hit->reg;
        if (txn->kind == TxnKind::kWrite && spec.is_writable()) {
          r.value = txn->data & width_mask(spec.data_width);
          r.we = spec.has_write_strobe();
        } else if (txn->kind == TxnKind::kRead && spec.has_read_strobe()) {
          r.re = true;
        }
      }
    }
    trace.push_back(snapshot());
  }
  return trace;
}

VerifyReport verify_map(const AddressMap& map) {
  VerifyReport report;
  const std::uint64_t space = map.bus.address_space();
  for (const auto& entry : map.entries) {
    const std::uint64_t span = entry.span();
    if (entry.base_addr % span != 0) {
      report.violations.push_back(
          {"base " + std::to_string(entry.base_addr) + " of '" +
               entry.name() + "' is not aligned to its " +
               std::to_string(span) + "-location span",
           {entry.name()}, entry.base_addr});
    }
    if (entry.base_addr + span > space) {
      report.violations.push_back(
          {"'" + entry.name() + "' extends past the end of the " +
               std::to_string(space) + "-location address space",
           {entry.name()}, entry.base_addr});
    }
    if (entry.base_addr < map.bus.base_offset) {
      report.violations.push_back(
          {"'" + entry.name() + "' lies below the base offset",
           {entry.name()}, entry.base_addr});
    }
  }
  for (std::size_t i = 1; i < map.entries.size(); ++i) {
    if (map.entries[i].name() == map.entries[i - 1].name()) {
      report.violations.push_back({"duplicate register name",
                                   {map.entries[i].name()}, std::nullopt});
    }
  }

  auto overlap = [&](std::size_t a, std::size_t b, std::uint64_t addr) {
    const auto& x = map.entries[a].name();
    const auto& y = map.entries[b].name();
    report.violations.push_back({"'" + x + "' and '" + y + "' overlap at " +
                                     std::to_string(addr),
                                 {x, y}, addr});
  };

  if (space <= kSweepLimit) {
    constexpr std::uint32_t kFree = ~std::uint32_t{0};
    std::vector<std::uint32_t> owner(space, kFree);
    std::set<std::pair<std::size_t, std::size_t>> reported;
    for (std::size_t i = 0; i < map.entries.size(); ++i) {
      const auto& entry = map.entries[i];
      const std::uint64_t end = std::min(entry.base_addr + entry.span(), space);
      for (std::uint64_t a = entry.base_addr; a < end; ++a) {
        if (owner[a] == kFree) {
          owner[a] = static_cast<std::uint32_t>(i);
        } else if (reported.emplace(owner[a], i).second) {
          overlap(owner[a], i, a);
        }
      }
    }
  } else {
    std::vector<std::size_t> order(map.entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return map.entries[a].base_addr < map.entries[b].base_addr;
    });
    std::optional<std::size_t> reach;  // entry with the furthest end so far
    for (std::size_t i : order) {
      const auto& entry = map.entries[i];
      if (reach) {
        const auto& prev = map.entries[*reach];
        if (prev.base_addr + prev.span() > entry.base_addr) {
          overlap(*reach, i, entry.base_addr);
        }
        if (entry.base_addr + entry.span() <= prev.base_addr + prev.span()) {
          continue;
        }
      }
      reach = i;
    }
  }
  return report;
}

HitTable HitTable::parse(std::string_view header_text) {
  static const std::regex kLbHi(R"(^`define LB_HI (\d+)\s*$)");
  static const std::regex kEq(
      R"(^`define HIT_(\w+) \(lb_addr\[`LB_HI:0\]==(\d+)\)\s*$)");
  static const std::regex kMasked(
      R"(^`define HIT_(\w+) \(\(lb_addr\[`LB_HI:0\]&~(\d+)\)==(\d+)\)\s*$)");

  HitTable table;
  std::istringstream in{std::string(header_text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.starts_with("`define")) continue;
    std::smatch m;
    if (std::regex_match(line, m, kLbHi)) {
      table.lb_hi_ = std::stoi(m[1]);
    } else if (std::regex_match(line, m, kEq)) {
      table.preds_.push_back({m[1], 0, std::stoull(m[2])});
    } else if (std::regex_match(line, m, kMasked)) {
      table.preds_.push_back({m[1], std::stoull(m[2]), std::stoull(m[3])});
    } else {
      throw Error(ErrorKind::kVerify, SourceLoc{"<addr header>", line_no, 1},
                  "unrecognized define: " + line);
    }
  }
  if (table.lb_hi_ < 0) {
    throw Error(ErrorKind::kVerify, "addr header has no LB_HI define");
  }
  return table;
}

bool HitTable::evaluate(const HitPredicate& pred, std::uint64_t addr) const {
  const std::uint64_t masked = addr & width_mask(lb_hi_ + 1);
  return (masked & ~pred.mask) == pred.value;
}

std::vector<std::string> HitTable::hits(std::uint64_t addr) const {
  std::vector<std::string> names;
  for (const auto& pred : preds_) {
    if (evaluate(pred, addr)) names.push_back(pred.name);
  }
  return names;
}

std::vector<Violation> check_hit_equivalence(const AddressMap& map,
                                             const HitTable& table) {
  std::vector<Violation> out;
  if (table.lb_hi() != map.bus.lb_hi) {
    out.push_back({"header LB_HI " + std::to_string(table.lb_hi()) +
                       " differs from map LB_HI " +
                       std::to_string(map.bus.lb_hi),
                   {}, std::nullopt});
    return out;
  }
  Decoder decoder(map);
  const std::uint64_t space = map.bus.address_space();
  for (std::uint64_t a = 0; a < space; ++a) {
    std::vector<std::string> fired = table.hits(a);
    const AddressMapEntry* entry = decoder.find(a);
    const bool agree = entry == nullptr
                           ? fired.empty()
                           : (fired.size() == 1 && fired[0] == entry->name());
    if (!agree) {
      std::string names;
      for (const auto& n : fired) names += (names.empty() ? "" : ",") + n;
      out.push_back({"address " + std::to_string(a) + ": decode gives " +
                         (entry ? entry->name() : std::string("none")) +
                         ", HIT predicates give {" + names + "}",
                     fired, a});
      if (out.size() >= 16) break;
    }
  }
  return out;
}

std::vector<Violation> check_hit_json_agreement(std::string_view addr_header,
                                                std::string_view json_text) {
  std::vector<Violation> out;
  std::map<std::string, std::uint64_t> from_header;
  const HitTable table = HitTable::parse(addr_header);
  for (const auto& pred : table.predicates()) {
    from_header[pred.name] = pred.value;
  }
  std::map<std::string, std::uint64_t> from_json;
  auto doc = nlohmann::json::parse(json_text);
  for (const auto& [name, obj] : doc.items()) {
    from_json[name] = obj.at("base_addr").get<std::uint64_t>();
  }
  for (const auto& [name, base] : from_header) {
    auto it = from_json.find(name);
    if (it == from_json.end()) {
      out.push_back({"'" + name + "' has a HIT define but no JSON entry",
                     {name}, base});
    } else if (it->second != base) {
      out.push_back({"'" + name + "' base differs: header " +
                         std::to_string(base) + ", JSON " +
                         std::to_string(it->second),
                     {name}, base});
    }
  }
  for (const auto& [name, base] : from_json) {
    if (!from_header.contains(name)) {
      out.push_back({"'" + name + "' has a JSON entry but no HIT define",
                     {name}, base});
    }
  }
  return out;
}

AddressMap map_from_json(std::string_view json_text, const BusConfig& bus) {
  bus.validate();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, SourceLoc{"<json>"}, e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorKind::kParse, SourceLoc{"<json>"},
                "register map must be a JSON object");
  }
  AddressMap map;
  map.bus = bus;
  for (const auto& [name, obj] : doc.items()) {
    try {
      AddressMapEntry entry;
      entry.reg.full_name = name;
      entry.reg.port_name = name;
      const std::string access = obj.at("access").get<std::string>();
      if (access != "rw" && access != "r") {
        throw Error(ErrorKind::kParse, SourceLoc{"<json>"},
                    "'" + name + "': access must be \"rw\" or \"r\"");
      }
      entry.reg.access = access == "r" ? Access::kRead : Access::kReadWrite;
      entry.addr_width = obj.at("addr_width").get<int>();
      entry.base_addr = obj.at("base_addr").get<std::uint64_t>();
      entry.reg.data_width = obj.at("data_width").get<int>();
      entry.reg.description = obj.at("description").get<std::string>();
      entry.reg.sign = obj.at("sign").get<std::string>() == "signed"
                           ? Sign::kSigned
                           : Sign::kUnsigned;
      if (entry.addr_width < 0 || entry.addr_width > kMaxLbHi + 1 ||
          entry.reg.data_width < 1 || entry.reg.data_width > 32) {
        throw Error(ErrorKind::kParse, SourceLoc{"<json>"},
                    "'" + name + "': width out of range");
      }
      map.entries.push_back(std::move(entry));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kParse, SourceLoc{"<json>"},
                  "'" + name + "': " + e.what());
    }
  }
  std::sort(map.entries.begin(), map.entries.end(),
            [](const AddressMapEntry& a, const AddressMapEntry& b) {
              return a.name() < b.name();
            });
  return map;
}

}  // namespace regmap::oracle
