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

#ifndef REGMAP_REGMODEL_HPP_
#define REGMAP_REGMODEL_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regmap/diagnostics.hpp"
#include "regmap/hiertree.hpp"
#include "regmap/vparse.hpp"

namespace regmap {

enum class Sign { kUnsigned, kSigned };
enum class Access { kReadWrite, kRead };
enum class SignalType { kPlain, kPlusWe, kPlusRe, kSingleCycle };

std::string_view to_string(Sign sign);
std::string_view to_string(Access access);
std::string_view to_string(SignalType type);
std::optional<SignalType> parse_signal_type(std::string_view text);

inline constexpr std::string_view kBusClockDomain = "lb";

struct RegisterSpec {
  std::string full_name;
  std::string port_name;
  std::string instance_path;  // hierarchical, e.g. "station.prng"
  std::string prefix;         // instance prefix, "" for the top module
  std::string module_name;
  int data_width = 1;
  Sign sign = Sign::kUnsigned;
  Access access = Access::kReadWrite;
  SignalType signal_type = SignalType::kPlain;
  std::string clock_domain{kBusClockDomain};
  std::string description;
  bool has_trailing_we = false;
  vparse::AttributeSet attrs;  // from the declaring port
  SourceLoc loc;

  bool has_write_strobe() const {
    return has_trailing_we || signal_type == SignalType::kPlusWe;
  }
  bool has_read_strobe() const { return signal_type == SignalType::kPlusRe; }
  bool is_writable() const { return access == Access::kReadWrite; }
  bool crosses_domain() const { return clock_domain != kBusClockDomain; }

  // Names of the signals the generated code declares for this register.
  std::string write_strobe_name() const { return full_name + "_we"; }
  std::string read_strobe_name() const { return full_name + "_re"; }
  // Bus-domain staging copies for registers in another clock domain.
  std::string stage_name() const { return full_name + "_cdc"; }
  std::string write_strobe_stage_name() const { return full_name + "_we_cdc"; }
  std::vector<std::string> declared_signals() const;
};

struct BusConfig {
  int lb_hi = 14;
  std::uint64_t base_offset = 0;
  int data_width = 32;

  std::uint64_t address_space() const { return std::uint64_t{1} << (lb_hi + 1); }
  // Throws Error(kUsage) when out of range.
  void validate() const;
};

inline constexpr int kMinLbHi = 4;
inline constexpr int kMaxLbHi = 30;

struct AddressMapEntry {
  RegisterSpec reg;
  std::uint64_t base_addr = 0;
  int addr_width = 0;

  std::uint64_t span() const { return std::uint64_t{1} << addr_width; }
  const std::string& name() const { return reg.full_name; }
};

struct AddressMap {
  BusConfig bus;
  std::vector<AddressMapEntry> entries;  // sorted by full_name

  const AddressMapEntry* find(std::string_view name) const;
};

namespace regmodel {

// One RegisterSpec per `external` port per instance replica, sorted by
// full_name. Trailing `<port>_we` siblings are folded into their register.
std::vector<RegisterSpec> collect_registers(const hiertree::InstanceNode& tree,
                                            const hiertree::ModuleGraph& graph,
                                            Diagnostics* warnings = nullptr);

// Reads the `aw` attribute: 0 when absent. Throws Error(kCollect) when the
// value is not a non-negative integer literal.
int addr_width_of(const RegisterSpec& reg);

// First-fit allocation in (descending addr_width, ascending full_name)
// order from bus.base_offset, aligning each entry to its span.
AddressMap allocate(std::span<const RegisterSpec> regs, const BusConfig& bus);

}  // namespace regmodel
}  // namespace regmap

#endif  // REGMAP_REGMODEL_HPP_
