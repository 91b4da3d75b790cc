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

#ifndef REGMAP_DECODEORACLE_HPP_
#define REGMAP_DECODEORACLE_HPP_

// Software model of the generated bus decoder. It reads an AddressMap (or
// the emitted JSON) and never consults the allocator, so it can be used to
// check allocator output and generated text against each other.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regmap/regmodel.hpp"

namespace regmap::oracle {

struct Hit {
  std::string name;
  std::uint64_t offset = 0;

  friend bool operator==(const Hit&, const Hit&) = default;
};

// Masks `addr` to lb_hi+1 bits, then finds the entry whose span holds it.
std::optional<Hit> decode(const AddressMap& map, std::uint64_t addr);

enum class TxnKind { kIdle, kWrite, kRead };

struct BusTransaction {
  std::uint64_t cycle = 0;
  TxnKind kind = TxnKind::kIdle;
  std::uint64_t addr = 0;
  std::uint32_t data = 0;
};

// Register state as seen by consumer logic during one cycle.
struct RegisterStore {
  std::map<std::string, std::uint64_t> values;
  std::map<std::string, bool> write_strobes;  // registers with a _we strobe
  std::map<std::string, bool> read_strobes;   // plus-re registers

  friend bool operator==(const RegisterStore&, const RegisterStore&) = default;
};

// All values zero, all strobes low.
RegisterStore initial_store(const AddressMap& map);

// Clocks the decoder model once per cycle. Transactions must have strictly
// increasing cycle numbers; cycles without a transaction are idle. The
// result holds one snapshot per cycle from 0 through (last cycle + 3), or
// `min_cycles` snapshots if that is longer. A transaction in cycle c is
// visible in snapshot c+1 (c+2 for registers outside the bus domain).
std::vector<RegisterStore> simulate_write_sequence(
    const AddressMap& map, std::span<const BusTransaction> txns,
    std::size_t min_cycles = 0);

struct Violation {
  std::string message;
  std::vector<std::string> names;
  std::optional<std::uint64_t> address;
};

struct VerifyReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Re-checks bounds, alignment and overlap. Spaces up to 2^24 locations are
// swept address by address; larger ones use an interval scan.
VerifyReport verify_map(const AddressMap& map);

// HIT_<name> predicates recovered from an emitted addr_map header.
struct HitPredicate {
  std::string name;
  std::uint64_t mask = 0;  // 0 for the equality form
  std::uint64_t value = 0;
};

class HitTable {
 public:
  // Throws Error(kVerify) on a define outside the two emitted forms.
  static HitTable parse(std::string_view header_text);

  int lb_hi() const { return lb_hi_; }
  const std::vector<HitPredicate>& predicates() const { return preds_; }
  bool evaluate(const HitPredicate& pred, std::uint64_t addr) const;
  // Names of every predicate true at `addr`.
  std::vector<std::string> hits(std::uint64_t addr) const;

 private:
  int lb_hi_ = -1;
  std::vector<HitPredicate> preds_;
};

// Addresses (with explanation) where decode() and the HIT predicates
// disagree, or where more than one predicate fires.
std::vector<Violation> check_hit_equivalence(const AddressMap& map,
                                             const HitTable& table);

// Compares (name, base_addr) pairs between the two emitted texts.
std::vector<Violation> check_hit_json_agreement(std::string_view addr_header,
                                                std::string_view json_text);

// Builds a map from the emitted JSON. Registers come back as plain,
// bus-domain registers; the JSON carries nothing else.
AddressMap map_from_json(std::string_view json_text, const BusConfig& bus);

}  // namespace regmap::oracle

#endif  // REGMAP_DECODEORACLE_HPP_
