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

#ifndef REGMAP_CODEGEN_HPP_
#define REGMAP_CODEGEN_HPP_

#include <span>
#include <string>
#include <string_view>

#include "regmap/diagnostics.hpp"
#include "regmap/hiertree.hpp"
#include "regmap/regmodel.hpp"

namespace regmap::codegen {

// Output texts. All use LF line endings and end with exactly one newline.
struct EmittedArtifacts {
  std::string auto_header;  // <top>_auto.vh: instance macros + decoder
  std::string addr_header;  // addr_map_<top>.vh
  std::string json_map;     // regmap_<top>.json
  std::string docs;         // regmap_<top>.md
};

std::string auto_header_name(std::string_view top);
std::string addr_header_name(std::string_view top);
std::string json_map_name(std::string_view top);
std::string docs_name(std::string_view top);

// One `define AUTOMATIC_<prefix> per non-top node, each preceded by a
// "// module=... instance=... gvar=... gcnt=..." comment. Bodies are
// comma-led so the macro can follow the last explicit connection.
std::string emit_instance_macros(const hiertree::InstanceNode& tree,
                                 std::span<const RegisterSpec> regs,
                                 Diagnostics* warnings = nullptr);

// `define LB_HI first, then a comment and HIT_<name> predicate per entry.
std::string emit_addr_map_header(const AddressMap& map, std::string_view top,
                                 std::string_view top_file = {});

// The `define AUTOMATIC_decode macro: signal declarations plus one
// always block for the bus clock and one per additional clock domain.
std::string emit_decoder(const AddressMap& map);

std::string emit_json(const AddressMap& map);

std::string emit_docs(const AddressMap& map, std::string_view top = {});

struct EmitOptions {
  std::string top;       // top module name
  std::string top_file;  // shown in banners; file name only
  bool gen_decoder = true;
};

EmittedArtifacts emit_all(const hiertree::InstanceNode& tree,
                          std::span<const RegisterSpec> regs,
                          const AddressMap& map, const EmitOptions& options,
                          Diagnostics* warnings = nullptr);

}  // namespace regmap::codegen

#endif  // REGMAP_CODEGEN_HPP_
