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

#ifndef REGMAP_PIPELINE_HPP_
#define REGMAP_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "regmap/codegen.hpp"
#include "regmap/diagnostics.hpp"
#include "regmap/hiertree.hpp"
#include "regmap/regmodel.hpp"

namespace regmap {

struct RunConfig {
  std::filesystem::path top;
  std::vector<std::filesystem::path> search_dirs;
  int lb_hi = 14;
  std::uint64_t base_offset = 0;
  bool gen_decoder = true;
  bool verify = true;

  // Throws Error(kUsage).
  void validate() const;
};

struct RunResult {
  std::string top;  // top module name
  hiertree::ModuleGraph graph;
  hiertree::InstanceNode tree;
  std::vector<RegisterSpec> registers;
  AddressMap map;
  codegen::EmittedArtifacts artifacts;
};

// parse -> resolve -> collect -> allocate -> emit, plus the self-checks
// when config.verify is set. Throws Error on the first error; warnings
// found up to that point are appended to `warnings` either way.
RunResult generate(const RunConfig& config, Diagnostics* warnings = nullptr);

// Writes the four artifacts into `out_dir` through temporary files renamed
// into place, so a failed write leaves no partial outputs behind.
void write_artifacts(const std::filesystem::path& out_dir,
                     const std::string& top,
                     const codegen::EmittedArtifacts& artifacts);

}  // namespace regmap

#endif  // REGMAP_PIPELINE_HPP_
