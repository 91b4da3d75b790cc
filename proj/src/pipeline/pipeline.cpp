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

#include "regmap/pipeline.hpp"

#include <fstream>
#include <utility>

#include "regmap/decodeoracle.hpp"

namespace regmap {
namespace fs = std::filesystem;

void RunConfig::validate() const {
  std::error_code ec;
  if (top.empty()) throw Error(ErrorKind::kUsage, "no top file given");
  if (!fs::is_regular_file(top, ec)) {
    throw Error(ErrorKind::kUsage,
                "top file '" + top.string() + "' does not exist");
  }
  for (const auto& dir : search_dirs) {
    if (!fs::is_directory(dir, ec)) {
      throw Error(ErrorKind::kUsage,
                  "search directory '" + dir.string() + "' does not exist");
    }
  }
  BusConfig{lb_hi, base_offset}.validate();
}

RunResult generate(const RunConfig& config, Diagnostics* warnings) {
  config.validate();
  RunResult result;
  result.graph =
      hiertree::resolve_modules(config.top, config.search_dirs, warnings);
  result.top = result.graph.top;
  result.tree = hiertree::build_instance_tree(result.graph, result.top);
  result.registers = regmodel::collect_registers(result.tree, result.graph,
                                                 warnings);
  result.map = regmodel::allocate(result.registers,
                                  BusConfig{config.lb_hi, config.base_offset});

  codegen::EmitOptions options;
  options.top = result.top;
  options.top_file = config.top.filename().string();
  options.gen_decoder = config.gen_decoder;
  result.artifacts = codegen::emit_all(result.tree, result.registers,
                                       result.map, options, warnings);

  if (config.verify) {
    auto fail = [](const std::string& what, const oracle::Violation& v) {
      throw Error(ErrorKind::kVerify, what + ": " + v.message);
    };
    oracle::VerifyReport report = oracle::verify_map(result.map);
    if (!report.ok()) fail("address map check failed", report.violations[0]);
    auto mismatches = oracle::check_hit_json_agreement(
        result.artifacts.addr_header, result.artifacts.json_map);
    if (!mismatches.empty()) {
      fail("HIT/JSON agreement check failed", mismatches[0]);
    }
  }
  return result;
}

void write_artifacts(const fs::path& out_dir, const std::string& top,
                     const codegen::EmittedArtifacts& artifacts) {
  const std::pair<std::string, const std::string*> files[] = {
      {codegen::auto_header_name(top), &artifacts.auto_header},
      {codegen::addr_header_name(top), &artifacts.addr_header},
      {codegen::json_map_name(top), &artifacts.json_map},
      {codegen::docs_name(top), &artifacts.docs},
  };

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorKind::kIo, SourceLoc{out_dir.string()},
                "cannot create output directory: " + ec.message());
  }

  std::vector<fs::path> temps;
  auto cleanup = [&] {
    for (const auto& t : temps) fs::remove(t, ec);
  };
  for (const auto& [name, text] : files) {
    fs::path tmp = out_dir / ("." + name + ".tmp");
    temps.push_back(tmp);
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << *text;
    out.close();
    if (!out) {
      cleanup();
      throw Error(ErrorKind::kIo, SourceLoc{tmp.string()}, "write failed");
    }
  }
  // Move existing outputs aside so a failed rename can be rolled back.
  std::vector<fs::path> backups(temps.size());
  std::vector<bool> installed(temps.size(), false);
  auto rollback = [&] {
    for (std::size_t i = 0; i < temps.size(); ++i) {
      const fs::path dest = out_dir / files[i].first;
      if (installed[i]) fs::remove(dest, ec);
      if (!backups[i].empty()) fs::rename(backups[i], dest, ec);
    }
    cleanup();
  };
  for (std::size_t i = 0; i < temps.size(); ++i) {
    const fs::path dest = out_dir / files[i].first;
    if (fs::is_regular_file(dest, ec)) {
      backups[i] = out_dir / ("." + files[i].first + ".bak");
      fs::rename(dest, backups[i], ec);
      if (ec) {
        backups[i].clear();
        rollback();
        throw Error(ErrorKind::kIo, SourceLoc{dest.string()},
                    "cannot replace existing file: " + ec.message());
      }
    }
  }
  for (std::size_t i = 0; i < temps.size(); ++i) {
    const fs::path dest = out_dir / files[i].first;
    fs::rename(temps[i], dest, ec);
    if (ec) {
      const std::string why = ec.message();
      rollback();
      throw Error(ErrorKind::kIo, SourceLoc{dest.string()},
                  "cannot move generated file into place: " + why);
    }
    installed[i] = true;
  }
  for (const auto& b : backups) {
    if (!b.empty()) fs::remove(b, ec);
  }
}

}  // namespace regmap
