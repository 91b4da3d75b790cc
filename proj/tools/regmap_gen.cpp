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

// regmap-gen: scan Verilog sources for register attributes and generate the
// connection macros, address map header, JSON map and register docs.
//
// Exit codes: 0 success, 1 input error, 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "regmap/regmap.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitUsage = 2;

enum class LogLevel { kQuiet, kNormal, kVerbose };

int exit_code(regmap_status status) {
  switch (status) {
    case REGMAP_OK: return kExitOk;
    case REGMAP_ERROR_USAGE: return kExitUsage;
    default: return kExitInput;
  }
}

// Prints diagnostics from index `first` on; returns the new count.
size_t print_diagnostics(const regmap_project* project, LogLevel level,
                         size_t first = 0) {
  const size_t count = regmap_project_diagnostic_count(project);
  for (size_t i = first; i < count; ++i) {
    regmap_severity severity = REGMAP_SEVERITY_ERROR;
    const char* text = regmap_project_diagnostic(project, i, &severity);
    if (severity != REGMAP_SEVERITY_ERROR && level == LogLevel::kQuiet) continue;
    std::fprintf(stderr, "%s\n", text);
  }
  return count;
}

// Accepts decimal or 0x-prefixed hexadecimal.
bool parse_address(const std::string& text, uint64_t& out) {
  if (text.empty() || text[0] == '-') return false;
  try {
    std::size_t used = 0;
    out = std::stoull(text, &used, 0);
    return used == text.size();
  } catch (const std::exception&) {
    return false;
  }
}

struct Project {
  explicit Project(const std::string& top)
      : handle(regmap_project_create(top.c_str())) {}
  ~Project() { regmap_project_destroy(handle); }
  Project(const Project&) = delete;
  Project& operator=(const Project&) = delete;

  regmap_project* handle;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate register map artifacts from attributed Verilog"};
  app.set_version_flag("--version", regmap_version());

  std::string top;
  std::vector<std::string> dirs;
  std::string out_dir;
  int lb_hi = 14;
  std::string base = "0";
  bool no_decoder = false;
  bool no_verify = false;
  bool print = false;
  bool quiet = false;
  bool verbose = false;

  app.add_option("-t,--top", top, "Top-level Verilog file")->required();
  app.add_option("-d,--dir", dirs,
                 "Directory searched for <module>.v (repeatable, in order)");
  app.add_option("-o,--out", out_dir,
                 "Output directory (default: current directory unless "
                 "--print is given alone)");
  app.add_option("--lb-hi", lb_hi, "Most significant local-bus address bit")
      ->capture_default_str();
  app.add_option("--base", base, "First address handed out (decimal or 0x..)")
      ->capture_default_str();
  app.add_flag("--no-decoder", no_decoder, "Omit the AUTOMATIC_decode macro");
  app.add_flag("--no-verify", no_verify, "Skip the address map self-checks");
  app.add_flag("--print", print, "Print the register table to standard output");
  auto* quiet_flag = app.add_flag("-q,--quiet", quiet, "Only report errors");
  app.add_flag("-v,--verbose", verbose, "Report what was written")
      ->excludes(quiet_flag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const LogLevel level = quiet     ? LogLevel::kQuiet
                         : verbose ? LogLevel::kVerbose
                                   : LogLevel::kNormal;

  uint64_t base_offset = 0;
  if (!parse_address(base, base_offset)) {
    std::fprintf(stderr, "error: --base '%s' is not a non-negative integer\n",
                 base.c_str());
    return kExitUsage;
  }

  Project project(top);
  if (project.handle == nullptr) {
    std::fprintf(stderr, "error: out of memory\n");
    return kExitInput;
  }
  for (const auto& dir : dirs) {
    regmap_project_add_search_dir(project.handle, dir.c_str());
  }
  regmap_status status = regmap_project_set_bus(project.handle, lb_hi, base_offset);
  if (status != REGMAP_OK) {
    print_diagnostics(project.handle, level);
    return exit_code(status);
  }
  regmap_project_set_decoder(project.handle, no_decoder ? 0 : 1);
  regmap_project_set_verify(project.handle, no_verify ? 0 : 1);

  status = regmap_project_generate(project.handle);
  const size_t printed = print_diagnostics(project.handle, level);
  if (status != REGMAP_OK) return exit_code(status);

  if (print) {
    std::fputs(regmap_project_artifact(project.handle, REGMAP_ARTIFACT_DOCS),
               stdout);
  }

  const bool write = !out_dir.empty() || !print;
  if (write) {
    const std::string dest = out_dir.empty() ? "." : out_dir;
    status = regmap_project_write(project.handle, dest.c_str());
    if (status != REGMAP_OK) {
      print_diagnostics(project.handle, level, printed);
      return exit_code(status);
    }
    if (level == LogLevel::kVerbose) {
      for (int a = REGMAP_ARTIFACT_AUTO_HEADER; a <= REGMAP_ARTIFACT_DOCS; ++a) {
        std::fprintf(stderr, "wrote %s/%s\n", dest.c_str(),
                     regmap_project_artifact_name(
                         project.handle, static_cast<regmap_artifact>(a)));
      }
      std::fprintf(stderr, "%zu registers\n",
                   regmap_project_register_count(project.handle));
    }
  }
  return kExitOk;
}
