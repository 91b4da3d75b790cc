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

#include "regmap/regmap.h"

#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "regmap/decodeoracle.hpp"
#include "regmap/pipeline.hpp"

struct regmap_project {
  regmap::RunConfig config;
  std::optional<regmap::RunResult> result;
  regmap::Diagnostics diagnostics;
  std::vector<std::string> diagnostic_text;
  mutable std::string artifact_name;
};

struct regmap_map {
  regmap::AddressMap map;
  std::vector<std::string> violations;
};

namespace {

regmap_status status_for(regmap::ErrorKind kind) {
  switch (kind) {
    case regmap::ErrorKind::kUsage:
      return REGMAP_ERROR_USAGE;
    case regmap::ErrorKind::kIo:
      return REGMAP_ERROR_IO;
    default:
      return REGMAP_ERROR_INPUT;
  }
}

void record(regmap_project* p, regmap::Diagnostic diag) {
  p->diagnostic_text.push_back(diag.str());
  p->diagnostics.push_back(std::move(diag));
}

void record_internal(regmap_project* p, const char* what) {
  record(p, regmap::Diagnostic{regmap::Severity::kError,
                               regmap::ErrorKind::kIo, {},
                               std::string("internal error: ") + what});
}

// Runs `fn`, turning exceptions into diagnostics and a status.
template <typename Fn>
regmap_status guarded(regmap_project* p, Fn&& fn) {
  try {
    fn();
    return REGMAP_OK;
  } catch (const regmap::Error& e) {
    record(p, e.diagnostic());
    return status_for(e.kind());
  } catch (const std::bad_alloc&) {
    record_internal(p, "out of memory");
    return REGMAP_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    record_internal(p, e.what());
    return REGMAP_ERROR_INTERNAL;
  } catch (...) {
    record_internal(p, "unknown exception");
    return REGMAP_ERROR_INTERNAL;
  }
}

const std::string* artifact_text(const regmap::codegen::EmittedArtifacts& a,
                                 regmap_artifact which) {
  switch (which) {
    case REGMAP_ARTIFACT_AUTO_HEADER: return &a.auto_header;
    case REGMAP_ARTIFACT_ADDR_HEADER: return &a.addr_header;
    case REGMAP_ARTIFACT_JSON: return &a.json_map;
    case REGMAP_ARTIFACT_DOCS: return &a.docs;
  }
  return nullptr;
}

thread_local std::string g_json_error;

}  // namespace

extern "C" {

const char* regmap_version(void) { return "1.0.0"; }

const char* regmap_status_string(regmap_status status) {
  switch (status) {
    case REGMAP_OK: return "ok";
    case REGMAP_ERROR_INPUT: return "input error";
    case REGMAP_ERROR_USAGE: return "usage error";
    case REGMAP_ERROR_IO: return "i/o error";
    case REGMAP_ERROR_STATE: return "invalid call order";
    case REGMAP_ERROR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

regmap_project* regmap_project_create(const char* top_path) {
  if (top_path == nullptr) return nullptr;
  auto* p = new (std::nothrow) regmap_project;
  if (p == nullptr) return nullptr;
  p->config.top = top_path;
  return p;
}

void regmap_project_destroy(regmap_project* project) { delete project; }

regmap_status regmap_project_add_search_dir(regmap_project* project,
                                            const char* dir) {
  if (project == nullptr || dir == nullptr) return REGMAP_ERROR_USAGE;
  project->config.search_dirs.emplace_back(dir);
  return REGMAP_OK;
}

regmap_status regmap_project_set_bus(regmap_project* project, int lb_hi,
                                     uint64_t base_offset) {
  if (project == nullptr) return REGMAP_ERROR_USAGE;
  project->diagnostics.clear();
  project->diagnostic_text.clear();
  return guarded(project, [&] {
    regmap::BusConfig{lb_hi, base_offset}.validate();
    project->config.lb_hi = lb_hi;
    project->config.base_offset = base_offset;
  });
}

regmap_status regmap_project_set_decoder(regmap_project* project,
                                         int enabled) {
  if (project == nullptr) return REGMAP_ERROR_USAGE;
  project->config.gen_decoder = enabled != 0;
  return REGMAP_OK;
}

regmap_status regmap_project_set_verify(regmap_project* project, int enabled) {
  if (project == nullptr) return REGMAP_ERROR_USAGE;
  project->config.verify = enabled != 0;
  return REGMAP_OK;
}

regmap_status regmap_project_generate(regmap_project* project) {
  if (project == nullptr) return REGMAP_ERROR_USAGE;
  project->diagnostics.clear();
  project->diagnostic_text.clear();
  project->result.reset();
  regmap::Diagnostics warnings;
  regmap::RunResult result;
  regmap_status status = guarded(
      project, [&] { result = regmap::generate(project->config, &warnings); });
  // Warnings precede the error that stopped the run, if any.
  std::vector<regmap::Diagnostic> errors = std::move(project->diagnostics);
  project->diagnostics.clear();
  project->diagnostic_text.clear();
  for (auto& w : warnings) record(project, std::move(w));
  for (auto& e : errors) record(project, std::move(e));
  if (status == REGMAP_OK) project->result = std::move(result);
  return status;
}

const char* regmap_project_top(const regmap_project* project) {
  if (project == nullptr || !project->result) return nullptr;
  return project->result->top.c_str();
}

size_t regmap_project_register_count(const regmap_project* project) {
  if (project == nullptr || !project->result) return 0;
  return project->result->map.entries.size();
}

const char* regmap_project_artifact(const regmap_project* project,
                                    regmap_artifact which) {
  if (project == nullptr || !project->result) return nullptr;
  const std::string* text = artifact_text(project->result->artifacts, which);
  return text == nullptr ? nullptr : text->c_str();
}

const char* regmap_project_artifact_name(const regmap_project* project,
                                         regmap_artifact which) {
  if (project == nullptr || !project->result) return nullptr;
  const std::string& top = project->result->top;
  const regmap_project* p = project;
  switch (which) {
    case REGMAP_ARTIFACT_AUTO_HEADER:
      p->artifact_name = regmap::codegen::auto_header_name(top);
      break;
    case REGMAP_ARTIFACT_ADDR_HEADER:
      p->artifact_name = regmap::codegen::addr_header_name(top);
      break;
    case REGMAP_ARTIFACT_JSON:
      p->artifact_name = regmap::codegen::json_map_name(top);
      break;
    case REGMAP_ARTIFACT_DOCS:
      p->artifact_name = regmap::codegen::docs_name(top);
      break;
    default:
      return nullptr;
  }
  return p->artifact_name.c_str();
}

regmap_status regmap_project_write(regmap_project* project,
                                   const char* out_dir) {
  if (project == nullptr || out_dir == nullptr) return REGMAP_ERROR_USAGE;
  if (!project->result) return REGMAP_ERROR_STATE;
  return guarded(project, [&] {
    regmap::write_artifacts(out_dir, project->result->top,
                            project->result->artifacts);
  });
}

size_t regmap_project_diagnostic_count(const regmap_project* project) {
  return project == nullptr ? 0 : project->diagnostics.size();
}

const char* regmap_project_diagnostic(const regmap_project* project,
                                      size_t index,
                                      regmap_severity* severity) {
  if (project == nullptr || index >= project->diagnostics.size()) return nullptr;
  if (severity != nullptr) {
    switch (project->diagnostics[index].severity) {
      case regmap::Severity::kNote: *severity = REGMAP_SEVERITY_NOTE; break;
      case regmap::Severity::kWarning: *severity = REGMAP_SEVERITY_WARNING; break;
      case regmap::Severity::kError: *severity = REGMAP_SEVERITY_ERROR; break;
    }
  }
  return project->diagnostic_text[index].c_str();
}

regmap_map* regmap_project_map(const regmap_project* project) {
  if (project == nullptr || !project->result) return nullptr;
  auto* m = new (std::nothrow) regmap_map;
  if (m == nullptr) return nullptr;
  m->map = project->result->map;
  return m;
}

regmap_map* regmap_map_from_json(const char* json_text, int lb_hi,
                                 uint64_t base_offset, const char** error) {
  g_json_error.clear();
  if (json_text == nullptr) {
    g_json_error = "no JSON text";
  } else {
    try {
      auto m = std::make_unique<regmap_map>();
      m->map = regmap::oracle::map_from_json(
          json_text, regmap::BusConfig{lb_hi, base_offset});
      return m.release();
    } catch (const regmap::Error& e) {
      g_json_error = e.what();
    } catch (const std::exception& e) {
      g_json_error = e.what();
    }
  }
  if (error != nullptr) *error = g_json_error.c_str();
  return nullptr;
}

void regmap_map_destroy(regmap_map* map) { delete map; }

size_t regmap_map_size(const regmap_map* map) {
  return map == nullptr ? 0 : map->map.entries.size();
}

const char* regmap_map_entry_name(const regmap_map* map, size_t index) {
  if (map == nullptr || index >= map->map.entries.size()) return nullptr;
  return map->map.entries[index].name().c_str();
}

uint64_t regmap_map_entry_base(const regmap_map* map, size_t index) {
  if (map == nullptr || index >= map->map.entries.size()) return 0;
  return map->map.entries[index].base_addr;
}

int regmap_map_entry_addr_width(const regmap_map* map, size_t index) {
  if (map == nullptr || index >= map->map.entries.size()) return -1;
  return map->map.entries[index].addr_width;
}

int regmap_map_decode(const regmap_map* map, uint64_t addr, const char** name,
                      uint64_t* offset) {
  if (map == nullptr) return 0;
  auto hit = regmap::oracle::decode(map->map, addr);
  if (!hit) return 0;
  if (name != nullptr) *name = map->map.find(hit->name)->name().c_str();
  if (offset != nullptr) *offset = hit->offset;
  return 1;
}

size_t regmap_map_verify(regmap_map* map) {
  if (map == nullptr) return 0;
  map->violations.clear();
  for (const auto& v : regmap::oracle::verify_map(map->map).violations) {
    map->violations.push_back(v.message);
  }
  return map->violations.size();
}

const char* regmap_map_violation(const regmap_map* map, size_t index) {
  if (map == nullptr || index >= map->violations.size()) return nullptr;
  return map->violations[index].c_str();
}

}  // extern "C"
