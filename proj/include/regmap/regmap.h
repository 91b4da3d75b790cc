/*
 * Copyright 2026 The regmap-gen Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * regmap.h
 *
 * C interface to the register-map generator. Handles are opaque; every
 * call that can fail returns a regmap_status. Strings returned by the
 * library stay valid until the next call that modifies the same handle,
 * or until the handle is destroyed.
 */

#ifndef REGMAP_REGMAP_H_
#define REGMAP_REGMAP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(REGMAP_BUILDING_LIBRARY)
#define REGMAP_API __declspec(dllexport)
#else
#define REGMAP_API __declspec(dllimport)
#endif
#else
#define REGMAP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum regmap_status {
  REGMAP_OK = 0,
  /* Parse, resolve, collect, allocate or verification failure. */
  REGMAP_ERROR_INPUT = 1,
  /* Bad arguments: missing top file, out-of-range bus settings, ... */
  REGMAP_ERROR_USAGE = 2,
  /* Output could not be written. */
  REGMAP_ERROR_IO = 3,
  /* Call made in the wrong order, e.g. fetching artifacts before generate. */
  REGMAP_ERROR_STATE = 4,
  REGMAP_ERROR_INTERNAL = 5
} regmap_status;

typedef enum regmap_artifact {
  REGMAP_ARTIFACT_AUTO_HEADER = 0, /* <top>_auto.vh */
  REGMAP_ARTIFACT_ADDR_HEADER = 1, /* addr_map_<top>.vh */
  REGMAP_ARTIFACT_JSON = 2,        /* regmap_<top>.json */
  REGMAP_ARTIFACT_DOCS = 3         /* regmap_<top>.md */
} regmap_artifact;

typedef enum regmap_severity {
  REGMAP_SEVERITY_NOTE = 0,
  REGMAP_SEVERITY_WARNING = 1,
  REGMAP_SEVERITY_ERROR = 2
} regmap_severity;

typedef struct regmap_project regmap_project;
typedef struct regmap_map regmap_map;

REGMAP_API const char* regmap_version(void);
REGMAP_API const char* regmap_status_string(regmap_status status);

/* ---- generation ------------------------------------------------------- */

/* Returns NULL only when top_path is NULL or allocation fails. */
REGMAP_API regmap_project* regmap_project_create(const char* top_path);
REGMAP_API void regmap_project_destroy(regmap_project* project);

/* Search directories are tried in the order added. */
REGMAP_API regmap_status regmap_project_add_search_dir(regmap_project* project,
                                                       const char* dir);
REGMAP_API regmap_status regmap_project_set_bus(regmap_project* project,
                                                int lb_hi,
                                                uint64_t base_offset);
REGMAP_API regmap_status regmap_project_set_decoder(regmap_project* project,
                                                    int enabled);
REGMAP_API regmap_status regmap_project_set_verify(regmap_project* project,
                                                   int enabled);

/* Runs the whole pipeline in memory. Nothing is written to disk. */
REGMAP_API regmap_status regmap_project_generate(regmap_project* project);

/* Name of the top module; NULL before a successful generate. */
REGMAP_API const char* regmap_project_top(const regmap_project* project);
REGMAP_API size_t regmap_project_register_count(const regmap_project* project);

/* Text of one artifact; NULL before a successful generate. */
REGMAP_API const char* regmap_project_artifact(const regmap_project* project,
                                               regmap_artifact which);
REGMAP_API const char* regmap_project_artifact_name(
    const regmap_project* project, regmap_artifact which);

/* Writes all four artifacts, or none of them. */
REGMAP_API regmap_status regmap_project_write(regmap_project* project,
                                              const char* out_dir);

/* Diagnostics from the last generate/write, warnings included, each
 * formatted as "file:line:col: severity: message". */
REGMAP_API size_t regmap_project_diagnostic_count(
    const regmap_project* project);
REGMAP_API const char* regmap_project_diagnostic(const regmap_project* project,
                                                 size_t index,
                                                 regmap_severity* severity);

/* Copy of the generated address map for use with the regmap_map_* calls. */
REGMAP_API regmap_map* regmap_project_map(const regmap_project* project);

/* ---- decode model ------------------------------------------------------ */

/* Loads an emitted JSON map. On failure returns NULL and, if `error` is not
 * NULL, stores a message there that stays valid until the next call to this
 * function on the same thread. */
REGMAP_API regmap_map* regmap_map_from_json(const char* json_text, int lb_hi,
                                            uint64_t base_offset,
                                            const char** error);
REGMAP_API void regmap_map_destroy(regmap_map* map);

REGMAP_API size_t regmap_map_size(const regmap_map* map);
REGMAP_API const char* regmap_map_entry_name(const regmap_map* map,
                                             size_t index);
REGMAP_API uint64_t regmap_map_entry_base(const regmap_map* map, size_t index);
REGMAP_API int regmap_map_entry_addr_width(const regmap_map* map,
                                           size_t index);

/* Returns 1 and fills name/offset when `addr` (masked to LB_HI+1 bits) hits
 * a register, 0 otherwise. Either output pointer may be NULL. */
REGMAP_API int regmap_map_decode(const regmap_map* map, uint64_t addr,
                                 const char** name, uint64_t* offset);

/* Re-checks alignment, bounds and overlap; returns the number of
 * violations. regmap_map_violation reads them back. */
REGMAP_API size_t regmap_map_verify(regmap_map* map);
REGMAP_API const char* regmap_map_violation(const regmap_map* map,
                                            size_t index);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* REGMAP_REGMAP_H_ */
