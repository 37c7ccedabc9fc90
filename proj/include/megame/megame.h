// Copyright 2026 The megame Authors
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

#ifndef MEGAME_MEGAME_H_
#define MEGAME_MEGAME_H_

/* C interface to the message exchange game library.
 *
 * Scenarios are opaque handles. Every call returns a meg_status; on failure
 * meg_last_error() describes the problem for the calling thread. Strings
 * returned through char** are owned by the caller and released with
 * meg_string_free(); on failure the output pointer is set to NULL. */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(MEGAME_BUILDING)
#define MEGAME_API __attribute__((visibility("default")))
#else
#define MEGAME_API
#endif

typedef struct meg_scenario meg_scenario;

typedef enum meg_status {
  MEG_OK = 0,
  MEG_ERR_INVALID_ARGUMENT = 1,
  MEG_ERR_PARSE = 2,
  MEG_ERR_REFERENCE = 3,
  MEG_ERR_NOT_NORMALIZED = 4,
  MEG_ERR_SCRIPT = 5,
  MEG_ERR_INCOHERENT = 6,
  MEG_ERR_NULL_EVENT = 7,
  MEG_ERR_KERNEL_GAP = 8,
  MEG_ERR_UNKNOWN_NAME = 9,
  MEG_ERR_IO = 10,
  MEG_ERR_INTERNAL = 11
} meg_status;

typedef enum meg_format { MEG_FORMAT_CSV = 0, MEG_FORMAT_JSONL = 1 } meg_format;

typedef enum meg_check_kind {
  MEG_CHECK_DISINTERESTED = 0,
  MEG_CHECK_DOGWHISTLE = 1,
  MEG_CHECK_AMBIGUITY = 2,
  MEG_CHECK_COHERENCE = 3
} meg_check_kind;

/* NULL strings and negative numbers mean "not given". */
typedef struct meg_check_options {
  const char* jury_type;
  const char* ulf;
  long grammar;
  long max_length;
} meg_check_options;

MEGAME_API const char* meg_last_error(void);
MEGAME_API const char* meg_status_name(meg_status status);
MEGAME_API void meg_string_free(char* s);

/* Newline-separated names of the packaged scenarios. */
MEGAME_API meg_status meg_builtin_names(char** out);

MEGAME_API meg_status meg_scenario_load_file(const char* path, meg_scenario** out);
MEGAME_API meg_status meg_scenario_load_json(const char* text, meg_scenario** out);
MEGAME_API meg_status meg_scenario_builtin(const char* name, meg_scenario** out);
/* An existing file path, else a packaged scenario name. */
MEGAME_API meg_status meg_scenario_resolve(const char* path_or_name, meg_scenario** out);
MEGAME_API void meg_scenario_free(meg_scenario* s);
MEGAME_API meg_status meg_scenario_name(const meg_scenario* s, char** out);
/* Canonical JSON document that loads back to an equal scenario. */
MEGAME_API meg_status meg_scenario_to_json(const meg_scenario* s, char** out);

/* Belief trajectories. jury_type NULL runs every jury type; rounds < 0 runs
 * the whole script. */
MEGAME_API meg_status meg_run(const meg_scenario* s, const char* jury_type, long rounds,
                              meg_format format, char** out);

/* JSON report; *positive is set to 1 when the property holds, else 0. */
MEGAME_API meg_status meg_check(const meg_scenario* s, meg_check_kind kind,
                                const meg_check_options* options, char** out,
                                int* positive);

/* One JSON line per slot combination of the ULF. */
MEGAME_API meg_status meg_enumerate(const meg_scenario* s, const char* ulf, char** out);

/* Agreement sweep. grid_step is a rational such as "1/10";
 * not_truth_interested is 0 or 1, or negative for neither. */
MEGAME_API meg_status meg_agree(const meg_scenario* s, const char* grid_step,
                                long max_rounds, int not_truth_interested, char** out,
                                int* all_agreed);

MEGAME_API meg_status meg_solve(const meg_scenario* s, const char* jury_type, long depth,
                                char** out);

/* refs holds count history names of the form "ulf" or "ulf#k". */
MEGAME_API meg_status meg_distance(const meg_scenario* s, const char* const* refs,
                                   int count, char** out);

MEGAME_API meg_status meg_dot(const meg_scenario* s, const char* ulf, long completion,
                              char** out);

#ifdef __cplusplus
}
#endif

#endif  /* MEGAME_MEGAME_H_ */
