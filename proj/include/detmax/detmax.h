// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the determinant-maximization coreset library. Every call
 * returns a status; on failure detmax_last_error() describes the problem.
 * Strings returned through char** are owned by the caller and released with
 * detmax_string_free. Handles are opaque and released with their _free call.
 */

#ifndef DETMAX_DETMAX_H_
#define DETMAX_DETMAX_H_

#include <stddef.h>
#include <stdint.h>

#if defined(DETMAX_BUILDING_LIBRARY)
#define DETMAX_API __attribute__((visibility("default")))
#else
#define DETMAX_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum detmax_status {
  DETMAX_OK = 0,
  DETMAX_INVALID_ARGUMENT = 1,
  DETMAX_PARSE = 2,
  DETMAX_DIMENSION_MISMATCH = 3,
  DETMAX_DUPLICATE_ID = 4,
  DETMAX_UNKNOWN_ID = 5,
  DETMAX_GUARD_EXCEEDED = 6,
  DETMAX_PRECONDITION = 7,
  DETMAX_INFEASIBLE = 8,
  DETMAX_NOT_PSD = 9,
  DETMAX_ITERATION_LIMIT = 10,
  DETMAX_OVERLAPPING_SOURCES = 11,
  DETMAX_INTERNAL = 99
} detmax_status;

typedef enum detmax_regime {
  DETMAX_REGIME_AUTO = 0,
  DETMAX_REGIME_LOWK = 1,
  DETMAX_REGIME_HIGHK = 2
} detmax_regime;

typedef enum detmax_split {
  DETMAX_SPLIT_RANDOM = 0,
  DETMAX_SPLIT_ADVERSARIAL = 1
} detmax_split;

typedef struct detmax_instance detmax_instance;
typedef struct detmax_coreset detmax_coreset;

typedef struct detmax_config {
  double zeta;            /* local-optimum slack, > 1 */
  int regime;             /* detmax_regime */
  int ridge;              /* nonzero: tiny ridge in the local-search kernel */
  int parts;              /* number of simulated machines, >= 1 */
  uint64_t seed;          /* split seed */
  int split;              /* detmax_split */
  int identity_coreset;   /* nonzero: parts keep all their points */
  int refine;             /* nonzero: swap refinement past the brute-force cap */
} detmax_config;

DETMAX_API void detmax_config_init(detmax_config* config);

DETMAX_API const char* detmax_version(void);
DETMAX_API const char* detmax_status_name(detmax_status status);
/* Message of the last failure on the calling thread ("" if none). */
DETMAX_API const char* detmax_last_error(void);
DETMAX_API void detmax_string_free(char* s);

DETMAX_API detmax_status detmax_instance_from_json(const char* json,
                                                   detmax_instance** out);
/* Rows "id,group,c0,...,c{d-1}" plus a constraint object as JSON. */
DETMAX_API detmax_status detmax_instance_from_csv(const char* csv,
                                                  const char* constraint_json,
                                                  detmax_instance** out);
/* spec_json: {"generator": "random" | "lb_low_dim" | "lb_high_dim" | "hard",
 * ...parameters}. */
DETMAX_API detmax_status detmax_instance_generate(const char* spec_json,
                                                  detmax_instance** out);
DETMAX_API detmax_status detmax_instance_to_json(const detmax_instance* inst,
                                                 char** out_json);
DETMAX_API detmax_status detmax_instance_size(const detmax_instance* inst,
                                              size_t* n, int* dim);
DETMAX_API void detmax_instance_free(detmax_instance* inst);

/* ln of the squared volume spanned by the given points; -inf if dependent. */
DETMAX_API detmax_status detmax_log_volume(const detmax_instance* inst,
                                           const int64_t* ids, size_t count,
                                           double* out);

/* Coreset of the given ids (all points when ids is NULL). config may be NULL
 * for defaults. */
DETMAX_API detmax_status detmax_coreset_build(const detmax_instance* inst,
                                              const int64_t* ids, size_t count,
                                              const detmax_config* config,
                                              detmax_coreset** out);
DETMAX_API detmax_status detmax_coreset_from_json(const char* json,
                                                  detmax_coreset** out);
DETMAX_API detmax_status detmax_coreset_to_json(const detmax_coreset* coreset,
                                                char** out_json);
/* The pointer stays valid until the coreset is freed. */
DETMAX_API detmax_status detmax_coreset_ids(const detmax_coreset* coreset,
                                            const int64_t** ids, size_t* count);
DETMAX_API void detmax_coreset_free(detmax_coreset* coreset);

/* Union of coresets over pairwise disjoint sources: {"ids": [...],
 * "size": n}. */
DETMAX_API detmax_status detmax_compose(const detmax_coreset* const* coresets,
                                        size_t count, char** out_json);

/* method: "brute", "greedy" or "local". With a coreset the search is
 * restricted to its ids. */
DETMAX_API detmax_status detmax_solve(const detmax_instance* inst,
                                      const detmax_coreset* coreset,
                                      const char* method, char** out_json);

/* Split, per-part coresets, compose and solve. out_csv may be NULL. */
DETMAX_API detmax_status detmax_run(const detmax_instance* inst,
                                    const detmax_config* config,
                                    char** out_json, char** out_csv);

/* CSV "n,seconds,coreset_size,declared_bound". */
DETMAX_API detmax_status detmax_bench(int d, int k, const int* n_list,
                                      size_t count, uint64_t seed, int repeats,
                                      char** out_csv);

/* suite: a suite name or "all". */
DETMAX_API detmax_status detmax_verify(const char* suite, int trials,
                                       uint64_t seed, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* DETMAX_DETMAX_H_ */
