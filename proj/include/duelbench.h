/* Copyright 2026 The Duelbench Authors
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

/* C interface of the duelbench shared library. Handles are opaque; every
 * report comes back as a JSON string the caller frees with
 * db_string_free(). Functions return DB_OK on success and stash a message
 * retrievable through db_last_error() otherwise.
 */

#ifndef DUELBENCH_H_
#define DUELBENCH_H_

#include <stdint.h>

#if defined(_WIN32)
#define DUELBENCH_API __declspec(dllexport)
#elif defined(__GNUC__)
#define DUELBENCH_API __attribute__((visibility("default")))
#else
#define DUELBENCH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum db_status {
  DB_OK = 0,
  DB_ERROR = 1,    /* unexpected failure; see db_last_error() */
  DB_EUSAGE = 2,   /* invalid arguments */
  DB_ECAP = 3,     /* an enumeration cap refused the request */
  DB_EVERIFY = 4,  /* a verification check failed */
  DB_EPARSE = 5,   /* malformed instance text */
  DB_ENUMERIC = 6  /* numerical breakdown inside a solver */
} db_status;

typedef struct db_instance db_instance;

DUELBENCH_API const char* db_version(void);
DUELBENCH_API const char* db_tolerances_json(void);

/* Message of the most recent failure on this thread. */
DUELBENCH_API const char* db_last_error(void);

DUELBENCH_API void db_string_free(char* text);

/* cap_perms limits ranking-duel enumeration (0 picks the default of 8). */
DUELBENCH_API db_status db_instance_from_json(const char* text, int cap_perms,
                                              db_instance** out);
DUELBENCH_API db_status db_instance_builtin(const char* name, db_instance** out);
DUELBENCH_API void db_instance_free(db_instance* instance);
DUELBENCH_API db_status db_instance_info_json(const db_instance* instance,
                                              char** out);

DUELBENCH_API db_status db_game_value(const db_instance* instance, double* out);

/* Game value, worst/best minimax welfare (or cost), and the competition
 * ratio; includes the pure-vs-pure payoff table for small catalogs. */
DUELBENCH_API db_status db_solve_json(const db_instance* instance, char** out);

/* Threshold scan: the 0-1 lower bound next to the exact ratio. */
DUELBENCH_API db_status db_zero_one_json(const db_instance* instance,
                                         char** out);

/* Optimum of the subset lower-bound LP at size k. */
DUELBENCH_API db_status db_alpha_k(int k, double* out);

/* CSV "k,alpha_k" rows for k = 2..k_max. threads = 0 uses the
 * DUELBENCH_THREADS budget. */
DUELBENCH_API db_status db_alpha_curve_csv(int k_max, int threads, char** out);

/* Exact re-check of the published k = 10 dual table. *feasible is 1 only
 * when the table passes in exact rational arithmetic. Returns DB_EVERIFY
 * (with the report still written) when it does not. */
DUELBENCH_API db_status db_certify_dual_json(int k, int* feasible, char** out);

DUELBENCH_API db_status db_construct_compression_json(double epsilon,
                                                      char** out);
DUELBENCH_API db_status db_construct_bst_json(double beta, uint64_t samples,
                                              uint64_t seed, char** out);

/* Randomized minimax-structure regression; DB_EVERIFY when any lemma
 * checker fails. n ranges over 2..n_max. */
DUELBENCH_API db_status db_check_structure_json(uint64_t seed, int instances,
                                                int n_max, int threads,
                                                char** out);

#ifdef __cplusplus
}
#endif

#endif /* DUELBENCH_H_ */
