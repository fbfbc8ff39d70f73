// Copyright 2026 The sawstrip Authors.
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

/* C interface to the sawstrip core. Every call returns a sawstrip_status;
 * on failure sawstrip_last_error() describes it (per thread). High-precision
 * reals cross the boundary as decimal strings. Output strings are written
 * into caller buffers; `decimals` < 0 asks for full precision. */

#ifndef SAWSTRIP_H
#define SAWSTRIP_H

#include <stddef.h>

#if defined(_WIN32)
#define SAWSTRIP_API __declspec(dllexport)
#else
#define SAWSTRIP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sawstrip_status {
  SAWSTRIP_OK = 0,
  SAWSTRIP_ERR_INVALID_ARGUMENT = 1, /* bad parameter, geometry or buffer */
  SAWSTRIP_ERR_BUDGET = 2,           /* state budget exceeded */
  SAWSTRIP_ERR_NO_CROSSING = 3,
  SAWSTRIP_ERR_IO = 4,               /* file or checkpoint */
  SAWSTRIP_ERR_NUMERIC = 5,          /* extrapolation breakdown */
  SAWSTRIP_ERR_OUT_OF_MEMORY = 6,
  SAWSTRIP_ERR_INTERNAL = 7
} sawstrip_status;

typedef enum sawstrip_lattice {
  SAWSTRIP_HONEYCOMB = 0,
  SAWSTRIP_SQUARE = 1,
  SAWSTRIP_TRIANGULAR = 2
} sawstrip_lattice;

typedef enum sawstrip_mode {
  SAWSTRIP_ALL_SITE = 0,
  SAWSTRIP_ALTERNATE_SITE = 1,
  SAWSTRIP_EDGE = 2
} sawstrip_mode;

typedef enum sawstrip_part { SAWSTRIP_PART_A = 0, SAWSTRIP_PART_B = 1, SAWSTRIP_PART_E = 2 } sawstrip_part;

typedef enum sawstrip_consensus {
  SAWSTRIP_CONSENSUS_BULIRSCH_STOER = 0,
  SAWSTRIP_CONSENSUS_INVERSE_SPREAD = 1,
  SAWSTRIP_CONSENSUS_MEDIAN = 2
} sawstrip_consensus;

typedef struct sawstrip_strip {
  sawstrip_lattice lattice;
  sawstrip_mode mode;
  int width;
  int half_length;
  int trunc_degree;
  const char* x; /* step fugacity; NULL or "" for the critical value */
} sawstrip_strip;

typedef struct sawstrip_engine_options {
  int threads;       /* 0: all cores */
  int with_beta;     /* honeycomb: also collect walks ending on beta */
  size_t max_states; /* 0: unlimited */
} sawstrip_engine_options;

typedef struct sawstrip_series sawstrip_series;
typedef struct sawstrip_sweep sawstrip_sweep;
typedef struct sawstrip_crossings sawstrip_crossings;
typedef struct sawstrip_extrapolation sawstrip_extrapolation;
typedef struct sawstrip_patch sawstrip_patch;

SAWSTRIP_API const char* sawstrip_version(void);
SAWSTRIP_API const char* sawstrip_last_error(void);

/* Fills in the library defaults (M = L = 250, critical x, all cores). */
SAWSTRIP_API void sawstrip_strip_init(sawstrip_strip* strip);
SAWSTRIP_API void sawstrip_engine_options_init(sawstrip_engine_options* options);

/* Leading significant digits shared by two decimal strings. */
SAWSTRIP_API int sawstrip_agreeing_digits(const char* a, const char* b);

SAWSTRIP_API sawstrip_status sawstrip_critical_x(sawstrip_lattice lattice, char* buf, size_t len);

/* x and A normalisation reproducing the published crossing tables
 * (convergence_study != 0: the square-lattice M/L study). */
SAWSTRIP_API sawstrip_status sawstrip_reference_convention(sawstrip_lattice lattice, int convergence_study,
                                                           char* x_buf, size_t x_len,
                                                           char* a_factor_buf, size_t a_factor_len);

SAWSTRIP_API sawstrip_status sawstrip_estimate_cost(const sawstrip_strip* strip, double* peak_states,
                                                    double* bytes, double* seconds);

/* ---- strip series A_T (and B, E) ---- */

SAWSTRIP_API sawstrip_status sawstrip_build(const sawstrip_strip* strip, const sawstrip_engine_options* options,
                                            sawstrip_series** out);
SAWSTRIP_API void sawstrip_series_free(sawstrip_series* series);
SAWSTRIP_API int sawstrip_series_has(const sawstrip_series* series, sawstrip_part part);
SAWSTRIP_API sawstrip_status sawstrip_series_info(const sawstrip_series* series, sawstrip_strip* strip,
                                                  size_t* peak_states, double* seconds);
SAWSTRIP_API sawstrip_status sawstrip_series_eval(const sawstrip_series* series, sawstrip_part part,
                                                  const char* y, int decimals, char* buf, size_t len);
/* Coefficient of y^k at full precision. */
SAWSTRIP_API sawstrip_status sawstrip_series_coefficient(const sawstrip_series* series, sawstrip_part part, int k,
                                                         char* buf, size_t len);
/* "k,coefficient" CSV of one part. */
SAWSTRIP_API sawstrip_status sawstrip_series_write_csv(const sawstrip_series* series, sawstrip_part part,
                                                       const char* path);
/* Reads an A series written by sawstrip_series_write_csv; `strip` records its provenance. */
SAWSTRIP_API sawstrip_status sawstrip_series_read_csv(const char* path, const sawstrip_strip* strip,
                                                      sawstrip_series** out);

/* ---- resumable sweep ---- */

SAWSTRIP_API sawstrip_status sawstrip_sweep_create(const sawstrip_strip* strip, const sawstrip_engine_options* options,
                                                   sawstrip_sweep** out);
SAWSTRIP_API sawstrip_status sawstrip_sweep_resume(const char* checkpoint, const sawstrip_engine_options* options,
                                                   sawstrip_sweep** out);
/* Advances by at most max_moves sites; reports the position afterwards. */
SAWSTRIP_API sawstrip_status sawstrip_sweep_run(sawstrip_sweep* sweep, size_t max_moves, size_t* position,
                                                size_t* total);
SAWSTRIP_API sawstrip_status sawstrip_sweep_save(const sawstrip_sweep* sweep, const char* path);
SAWSTRIP_API sawstrip_status sawstrip_sweep_result(const sawstrip_sweep* sweep, sawstrip_series** out);
SAWSTRIP_API void sawstrip_sweep_free(sawstrip_sweep* sweep);

/* ---- crossings ---- */

typedef struct sawstrip_crossing_options {
  const char* lo;       /* bracket; NULL for (1, mu^2) */
  const char* hi;
  const char* tol;      /* NULL: 1e-20 */
  const char* a_factor; /* multiplies the reported A; NULL: 1 */
} sawstrip_crossing_options;

/* series[i] must have width series[0] width + i, same lattice and mode. */
SAWSTRIP_API sawstrip_status sawstrip_cross(const sawstrip_series* const* series, size_t count,
                                            const sawstrip_crossing_options* options, sawstrip_crossings** out);
SAWSTRIP_API size_t sawstrip_crossings_count(const sawstrip_crossings* rows);
SAWSTRIP_API sawstrip_status sawstrip_crossings_row(const sawstrip_crossings* rows, size_t i, int decimals,
                                                    int* T, char* y_buf, size_t y_len, char* a_buf, size_t a_len);
/* +1 increasing, -1 decreasing, 0 neither. */
SAWSTRIP_API int sawstrip_crossings_monotone(const sawstrip_crossings* rows);
SAWSTRIP_API void sawstrip_crossings_free(sawstrip_crossings* rows);

/* Root of part A = level in [lo, hi]. */
SAWSTRIP_API sawstrip_status sawstrip_solve_level(const sawstrip_series* series, const char* level, const char* lo,
                                                  const char* hi, int decimals, char* buf, size_t len);

/* ---- extrapolation ---- */

SAWSTRIP_API sawstrip_status sawstrip_extrapolate(const char* const* values, size_t count, int first_index,
                                                  const char* w, sawstrip_consensus rule,
                                                  sawstrip_extrapolation** out);
SAWSTRIP_API size_t sawstrip_extrapolation_count(const sawstrip_extrapolation* ex);
SAWSTRIP_API sawstrip_status sawstrip_extrapolation_row(const sawstrip_extrapolation* ex, size_t i, int decimals,
                                                        const char** algorithm, char* best, size_t best_len,
                                                        char* spread, size_t spread_len);
/* Any of the output buffers may be NULL. */
SAWSTRIP_API sawstrip_status sawstrip_extrapolation_summary(const sawstrip_extrapolation* ex, int decimals,
                                                            char* consensus, char* median, char* mean,
                                                            char* max_disagreement, size_t len);
/* Full triangular table of row i as "column,index,value" CSV. */
SAWSTRIP_API sawstrip_status sawstrip_extrapolation_write_csv(const sawstrip_extrapolation* ex, size_t i,
                                                              const char* path);
SAWSTRIP_API void sawstrip_extrapolation_free(sawstrip_extrapolation* ex);

/* ---- honeycomb identity ---- */

/* Exact patch S(T,L) at x_c. */
SAWSTRIP_API sawstrip_status sawstrip_patch_build(int width, int half_length, const sawstrip_engine_options* options,
                                                  sawstrip_patch** out);
/* Identity residual at y; y NULL gives the y* corollary residual. */
SAWSTRIP_API sawstrip_status sawstrip_patch_residual(const sawstrip_patch* patch, const char* y, int decimals,
                                                     char* buf, size_t len);
SAWSTRIP_API void sawstrip_patch_free(sawstrip_patch* patch);

/* Max coefficient deviations of A_e vs A_a(y^2) and B_e vs B_a(y^2)/y. */
SAWSTRIP_API sawstrip_status sawstrip_edge_site_check(int width, int half_length, int trunc_degree,
                                                      const sawstrip_engine_options* options, int decimals,
                                                      char* a_dev, char* b_dev, size_t len);

#ifdef __cplusplus
}
#endif

#endif /* SAWSTRIP_H */
