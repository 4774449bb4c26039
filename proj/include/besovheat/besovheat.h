// Copyright 2026 The besovheat Authors
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

#ifndef BESOVHEAT_BESOVHEAT_H
#define BESOVHEAT_BESOVHEAT_H

/* C interface to the besovheat library: dyadic filter banks, Besov and Triebel-Lizorkin
 * norms, boundary potentials, the half-space heat solver and the estimate sweeps.
 *
 * Every function returning bh_status reports failures through the status code and leaves a
 * message retrievable with bh_last_error() (per thread). Handles are opaque; each *_create or
 * *_load must be paired with the matching *_destroy. Functions never take ownership of
 * caller-provided arrays. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(BESOVHEAT_BUILDING_LIBRARY)
#define BESOVHEAT_API __declspec(dllexport)
#else
#define BESOVHEAT_API __declspec(dllimport)
#endif
#else
#define BESOVHEAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bh_status {
  BH_OK = 0,
  BH_INVALID_ARGUMENT = 1,
  BH_OUT_OF_BAND = 2,
  BH_GRID_MISMATCH = 3,
  BH_DOMAIN = 4,
  BH_CONVERGENCE = 5,
  BH_PRECONDITION = 6,
  BH_IO = 7,
  BH_CONFIG = 8,
  BH_INTERNAL = 99
} bh_status;

/* Warning bits carried by norm results. */
enum {
  BH_WARN_LOW_LEFTOVER = 1u << 0,
  BH_WARN_HIGH_LEFTOVER = 1u << 1,
  BH_WARN_VALIDITY_RANGE = 1u << 2,
  BH_WARN_TIME_LOW_LEFTOVER = 1u << 3,
  BH_WARN_TIME_HIGH_LEFTOVER = 1u << 4
};

typedef struct bh_bank bh_bank;
typedef struct bh_field bh_field;
typedef struct bh_report bh_report;
typedef struct bh_solution bh_solution;

/* Torus [0, L)^dim with `points` samples per axis. With halfspace != 0 the last axis is
 * shifted so that x_n = -L/2 + (i + 1/2) L / N and rows i >= N/2 form the half-space. */
typedef struct bh_grid_desc {
  int dim;
  int points;
  double length;
  int halfspace;
} bh_grid_desc;

/* t_i = i T / (points - 1). */
typedef struct bh_time_desc {
  double horizon;
  int points;
} bh_time_desc;

BESOVHEAT_API const char* bh_version(void);
BESOVHEAT_API const char* bh_status_string(bh_status status);
/* Message of the last failure on the calling thread; empty after a successful call. */
BESOVHEAT_API const char* bh_last_error(void);
/* Names of the set warning bits, '|'-separated; the pointer is valid until the next call. */
BESOVHEAT_API const char* bh_describe_warnings(unsigned warnings);
/* Worker threads for sweeps; 0 selects the number of available cores. */
BESOVHEAT_API bh_status bh_set_threads(int threads);
BESOVHEAT_API const char* bh_profile_id(void);

/* ---- filter banks ------------------------------------------------------------------- */

BESOVHEAT_API bh_status bh_bank_create(const bh_grid_desc* grid, int jmin, int jmax, bh_bank** out);
/* Bank over the zero-padded time line: `padded_points` samples with the step of `time`. */
BESOVHEAT_API bh_status bh_time_bank_create(const bh_time_desc* time, int padded_points, int kmin, int kmax,
                                            bh_bank** out);
BESOVHEAT_API void bh_bank_destroy(bh_bank* bank);

typedef struct bh_partition_report {
  double partition;        /* max |sum_j phi_j - 1| over sampled radii of the window */
  double split_partition;  /* same for the separated-variable blocks */
  double telescoping;      /* max |zeta_{m-1} + phi_m - zeta_m| */
  uint64_t modes_below_window;
} bh_partition_report;

BESOVHEAT_API bh_status bh_bank_check(const bh_bank* bank, int samples, bh_partition_report* out);

/* ---- fields ------------------------------------------------------------------------- */

/* A spatial field (time == NULL) or a time series of `time->points` slices. `samples` holds
 * count = N^dim (times Nt) values, row-major with the last axis fastest and time slowest. */
BESOVHEAT_API bh_status bh_field_create(const bh_grid_desc* grid, const bh_time_desc* time, const double* samples,
                                        size_t count, bh_field** out);
BESOVHEAT_API bh_status bh_field_load(const char* path, bh_field** out);
BESOVHEAT_API bh_status bh_field_save(const bh_field* field, const char* path);
/* has_time receives 1 for time series; `time` is left untouched otherwise. */
BESOVHEAT_API bh_status bh_field_info(const bh_field* field, bh_grid_desc* grid, bh_time_desc* time, int* has_time,
                                      size_t* count);
/* Copies the real parts of the samples (count must equal the field's sample count). */
BESOVHEAT_API bh_status bh_field_samples(const bh_field* field, double* out, size_t count);
BESOVHEAT_API void bh_field_destroy(bh_field* field);

/* ---- norms -------------------------------------------------------------------------- */

typedef enum bh_norm_kind { BH_NORM_BESOV = 0, BH_NORM_TRIEBEL = 1, BH_NORM_HALFSPACE = 2 } bh_norm_kind;

typedef struct bh_norm_params {
  double s;
  double p;      /* 1 <= p <= inf (use INFINITY) */
  double sigma;  /* 1 <= sigma <= inf */
  int homogeneous;
  int allow_out_of_range; /* half-space norms outside -1+1/p < s < 1/p */
} bh_norm_params;

typedef struct bh_norm_result {
  double value;
  unsigned warnings;
  double low_leftover;
  double high_leftover;
} bh_norm_result;

BESOVHEAT_API void bh_norm_params_default(bh_norm_params* params);
/* Spatial norm of a single-slice field. Half-space norms read the rows x_n > 0 of a
 * half-space grid and measure their zero extension. */
BESOVHEAT_API bh_status bh_norm(const bh_field* field, const bh_bank* bank, bh_norm_kind kind,
                                const bh_norm_params* params, bh_norm_result* out);
/* Space-time norm of a time series: with time_bank the F^{time_s}_{time_p, time_sigma} norm in
 * time of the spatial Besov norm, otherwise the L^{time_p} norm in time. */
BESOVHEAT_API bh_status bh_bochner_norm(const bh_field* series, const bh_bank* space_bank, const bh_bank* time_bank,
                                        double time_s, double time_p, double time_sigma,
                                        const bh_norm_params* spatial, bh_norm_result* out);

/* ---- boundary potentials ------------------------------------------------------------ */

typedef enum bh_kernel_kind {
  BH_KERNEL_DIRICHLET = 0,
  BH_KERNEL_NEUMANN = 1,
  BH_KERNEL_OBLIQUE = 2,
  BH_KERNEL_GREEN_D = 3,
  BH_KERNEL_GREEN_N = 4
} bh_kernel_kind;

typedef struct bh_kernel_spec {
  bh_kernel_kind kind;
  int dim; /* n = 2 or 3 */
  int k;
  int j;
  double eta;
  int has_m; /* apply the eta-smoothing block m */
  int m;
  double b[3]; /* oblique direction, b_n at index dim - 1 */
} bh_kernel_spec;

typedef struct bh_quadrature {
  int nodes_per_octave;
  double box;
  double step;
  double richardson_tol;
  double tail_tol;
  int check_richardson;
} bh_quadrature;

typedef struct bh_kernel_l1 {
  double value;
  double richardson_error;
  double tail_estimate;
} bh_kernel_l1;

BESOVHEAT_API void bh_kernel_spec_default(bh_kernel_spec* spec);
BESOVHEAT_API void bh_quadrature_default(bh_quadrature* quadrature);
BESOVHEAT_API bh_status bh_kernel_kind_parse(const char* name, bh_kernel_kind* out);
BESOVHEAT_API bh_status bh_kernel_value(const bh_kernel_spec* spec, double t, const double* x_prime,
                                        const bh_quadrature* quadrature, double* out);
/* L1 norm in x' (eta-smoothed when spec->has_m). */
BESOVHEAT_API bh_status bh_kernel_l1_norm(const bh_kernel_spec* spec, double t, const bh_quadrature* quadrature,
                                          bh_kernel_l1* out);
/* Samples on a periodic x' grid of dimension dim - 1 at every node of `time`. */
BESOVHEAT_API bh_status bh_kernel_block(const bh_kernel_spec* spec, const bh_time_desc* time,
                                        const bh_grid_desc* xgrid, const bh_bank* bank,
                                        const bh_quadrature* quadrature, bh_field** out);

/* ---- solver ------------------------------------------------------------------------- */

typedef struct bh_solver_options {
  int grading_levels;
  int nodes_per_panel;
  double residual_threshold; /* <= 0: no flagging */
} bh_solver_options;

typedef enum bh_component { BH_U = 0, BH_U1 = 1, BH_U2 = 2, BH_U3 = 3 } bh_component;

BESOVHEAT_API void bh_solver_options_default(bh_solver_options* options);
/* Half-space heat problem on a half-space grid (bc Dirichlet or Neumann). u0 is a spatial
 * field and f a time series on the full grid (only rows x_n > 0 are read); h is a time series
 * on the boundary grid. Any of them may be NULL for zero data. */
BESOVHEAT_API bh_status bh_solve(bh_kernel_kind bc, const bh_grid_desc* grid, const bh_time_desc* time,
                                 const bh_field* u0, const bh_field* f, const bh_field* h,
                                 const bh_solver_options* options, bh_solution** out);
/* Component as a time series on the full grid, zero for x_n < 0. */
BESOVHEAT_API bh_status bh_solution_field(const bh_solution* solution, bh_component component, bh_field** out);
/* Per interior time step residuals; count receives the number of entries when the arrays
 * are NULL. */
BESOVHEAT_API bh_status bh_solution_residual(const bh_solution* solution, double* l2, double* max_abs,
                                             size_t* count, int* flagged);
BESOVHEAT_API void bh_solution_destroy(bh_solution* solution);

/* ---- estimate sweeps ---------------------------------------------------------------- */

typedef struct bh_ortho_params {
  bh_kernel_kind kind;
  int dim;
  const int* ks;
  size_t nks;
  const int* js;
  size_t njs;
  const double* t_units; /* t = t_unit 2^-k */
  size_t nts;
  const int* eta_levels; /* eta = 2^-l */
  size_t netas;
  int polynomial;
  double slope_tolerance;
  bh_quadrature quadrature;
} bh_ortho_params;

typedef struct bh_smoothed_params {
  bh_kernel_kind kind;
  int dim;
  const int* ks; /* even */
  size_t nks;
  int j;
  int m_span;
  double t_unit;
  int eta_lo;
  int eta_hi;
  int eta_step;
  double slope_tolerance;
  bh_quadrature quadrature;
} bh_smoothed_params;

typedef struct bh_estimate_setup {
  bh_kernel_kind bc;
  int dim;
  int points;
  double length;
  double horizon;
  int time_points;
  int padded_time;
  int jmin;
  int jmax;
  int kmin;
  int kmax;
  double s;
  double p;
} bh_estimate_setup;

typedef enum bh_family { BH_FAMILY_RANDOM = 0, BH_FAMILY_DILATION = 1, BH_FAMILY_TRANSLATION = 2 } bh_family;

typedef struct bh_maxreg_params {
  bh_estimate_setup setup;
  bh_family family;
  uint64_t seed;
  int members;     /* random family size; the dilation and translation families use member 0 */
  double band_lo;  /* |xi'| band of the data */
  double band_hi;
  const double* lambdas; /* dilation family */
  size_t nlambdas;
  const int* steps; /* translation family, in time steps */
  size_t nsteps;
  double invariance_tolerance; /* > 0: check max/min - 1 against it */
  double spread_bound;         /* otherwise: max/min <= spread_bound */
} bh_maxreg_params;

typedef struct bh_trace_params {
  bh_estimate_setup setup;
  int derivative;
  bh_family family; /* random or dilation */
  uint64_t seed;
  int members;
  const double* lambdas;
  size_t nlambdas;
  double invariance_tolerance; /* > 0 with the dilation family */
} bh_trace_params;

typedef struct bh_scaling_params {
  bh_kernel_kind bc;
  int boundary_dim;
  int points;
  double length;
  double horizon;
  int time_points;
  int padded_time;
  int jmin;
  int jmax;
  int kmin;
  int kmax;
  double s;
  double p;
  int time_triebel; /* 0: L1-in-time norm, 1: F-in-time norm */
  double tolerance;
  const double* lambdas;
  size_t nlambdas;
} bh_scaling_params;

BESOVHEAT_API void bh_ortho_params_default(bh_ortho_params* params);
BESOVHEAT_API void bh_smoothed_params_default(bh_smoothed_params* params);
BESOVHEAT_API void bh_estimate_setup_default(bh_kernel_kind bc, bh_estimate_setup* setup);
BESOVHEAT_API void bh_scaling_params_default(bh_scaling_params* params);

BESOVHEAT_API bh_status bh_ortho_sweep(const bh_ortho_params* params, bh_report** out);
BESOVHEAT_API bh_status bh_neumann_dirichlet_scaling(int dim, const int* ks, size_t nks, int j, double tolerance,
                                                     const bh_quadrature* quadrature, bh_report** out);
BESOVHEAT_API bh_status bh_smoothed_sweep(const bh_smoothed_params* params, bh_report** out);
BESOVHEAT_API bh_status bh_maxreg_sweep(const bh_maxreg_params* params, bh_report** out);
BESOVHEAT_API bh_status bh_trace_sweep(const bh_trace_params* params, bh_report** out);
BESOVHEAT_API bh_status bh_scaling_sweep(const bh_scaling_params* params, bh_report** out);
BESOVHEAT_API bh_status bh_lemma_b_sweep(int N, const double* a_values, size_t na, bh_report** out);

/* ---- reports ------------------------------------------------------------------------ */

/* The strings stay valid for the lifetime of the report. */
BESOVHEAT_API const char* bh_report_csv(const bh_report* report);
BESOVHEAT_API const char* bh_report_summary_json(const bh_report* report);
BESOVHEAT_API const char* bh_report_estimate(const bh_report* report);
BESOVHEAT_API int bh_report_pass(const bh_report* report);
BESOVHEAT_API int bh_report_any_failed(const bh_report* report);
BESOVHEAT_API double bh_report_max_ratio(const bh_report* report);
BESOVHEAT_API double bh_report_min_ratio(const bh_report* report);
BESOVHEAT_API size_t bh_report_row_count(const bh_report* report);
BESOVHEAT_API bh_status bh_report_row(const bh_report* report, size_t index, double* measured, double* envelope,
                                      double* ratio);
BESOVHEAT_API size_t bh_report_slope_count(const bh_report* report);
BESOVHEAT_API bh_status bh_report_slope(const bh_report* report, size_t index, const char** name, double* value,
                                        double* target, double* tolerance, int* pass);
BESOVHEAT_API void bh_report_destroy(bh_report* report);

#ifdef __cplusplus
}
#endif

#endif /* BESOVHEAT_BESOVHEAT_H */
