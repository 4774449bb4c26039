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

#include "besovheat/besovheat.h"

#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/field_io.hpp"
#include "core/filterbank.hpp"
#include "core/kernels.hpp"
#include "core/parallel.hpp"
#include "core/report.hpp"
#include "core/solver.hpp"
#include "core/spaces.hpp"
#include "core/verify.hpp"

using namespace besovheat;

struct bh_bank {
  FilterBank bank;
  std::optional<TimeGrid> time;  // set for time banks
};

struct bh_field {
  FieldFile file;
};

struct bh_report {
  SweepReport report;
  std::string csv;
  std::string summary;
};

struct bh_solution {
  GridSpec grid;
  SolutionBundle bundle;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_warning_text;

bh_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return BH_INVALID_ARGUMENT;
    case ErrorCode::OutOfBand: return BH_OUT_OF_BAND;
    case ErrorCode::GridMismatch: return BH_GRID_MISMATCH;
    case ErrorCode::Domain: return BH_DOMAIN;
    case ErrorCode::Convergence: return BH_CONVERGENCE;
    case ErrorCode::Precondition: return BH_PRECONDITION;
    case ErrorCode::Io: return BH_IO;
    case ErrorCode::Config: return BH_CONFIG;
  }
  return BH_INTERNAL;
}

template <class Body>
bh_status guarded(Body&& body) {
  g_last_error.clear();
  try {
    body();
    return BH_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return BH_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BH_INTERNAL;
  }
}

template <class T>
void need(const T* p, const char* what) {
  require(p != nullptr, ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

GridSpec to_grid(const bh_grid_desc* g) {
  need(g, "grid");
  GridSpec out = g->halfspace ? GridSpec::halfspace(g->dim, g->points, g->length)
                              : GridSpec::periodic(g->dim, g->points, g->length);
  out.validate();
  return out;
}

bh_grid_desc from_grid(const GridSpec& g) {
  const bool half = g.dim >= 1 && g.origin[g.dim - 1] != 0.0;
  return bh_grid_desc{g.dim, g.points, g.length, half ? 1 : 0};
}

TimeGrid to_time(const bh_time_desc* t) {
  need(t, "time grid");
  TimeGrid out{t->horizon, t->points};
  out.validate();
  return out;
}

KernelKind to_kind(bh_kernel_kind k) {
  switch (k) {
    case BH_KERNEL_DIRICHLET: return KernelKind::Dirichlet;
    case BH_KERNEL_NEUMANN: return KernelKind::Neumann;
    case BH_KERNEL_OBLIQUE: return KernelKind::Oblique;
    case BH_KERNEL_GREEN_D: return KernelKind::GreenD;
    case BH_KERNEL_GREEN_N: return KernelKind::GreenN;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown kernel kind");
}

KernelSpec to_spec(const bh_kernel_spec* s) {
  need(s, "kernel spec");
  KernelSpec out;
  out.kind = to_kind(s->kind);
  out.dim = s->dim;
  out.k = s->k;
  out.j = s->j;
  out.eta = s->eta;
  if (s->has_m) out.m = s->m;
  out.b = {s->b[0], s->b[1], s->b[2]};
  out.validate();
  return out;
}

QuadratureOptions to_quadrature(const bh_quadrature* q) {
  if (q == nullptr) return {};
  QuadratureOptions out;
  out.nodes_per_octave = q->nodes_per_octave;
  out.box = q->box;
  out.step = q->step;
  out.richardson_tol = q->richardson_tol;
  out.tail_tol = q->tail_tol;
  out.check_richardson = q->check_richardson != 0;
  require(out.nodes_per_octave >= 4 && out.box > 0.0 && out.step > 0.0, ErrorCode::InvalidArgument,
          "quadrature needs nodes_per_octave >= 4, box > 0 and step > 0");
  return out;
}

NormParams to_norm(const bh_norm_params* p) {
  need(p, "norm parameters");
  NormParams out;
  out.s = p->s;
  out.p = p->p;
  out.sigma = p->sigma;
  out.homogeneous = p->homogeneous != 0;
  out.validate();
  return out;
}

void fill(bh_norm_result* out, const NormResult& r) {
  out->value = r.value;
  out->warnings = r.warnings;
  out->low_leftover = r.low_leftover;
  out->high_leftover = r.high_leftover;
}

template <class T>
std::vector<T> to_vector(const T* data, std::size_t n, const char* what) {
  if (n > 0) need(data, what);
  return std::vector<T>(data, data + n);
}

EstimateSetup to_setup(const bh_estimate_setup& s) {
  EstimateSetup out;
  out.bc = to_kind(s.bc);
  out.grid = GridSpec::halfspace(s.dim, s.points, s.length);
  out.time = TimeGrid{s.horizon, s.time_points};
  out.padded_time = s.padded_time;
  out.jmin = s.jmin;
  out.jmax = s.jmax;
  out.kmin = s.kmin;
  out.kmax = s.kmax;
  out.s = s.s;
  out.p = s.p;
  out.validate();
  return out;
}

bh_report* wrap(SweepReport r) {
  auto* out = new bh_report{std::move(r), {}, {}};
  out->csv = out->report.to_csv();
  out->summary = out->report.summary_json();
  return out;
}

}  // namespace

extern "C" {

const char* bh_version(void) { return "0.1.0"; }

const char* bh_status_string(bh_status status) {
  switch (status) {
    case BH_OK: return "ok";
    case BH_INVALID_ARGUMENT: return "invalid argument";
    case BH_OUT_OF_BAND: return "out of band";
    case BH_GRID_MISMATCH: return "grid mismatch";
    case BH_DOMAIN: return "domain error";
    case BH_CONVERGENCE: return "quadrature did not converge";
    case BH_PRECONDITION: return "precondition violated";
    case BH_IO: return "i/o error";
    case BH_CONFIG: return "configuration error";
    case BH_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* bh_last_error(void) { return g_last_error.c_str(); }

const char* bh_describe_warnings(unsigned warnings) {
  g_warning_text = describe_warnings(warnings);
  return g_warning_text.c_str();
}

bh_status bh_set_threads(int threads) {
  return guarded([&] {
    require(threads >= 0, ErrorCode::InvalidArgument, "thread count must be non-negative");
    set_thread_count(threads);
  });
}

const char* bh_profile_id(void) { return DyadicProfile::kId.data(); }

// ---- banks --------------------------------------------------------------------------

bh_status bh_bank_create(const bh_grid_desc* grid, int jmin, int jmax, bh_bank** out) {
  return guarded([&] {
    need(out, "out");
    *out = new bh_bank{FilterBank(DyadicProfile{}, jmin, jmax, to_grid(grid)), std::nullopt};
  });
}

bh_status bh_time_bank_create(const bh_time_desc* time, int padded_points, int kmin, int kmax, bh_bank** out) {
  return guarded([&] {
    need(out, "out");
    const TimeGrid t = to_time(time);
    *out = new bh_bank{make_time_bank(DyadicProfile{}, t, padded_points, kmin, kmax), t};
  });
}

void bh_bank_destroy(bh_bank* bank) { delete bank; }

bh_status bh_bank_check(const bh_bank* bank, int samples, bh_partition_report* out) {
  return guarded([&] {
    need(bank, "bank");
    need(out, "out");
    require(samples >= 2, ErrorCode::InvalidArgument, "need two or more samples");
    out->partition = partition_residual(bank->bank, samples);
    out->split_partition = bank->bank.grid().dim >= 2 ? split_partition_residual(bank->bank, samples) : 0.0;
    out->telescoping = telescoping_residual(bank->bank, samples);
    out->modes_below_window = bank->bank.modes_below_window();
  });
}

// ---- fields -------------------------------------------------------------------------

bh_status bh_field_create(const bh_grid_desc* grid, const bh_time_desc* time, const double* samples, size_t count,
                          bh_field** out) {
  return guarded([&] {
    need(out, "out");
    FieldFile file;
    file.grid = to_grid(grid);
    std::size_t slices = 1;
    if (time != nullptr) {
      file.time = to_time(time);
      slices = static_cast<std::size_t>(file.time->points);
    }
    const std::size_t per = file.grid.size();
    require(count == per * slices, ErrorCode::InvalidArgument,
            "sample count " + std::to_string(count) + " does not match the grid (" + std::to_string(per * slices) + ")");
    if (count > 0) need(samples, "samples");
    for (std::size_t s = 0; s < slices; ++s) {
      Field f = Field::zeros(file.grid);
      for (std::size_t q = 0; q < per; ++q) f.samples[q] = samples[s * per + q];
      file.slices.push_back(std::move(f));
    }
    *out = new bh_field{std::move(file)};
  });
}

bh_status bh_field_load(const char* path, bh_field** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new bh_field{load_field_file(path)};
  });
}

bh_status bh_field_save(const bh_field* field, const char* path) {
  return guarded([&] {
    need(field, "field");
    need(path, "path");
    save_field_file(path, field->file);
  });
}

bh_status bh_field_info(const bh_field* field, bh_grid_desc* grid, bh_time_desc* time, int* has_time, size_t* count) {
  return guarded([&] {
    need(field, "field");
    if (grid) *grid = from_grid(field->file.grid);
    if (has_time) *has_time = field->file.time ? 1 : 0;
    if (time && field->file.time) *time = bh_time_desc{field->file.time->horizon, field->file.time->points};
    if (count) *count = field->file.grid.size() * field->file.slices.size();
  });
}

bh_status bh_field_samples(const bh_field* field, double* out, size_t count) {
  return guarded([&] {
    need(field, "field");
    const std::size_t per = field->file.grid.size();
    require(count == per * field->file.slices.size(), ErrorCode::InvalidArgument, "sample count mismatch");
    if (count > 0) need(out, "out");
    for (std::size_t s = 0; s < field->file.slices.size(); ++s)
      for (std::size_t q = 0; q < per; ++q) out[s * per + q] = field->file.slices[s].samples[q].real();
  });
}

void bh_field_destroy(bh_field* field) { delete field; }

// ---- norms --------------------------------------------------------------------------

void bh_norm_params_default(bh_norm_params* params) {
  if (params) *params = bh_norm_params{0.0, 2.0, 1.0, 1, 0};
}

bh_status bh_norm(const bh_field* field, const bh_bank* bank, bh_norm_kind kind, const bh_norm_params* params,
                  bh_norm_result* out) {
  return guarded([&] {
    need(field, "field");
    need(bank, "bank");
    need(out, "out");
    require(field->file.slices.size() == 1 && !field->file.time, ErrorCode::InvalidArgument,
            "spatial norms take a single-slice field");
    require(!bank->time, ErrorCode::InvalidArgument, "spatial norms need a spatial bank");
    const NormParams np = to_norm(params);
    const Field& f = field->file.slices.front();
    switch (kind) {
      case BH_NORM_BESOV: fill(out, besov_norm(f, np, bank->bank)); break;
      case BH_NORM_TRIEBEL: fill(out, triebel_norm(f, np, bank->bank)); break;
      case BH_NORM_HALFSPACE:
        fill(out, halfspace_norm(restrict_half(f), np, bank->bank, params->allow_out_of_range != 0));
        break;
      default: throw Error(ErrorCode::InvalidArgument, "unknown norm kind");
    }
  });
}

bh_status bh_bochner_norm(const bh_field* series, const bh_bank* space_bank, const bh_bank* time_bank, double time_s,
                          double time_p, double time_sigma, const bh_norm_params* spatial, bh_norm_result* out) {
  return guarded([&] {
    need(series, "series");
    need(space_bank, "space bank");
    need(out, "out");
    require(series->file.time.has_value(), ErrorCode::InvalidArgument, "space-time norms need a time series");
    require(!space_bank->time, ErrorCode::InvalidArgument, "space bank must be spatial");
    const NormParams np = to_norm(spatial);
    unsigned warnings = 0;
    const SpatialNorm norm = [&](const Field& f) {
      const NormResult r = besov_norm(f, np, space_bank->bank);
      warnings |= r.warnings;
      return r.value;
    };
    const TimeField h{*series->file.time, series->file.slices};
    NormResult r;
    if (time_bank != nullptr) {
      require(time_bank->time.has_value(), ErrorCode::InvalidArgument, "time bank must come from bh_time_bank_create");
      require(time_bank->time->points == h.time.points && time_bank->time->horizon == h.time.horizon,
              ErrorCode::GridMismatch, "time bank was built for a different time grid");
      TimeNormParams tp;
      tp.s = time_s;
      tp.p = time_p;
      tp.sigma = time_sigma;
      r = bochner_tl_norm(h, tp, norm, time_bank->bank);
    } else {
      r.value = bochner_lebesgue_norm(h, time_p, norm);
    }
    r.warnings |= warnings;
    fill(out, r);
  });
}

// ---- kernels ------------------------------------------------------------------------

void bh_kernel_spec_default(bh_kernel_spec* spec) {
  if (spec) *spec = bh_kernel_spec{BH_KERNEL_DIRICHLET, 2, 0, 0, 1.0, 0, 0, {0.0, 1.0, 1.0}};
}

void bh_quadrature_default(bh_quadrature* q) {
  if (!q) return;
  const QuadratureOptions d;
  *q = bh_quadrature{d.nodes_per_octave, d.box, d.step, d.richardson_tol, d.tail_tol, d.check_richardson ? 1 : 0};
}

bh_status bh_kernel_kind_parse(const char* name, bh_kernel_kind* out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = static_cast<bh_kernel_kind>(static_cast<int>(parse_kernel_kind(name)));
  });
}

bh_status bh_kernel_value(const bh_kernel_spec* spec, double t, const double* x_prime, const bh_quadrature* quadrature,
                          double* out) {
  return guarded([&] {
    need(out, "out");
    const KernelSpec s = to_spec(spec);
    Point x{0.0, 0.0, 0.0};
    if (s.dim > 1) need(x_prime, "x_prime");
    for (int a = 0; a + 1 < s.dim; ++a) x[a] = x_prime[a];
    *out = kernel_value(s, t, x, to_quadrature(quadrature));
  });
}

bh_status bh_kernel_l1_norm(const bh_kernel_spec* spec, double t, const bh_quadrature* quadrature, bh_kernel_l1* out) {
  return guarded([&] {
    need(out, "out");
    const KernelSpec s = to_spec(spec);
    const QuadratureOptions q = to_quadrature(quadrature);
    const KernelL1Result r = s.m ? eta_smoothed_l1(s, t, q) : kernel_l1_norm(s, t, q);
    *out = bh_kernel_l1{r.value, r.richardson_error, r.tail_estimate};
  });
}

bh_status bh_kernel_block(const bh_kernel_spec* spec, const bh_time_desc* time, const bh_grid_desc* xgrid,
                          const bh_bank* bank, const bh_quadrature* quadrature, bh_field** out) {
  return guarded([&] {
    need(out, "out");
    need(bank, "bank");
    const KernelSpec s = to_spec(spec);
    const TimeGrid t = to_time(time);
    const GridSpec g = to_grid(xgrid);
    SpaceTimeField block = eval_kernel_block(s, t, g, bank->bank, to_quadrature(quadrature));
    FieldFile file{g, t, std::move(block.slices)};
    *out = new bh_field{std::move(file)};
  });
}

// ---- solver -------------------------------------------------------------------------

void bh_solver_options_default(bh_solver_options* options) {
  if (!options) return;
  const SolverOptions d;
  *options = bh_solver_options{d.grading_levels, d.nodes_per_panel, 0.0};
}

bh_status bh_solve(bh_kernel_kind bc, const bh_grid_desc* grid, const bh_time_desc* time, const bh_field* u0,
                   const bh_field* f, const bh_field* h, const bh_solver_options* options, bh_solution** out) {
  return guarded([&] {
    need(out, "out");
    need(grid, "grid");
    require(grid->halfspace != 0, ErrorCode::InvalidArgument, "the solver needs a half-space grid");
    IbvpData data;
    data.bc = to_kind(bc);
    data.grid = to_grid(grid);
    data.time = to_time(time);
    if (u0 != nullptr) {
      require(u0->file.slices.size() == 1 && u0->file.grid.same_lattice(data.grid), ErrorCode::GridMismatch,
              "initial datum must be a single slice on the solver grid");
      data.u0 = restrict_half(u0->file.slices.front());
    }
    if (f != nullptr) {
      require(f->file.time && f->file.grid.same_lattice(data.grid), ErrorCode::GridMismatch,
              "forcing must be a time series on the solver grid");
      data.f.time = data.time;
      for (const auto& s : f->file.slices) data.f.slices.push_back(restrict_half(s));
    }
    if (h != nullptr) {
      require(h->file.time.has_value(), ErrorCode::GridMismatch, "boundary datum must be a time series");
      data.h = TimeField{data.time, h->file.slices};
    }
    SolverOptions opts;
    if (options != nullptr) {
      opts.grading_levels = options->grading_levels;
      opts.nodes_per_panel = options->nodes_per_panel;
      if (options->residual_threshold > 0.0) opts.residual_threshold = options->residual_threshold;
    }
    auto sol = std::make_unique<bh_solution>();
    sol->grid = data.grid;
    sol->bundle = solve_halfspace_heat(data, opts);
    *out = sol.release();
  });
}

bh_status bh_solution_field(const bh_solution* solution, bh_component component, bh_field** out) {
  return guarded([&] {
    need(solution, "solution");
    need(out, "out");
    const HalfSpaceTimeField* src = nullptr;
    switch (component) {
      case BH_U: src = &solution->bundle.u; break;
      case BH_U1: src = &solution->bundle.u1; break;
      case BH_U2: src = &solution->bundle.u2; break;
      case BH_U3: src = &solution->bundle.u3; break;
      default: throw Error(ErrorCode::InvalidArgument, "unknown solution component");
    }
    FieldFile file{solution->grid, src->time, {}};
    for (const auto& s : src->slices) file.slices.push_back(extend_zero(s));
    *out = new bh_field{std::move(file)};
  });
}

bh_status bh_solution_residual(const bh_solution* solution, double* l2, double* max_abs, size_t* count, int* flagged) {
  return guarded([&] {
    need(solution, "solution");
    need(count, "count");
    const auto& b = solution->bundle;
    if (l2 != nullptr || max_abs != nullptr) {
      require(*count == b.residual_l2.size(), ErrorCode::InvalidArgument, "residual array length mismatch");
      for (std::size_t i = 0; i < b.residual_l2.size(); ++i) {
        if (l2) l2[i] = b.residual_l2[i];
        if (max_abs) max_abs[i] = b.residual_max[i];
      }
    }
    *count = b.residual_l2.size();
    if (flagged) *flagged = b.residual_flagged ? 1 : 0;
  });
}

void bh_solution_destroy(bh_solution* solution) { delete solution; }

// ---- sweeps -------------------------------------------------------------------------

void bh_ortho_params_default(bh_ortho_params* params) {
  if (!params) return;
  static const int ks[] = {4, 6, 8};
  static const int js[] = {0, 1, 2};
  static const double ts[] = {0.0, 1.0, 2.0};
  static const int etas[] = {1, 2, 3, 4, 5};
  bh_quadrature q;
  bh_quadrature_default(&q);
  *params = bh_ortho_params{BH_KERNEL_DIRICHLET, 2, ks, 3, js, 3, ts, 3, etas, 5, 1, 0.25, q};
}

void bh_smoothed_params_default(bh_smoothed_params* params) {
  if (!params) return;
  static const int ks[] = {6, 8};
  const SmoothedSweepSpec d;
  const QuadratureOptions& q = d.quadrature;
  *params = bh_smoothed_params{BH_KERNEL_DIRICHLET, d.dim,     ks,         2,          d.j,
                               d.m_span,            d.t_unit,  d.eta_lo,   d.eta_hi,   d.eta_step,
                               d.slope_tolerance,
                               bh_quadrature{q.nodes_per_octave, q.box, q.step, q.richardson_tol, q.tail_tol,
                                             q.check_richardson ? 1 : 0}};
}

void bh_estimate_setup_default(bh_kernel_kind bc, bh_estimate_setup* setup) {
  if (!setup) return;
  const EstimateSetup d = EstimateSetup::standard(bc == BH_KERNEL_NEUMANN ? KernelKind::Neumann : KernelKind::Dirichlet);
  *setup = bh_estimate_setup{bc == BH_KERNEL_NEUMANN ? BH_KERNEL_NEUMANN : BH_KERNEL_DIRICHLET,
                             d.grid.dim, d.grid.points, d.grid.length, d.time.horizon, d.time.points,
                             d.padded_time, d.jmin, d.jmax, d.kmin, d.kmax, d.s, d.p};
}

void bh_scaling_params_default(bh_scaling_params* params) {
  if (!params) return;
  static const double lambdas[] = {1.0, 2.0, 4.0};
  const ScalingSetup d;
  *params = bh_scaling_params{BH_KERNEL_DIRICHLET, d.boundary.dim, d.boundary.points, d.boundary.length,
                              d.time.horizon,      d.time.points,  d.padded_time,     d.jmin,
                              d.jmax,              d.kmin,         d.kmax,            d.s,
                              d.p,                 0,              d.tolerance,       lambdas,
                              3};
}

bh_status bh_ortho_sweep(const bh_ortho_params* params, bh_report** out) {
  return guarded([&] {
    need(params, "params");
    need(out, "out");
    OrthoSweepSpec s;
    s.kind = to_kind(params->kind);
    s.dim = params->dim;
    s.ks = to_vector(params->ks, params->nks, "ks");
    s.js = to_vector(params->js, params->njs, "js");
    s.t_units = to_vector(params->t_units, params->nts, "t_units");
    s.eta_levels = to_vector(params->eta_levels, params->netas, "eta_levels");
    s.polynomial = params->polynomial != 0;
    s.slope_tolerance = params->slope_tolerance;
    s.quadrature = to_quadrature(&params->quadrature);
    *out = wrap(ortho_sweep(s));
  });
}

bh_status bh_neumann_dirichlet_scaling(int dim, const int* ks, size_t nks, int j, double tolerance,
                                       const bh_quadrature* quadrature, bh_report** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(neumann_dirichlet_scaling(dim, to_vector(ks, nks, "ks"), j, tolerance, to_quadrature(quadrature)));
  });
}

bh_status bh_smoothed_sweep(const bh_smoothed_params* params, bh_report** out) {
  return guarded([&] {
    need(params, "params");
    need(out, "out");
    SmoothedSweepSpec s;
    s.kind = to_kind(params->kind);
    s.dim = params->dim;
    s.ks = to_vector(params->ks, params->nks, "ks");
    s.j = params->j;
    s.m_span = params->m_span;
    s.t_unit = params->t_unit;
    s.eta_lo = params->eta_lo;
    s.eta_hi = params->eta_hi;
    s.eta_step = params->eta_step;
    s.slope_tolerance = params->slope_tolerance;
    s.quadrature = to_quadrature(&params->quadrature);
    *out = wrap(smoothed_sweep(s));
  });
}

bh_status bh_maxreg_sweep(const bh_maxreg_params* params, bh_report** out) {
  return guarded([&] {
    need(params, "params");
    need(out, "out");
    const EstimateSetup base = to_setup(params->setup);
    std::optional<double> tol;
    if (params->invariance_tolerance > 0.0) tol = params->invariance_tolerance;
    std::vector<MaxregMember> family;
    std::vector<std::string> names;
    switch (params->family) {
      case BH_FAMILY_RANDOM:
        family = maxreg_random_family(base, params->seed, params->members, params->band_lo, params->band_hi);
        names = {"member"};
        break;
      case BH_FAMILY_DILATION:
      case BH_FAMILY_TRANSLATION: {
        const auto bumps = random_bump_family(params->seed, 1, base).front();
        const TimeField h = boundary_datum(base, bumps, params->band_lo, params->band_hi);
        if (params->family == BH_FAMILY_DILATION) {
          family = maxreg_dilation_family(base, h, to_vector(params->lambdas, params->nlambdas, "lambdas"));
          names = {"lambda"};
        } else {
          family = maxreg_translation_family(base, h, to_vector(params->steps, params->nsteps, "steps"));
          names = {"shift"};
        }
        break;
      }
      default: throw Error(ErrorCode::InvalidArgument, "unknown data family");
    }
    require(!family.empty(), ErrorCode::InvalidArgument, "empty data family");
    SweepReport r = maxreg_ratio(names, family, tol, params->spread_bound > 0.0 ? params->spread_bound : 50.0);
    r.metadata["seed"] = std::to_string(params->seed);
    *out = wrap(std::move(r));
  });
}

bh_status bh_trace_sweep(const bh_trace_params* params, bh_report** out) {
  return guarded([&] {
    need(params, "params");
    need(out, "out");
    const EstimateSetup base = to_setup(params->setup);
    std::vector<EstimateSetup> setups;
    std::vector<SeparableSolution> family;
    std::vector<std::vector<double>> values;
    std::vector<std::string> names;
    std::optional<double> tol;
    if (params->family == BH_FAMILY_RANDOM) {
      family = random_separable_family(params->seed, params->members, base);
      for (std::size_t q = 0; q < family.size(); ++q) {
        setups.push_back(base);
        values.push_back({static_cast<double>(q)});
      }
      names = {"member"};
    } else if (params->family == BH_FAMILY_DILATION) {
      const SeparableSolution u = random_separable_family(params->seed, 1, base).front();
      for (double l : to_vector(params->lambdas, params->nlambdas, "lambdas")) {
        setups.push_back(base.dilated(l));
        family.push_back(u.dilated(l));
        values.push_back({l});
      }
      names = {"lambda"};
      if (params->invariance_tolerance > 0.0) tol = params->invariance_tolerance;
    } else {
      throw Error(ErrorCode::InvalidArgument, "trace sweeps use the random or dilation family");
    }
    require(!family.empty(), ErrorCode::InvalidArgument, "empty solution family");
    SweepReport r = trace_check(names, values, setups, family, params->derivative != 0, tol);
    r.metadata["seed"] = std::to_string(params->seed);
    *out = wrap(std::move(r));
  });
}

bh_status bh_scaling_sweep(const bh_scaling_params* params, bh_report** out) {
  return guarded([&] {
    need(params, "params");
    need(out, "out");
    ScalingSetup s;
    s.bc = to_kind(params->bc);
    require(s.bc == KernelKind::Dirichlet || s.bc == KernelKind::Neumann, ErrorCode::InvalidArgument,
            "scaling exponents are defined for Dirichlet and Neumann data");
    s.boundary = GridSpec::periodic(params->boundary_dim, params->points, params->length);
    s.time = TimeGrid{params->horizon, params->time_points};
    s.padded_time = params->padded_time;
    s.jmin = params->jmin;
    s.jmax = params->jmax;
    s.kmin = params->kmin;
    s.kmax = params->kmax;
    s.s = params->s;
    s.p = params->p;
    s.norm = params->time_triebel ? ScalingNorm::TimeTriebel : ScalingNorm::Lebesgue;
    s.tolerance = params->tolerance;
    *out = wrap(scaling_exponents(s, default_scaling_datum(s), to_vector(params->lambdas, params->nlambdas, "lambdas")));
  });
}

bh_status bh_lemma_b_sweep(int N, const double* a_values, size_t na, bh_report** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(lemma_b_bound(N, to_vector(a_values, na, "a_values")));
  });
}

// ---- reports ------------------------------------------------------------------------

const char* bh_report_csv(const bh_report* report) { return report ? report->csv.c_str() : ""; }
const char* bh_report_summary_json(const bh_report* report) { return report ? report->summary.c_str() : ""; }
const char* bh_report_estimate(const bh_report* report) { return report ? report->report.estimate.c_str() : ""; }

int bh_report_pass(const bh_report* report) {
  return report && report->report.pass && !report->report.any_failed() ? 1 : 0;
}

int bh_report_any_failed(const bh_report* report) { return report && report->report.any_failed() ? 1 : 0; }

double bh_report_max_ratio(const bh_report* report) {
  return report ? report->report.max_ratio() : std::nan("");
}

double bh_report_min_ratio(const bh_report* report) {
  return report ? report->report.min_ratio() : std::nan("");
}

size_t bh_report_row_count(const bh_report* report) { return report ? report->report.rows.size() : 0; }

bh_status bh_report_row(const bh_report* report, size_t index, double* measured, double* envelope, double* ratio) {
  return guarded([&] {
    need(report, "report");
    require(index < report->report.rows.size(), ErrorCode::InvalidArgument, "row index out of range");
    const SweepRow& r = report->report.rows[index];
    if (measured) *measured = r.measured;
    if (envelope) *envelope = r.envelope;
    if (ratio) *ratio = r.ratio;
  });
}

size_t bh_report_slope_count(const bh_report* report) { return report ? report->report.slopes.size() : 0; }

bh_status bh_report_slope(const bh_report* report, size_t index, const char** name, double* value, double* target,
                          double* tolerance, int* pass) {
  return guarded([&] {
    need(report, "report");
    require(index < report->report.slopes.size(), ErrorCode::InvalidArgument, "slope index out of range");
    const SlopeResult& s = report->report.slopes[index];
    if (name) *name = s.name.c_str();
    if (value) *value = s.value;
    if (target) *target = s.target;
    if (tolerance) *tolerance = s.tolerance;
    if (pass) *pass = s.pass ? 1 : 0;
  });
}

void bh_report_destroy(bh_report* report) { delete report; }

}  // extern "C"
