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

#include "core/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "core/error.hpp"
#include "core/fft.hpp"
#include "core/parallel.hpp"
#include "core/quadrature.hpp"
#include "core/spaces.hpp"

namespace besovheat {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

Field extend(const HalfField& u, double sign) {
  Field out = Field::zeros(u.grid);
  const int n = u.grid.points;
  const int rows = u.rows();
  for (std::size_t c = 0; c < u.columns(); ++c)
    for (int r = 0; r < rows; ++r) {
      out.samples[c * n + rows + r] = u.at(c, r);
      out.samples[c * n + rows - 1 - r] = sign * u.at(c, r);
    }
  return out;
}

std::vector<double> squared_wavenumbers(const GridSpec& g) {
  std::vector<double> a(g.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto idx = g.unravel(i);
    for (int d = 0; d < g.dim; ++d) a[i] += g.wavenumber(idx[d]) * g.wavenumber(idx[d]);
  }
  return a;
}

// (1 - e^-z)/z and (z - 1 + e^-z)/z^2 with their small-z series.
double phi1(double z) { return z < 1e-8 ? 1.0 - 0.5 * z : -std::expm1(-z) / z; }
double phi2(double z) {
  if (z < 1e-3) return 0.5 - z / 6.0 + z * z / 24.0 - z * z * z / 120.0;
  return (z + std::expm1(-z)) / (z * z);
}

std::vector<cplx> frequency_samples(const Field& f) {
  if (f.grid.dim == 0) return f.samples;
  return to_frequency(f).samples;
}

Field physical_from(const GridSpec& g, std::vector<cplx> hat) {
  if (g.dim == 0) return Field{g, std::move(hat), Domain::Physical};
  return to_physical(Field{g, std::move(hat), Domain::Frequency});
}

// Moments of the kernel against the two hat halves on each panel [p dt, (p+1) dt]:
//   A_p = int g(r) (1 - (r - p dt)/dt) dr,   B_p = int g(r) (r - p dt)/dt dr.
struct Moments {
  std::vector<double> A;
  std::vector<double> B;
};

Moments kernel_moments(KernelKind bc, int order, double xi_sq, double eta, double dt, int panels,
                       const SolverOptions& opts) {
  Moments m;
  m.A.assign(static_cast<std::size_t>(panels), 0.0);
  m.B.assign(static_cast<std::size_t>(panels), 0.0);
  const int q = opts.nodes_per_panel;
  auto accumulate = [&](int p, double lo, double hi, bool square_root_map) {
    const double origin = p * dt;
    if (square_root_map) {
      // r = u^2 on [0, hi]: removes the r^{-1/2} behaviour of the Neumann kernel as eta -> 0.
      const QuadratureRule rule = gauss_legendre(q, 0.0, std::sqrt(hi));
      for (std::size_t i = 0; i < rule.size(); ++i) {
        const double u = rule.nodes[i];
        const double r = u * u;
        const double w = rule.weights[i] * 2.0 * u * corrector_kernel(bc, order, r, xi_sq, eta);
        const double frac = (r - origin) / dt;
        m.A[p] += w * (1.0 - frac);
        m.B[p] += w * frac;
      }
      return;
    }
    const QuadratureRule rule = gauss_legendre(q, lo, hi);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double r = rule.nodes[i];
      const double w = rule.weights[i] * corrector_kernel(bc, order, r, xi_sq, eta);
      const double frac = (r - origin) / dt;
      m.A[p] += w * (1.0 - frac);
      m.B[p] += w * frac;
    }
  };

  // First panel: geometric grading with ratio 2 toward r = 0.
  double scale = eta * eta;
  if (xi_sq > 0.0) scale = std::min(scale, 1.0 / xi_sq);
  const int levels = std::clamp(static_cast<int>(std::ceil(std::log2(dt / scale))) + 6, opts.grading_levels, 200);
  accumulate(0, 0.0, std::ldexp(dt, -levels), true);
  for (int l = levels; l >= 1; --l) accumulate(0, std::ldexp(dt, -l), std::ldexp(dt, -l + 1), false);

  const int pieces = std::clamp(static_cast<int>(std::ceil(xi_sq * dt / 4.0)), 1, 64);
  for (int p = 1; p < panels; ++p) {
    if (xi_sq * p * dt > 745.0) break;  // e^{-|xi'|^2 r} underflows
    for (int s = 0; s < pieces; ++s)
      accumulate(p, (p + static_cast<double>(s) / pieces) * dt, (p + static_cast<double>(s + 1) / pieces) * dt, false);
  }
  return m;
}

void check_options(const SolverOptions& opts) {
  if (opts.grading_levels < 8) {
    std::ostringstream os;
    os << "boundary corrector needs geometric sub-step grading with at least 8 levels (got " << opts.grading_levels
       << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  require(opts.nodes_per_panel >= 4, ErrorCode::InvalidArgument, "nodes per panel must be at least 4");
}

}  // namespace

void IbvpData::validate() const {
  require(bc == KernelKind::Dirichlet || bc == KernelKind::Neumann, ErrorCode::InvalidArgument,
          "the solver handles Dirichlet and Neumann boundary conditions only");
  grid.validate();
  time.validate();
  require(grid.dim >= 1, ErrorCode::InvalidArgument, "solver grid needs dim >= 1");
  require(std::abs(grid.origin[grid.dim - 1] - GridSpec::halfspace(grid.dim, grid.points, grid.length).origin[grid.dim - 1]) <=
              1e-12 * grid.length,
          ErrorCode::InvalidArgument, "solver grid must be a half-space grid (GridSpec::halfspace)");
  if (!u0.samples.empty())
    require(u0.grid.same_lattice(grid) && u0.samples.size() == u0.columns() * static_cast<std::size_t>(u0.rows()),
            ErrorCode::GridMismatch, "initial datum is not on the solver grid");
  if (!f.slices.empty()) {
    require(static_cast<int>(f.slices.size()) == time.points, ErrorCode::GridMismatch,
            "forcing must have one slice per time node");
    for (const auto& s : f.slices)
      require(s.grid.same_lattice(grid), ErrorCode::GridMismatch, "forcing slice is not on the solver grid");
  }
  if (!h.slices.empty()) {
    require(static_cast<int>(h.slices.size()) == time.points, ErrorCode::GridMismatch,
            "boundary datum must have one slice per time node");
    const GridSpec b = grid.boundary();
    for (const auto& s : h.slices)
      require(s.grid.same_lattice(b), ErrorCode::GridMismatch, "boundary slice is not on the boundary grid");
  }
}

Field extend_odd(const HalfField& u) { return extend(u, -1.0); }
Field extend_even(const HalfField& u) { return extend(u, 1.0); }

SpaceTimeField whole_space_heat(const Field& v0, const SpaceTimeField& forcing, const TimeGrid& time) {
  time.validate();
  const GridSpec& g = v0.grid;
  const bool forced = !forcing.slices.empty();
  if (forced) {
    require(static_cast<int>(forcing.slices.size()) == time.points, ErrorCode::GridMismatch,
            "forcing must have one slice per time node");
    for (const auto& s : forcing.slices)
      require(s.grid.same_lattice(g), ErrorCode::GridMismatch, "forcing slice grid differs from the datum grid");
  }
  const auto a = squared_wavenumbers(g);
  const double dt = time.step();
  std::vector<double> decay(a.size()), w0(a.size()), w1(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double z = a[i] * dt;
    decay[i] = std::exp(-z);
    w1[i] = dt * phi2(z);
    w0[i] = dt * phi1(z) - w1[i];
  }

  SpaceTimeField out;
  out.time = time;
  out.slices.reserve(static_cast<std::size_t>(time.points));
  std::vector<cplx> hat = to_frequency(v0).samples;
  std::vector<cplx> f_prev;
  if (forced) f_prev = to_frequency(forcing.slices[0]).samples;
  out.slices.push_back(physical_from(g, hat));
  for (int i = 1; i < time.points; ++i) {
    std::vector<cplx> f_next;
    if (forced) f_next = to_frequency(forcing.slices[i]).samples;
    for (std::size_t q = 0; q < hat.size(); ++q) {
      hat[q] *= decay[q];
      if (forced) hat[q] += w0[q] * f_prev[q] + w1[q] * f_next[q];
    }
    out.slices.push_back(physical_from(g, hat));
    f_prev = std::move(f_next);
  }
  return out;
}

double corrector_kernel(KernelKind bc, int eta_derivative, double r, double xi_sq, double eta) {
  if (r <= 0.0) return 0.0;
  const double e = std::exp(-eta * eta / (4.0 * r) - xi_sq * r);
  if (e == 0.0) return 0.0;
  const double r32 = r * std::sqrt(r);
  // Neumann kernels are eta-antiderivatives of the Dirichlet ones.
  int order = eta_derivative;
  if (bc == KernelKind::Neumann) {
    if (order == 0) return -e / (kSqrtPi * std::sqrt(r));
    order -= 1;
  }
  switch (order) {
    case 0: return eta / (2.0 * kSqrtPi * r32) * e;
    case 1: return (1.0 - eta * eta / (2.0 * r)) / (2.0 * kSqrtPi * r32) * e;
    case 2: return (-1.5 * eta / r + eta * eta * eta / (4.0 * r * r)) / (2.0 * kSqrtPi * r32) * e;
    default: throw Error(ErrorCode::InvalidArgument, "eta derivative order must be 0, 1 or 2");
  }
}

EtaLayers boundary_corrector(KernelKind bc, const TimeField& h, std::span<const double> eta, const TimeGrid& time,
                             int eta_derivative, const SolverOptions& opts) {
  check_options(opts);
  time.validate();
  require(bc == KernelKind::Dirichlet || bc == KernelKind::Neumann, ErrorCode::InvalidArgument,
          "boundary corrector handles Dirichlet and Neumann data only");
  require(eta_derivative >= 0 && eta_derivative <= 2, ErrorCode::InvalidArgument, "eta derivative order must be 0..2");
  require(static_cast<int>(h.slices.size()) == time.points, ErrorCode::GridMismatch,
          "boundary datum must have one slice per time node");
  for (double e : eta) require(e > 0.0, ErrorCode::Domain, "boundary corrector layers need eta > 0");

  const GridSpec bgrid = h.slices.front().grid;
  const std::size_t cols = bgrid.size();
  const std::size_t ne = eta.size();
  const int nt = time.points;
  const double dt = time.step();

  std::vector<std::vector<cplx>> hat(static_cast<std::size_t>(nt));
  for (int i = 0; i < nt; ++i) {
    require(h.slices[i].grid.same_lattice(bgrid), ErrorCode::GridMismatch, "boundary slices on different grids");
    hat[i] = frequency_samples(h.slices[i]);
  }
  const auto xi_sq = squared_wavenumbers(bgrid);

  // Group active columns by |xi'|^2 so each kernel is integrated once.
  std::map<double, std::vector<std::size_t>> groups;
  for (std::size_t c = 0; c < cols; ++c) {
    bool active = false;
    for (int i = 0; i < nt && !active; ++i) active = hat[i][c] != cplx{};
    if (active) groups[xi_sq[c]].push_back(c);
  }
  std::vector<std::pair<double, std::vector<std::size_t>>> work(groups.begin(), groups.end());

  // result[t][c * ne + e] in frequency space
  std::vector<std::vector<cplx>> spectral(static_cast<std::size_t>(nt), std::vector<cplx>(cols * ne));
  parallel_for(work.size() * ne, [&](std::size_t item) {
    const auto& [a, columns] = work[item / ne];
    const std::size_t e = item % ne;
    const Moments m = kernel_moments(bc, eta_derivative, a, eta[e], dt, nt - 1, opts);
    for (std::size_t c : columns) {
      for (int i = 1; i < nt; ++i) {
        cplx s{};
        for (int p = 0; p < i; ++p) s += m.A[p] * hat[i - p][c] + m.B[p] * hat[i - p - 1][c];
        spectral[i][c * ne + e] = s;
      }
    }
  });

  EtaLayers out{bgrid, std::vector<double>(eta.begin(), eta.end()), time, {}};
  out.samples.resize(static_cast<std::size_t>(nt));
  for (int i = 0; i < nt; ++i) {
    out.samples[i].assign(cols * ne, cplx{});
    for (std::size_t e = 0; e < ne; ++e) {
      std::vector<cplx> col(cols);
      for (std::size_t c = 0; c < cols; ++c) col[c] = spectral[i][c * ne + e];
      const Field phys = physical_from(bgrid, std::move(col));
      for (std::size_t c = 0; c < cols; ++c) out.samples[i][c * ne + e] = phys.samples[c];
    }
  }
  return out;
}

HalfSpaceTimeField boundary_corrector(KernelKind bc, const TimeField& h, const GridSpec& grid, const TimeGrid& time,
                                      int eta_derivative, const SolverOptions& opts) {
  require(h.slices.empty() || h.slices.front().grid.same_lattice(grid.boundary()), ErrorCode::GridMismatch,
          "boundary datum is not on the boundary of the solver grid");
  HalfField proto = HalfField::zeros(grid);
  std::vector<double> eta(static_cast<std::size_t>(proto.rows()));
  for (int r = 0; r < proto.rows(); ++r) eta[r] = proto.eta(r);
  const EtaLayers layers = boundary_corrector(bc, h, eta, time, eta_derivative, opts);
  HalfSpaceTimeField out;
  out.time = time;
  for (const auto& s : layers.samples) {
    HalfField f = proto;
    f.samples = s;  // [column][row] layout coincides with HalfField
    out.slices.push_back(std::move(f));
  }
  return out;
}

std::vector<double> graded_eta_grid(double eta_min, double eta_max, double ratio) {
  require(eta_min > 0.0 && eta_max >= eta_min && ratio > 1.0, ErrorCode::InvalidArgument,
          "graded eta grid needs 0 < eta_min <= eta_max and ratio > 1");
  std::vector<double> out;
  for (double e = eta_min; e <= eta_max * (1.0 + 1e-12); e *= ratio) out.push_back(e);
  return out;
}

Field spectral_trace(const Field& full, int derivative) {
  require(full.domain == Domain::Physical, ErrorCode::InvalidArgument, "trace expects a physical-domain field");
  require(derivative == 0 || derivative == 1, ErrorCode::InvalidArgument, "trace order must be 0 or 1");
  const GridSpec& g = full.grid;
  const int n = g.points;
  const GridSpec b = g.boundary();
  Field out = Field::zeros(b);
  const double shift = -g.origin[g.dim - 1];  // x_n = 0 measured from the first sample
  std::vector<cplx> col(static_cast<std::size_t>(n));
  const std::vector<int> dims{n};
  for (std::size_t c = 0; c < out.samples.size(); ++c) {
    std::copy_n(full.samples.begin() + static_cast<std::ptrdiff_t>(c * n), n, col.begin());
    fft::transform(col, dims, fft::Direction::Forward);
    cplx s{};
    for (int k = 0; k < n; ++k) {
      const double xi = g.wavenumber(k);
      if (k == n / 2) {
        // Nyquist mode: symmetric (cosine) interpolant.
        s += col[k] * (derivative == 0 ? std::cos(xi * shift) : -xi * std::sin(xi * shift));
        continue;
      }
      const cplx phase = std::polar(1.0, xi * shift);
      s += col[k] * (derivative == 0 ? phase : cplx{0.0, xi} * phase);
    }
    out.samples[c] = s / static_cast<double>(n);
  }
  return out;
}

Field extrapolated_trace(const HalfField& u) {
  Field out = Field::zeros(u.grid.boundary());
  for (std::size_t c = 0; c < u.columns(); ++c) out.samples[c] = 1.5 * u.at(c, 0) - 0.5 * u.at(c, 1);
  return out;
}

Field extrapolated_flux(const HalfField& u) {
  Field out = Field::zeros(u.grid.boundary());
  const double h = u.grid.spacing();
  for (std::size_t c = 0; c < u.columns(); ++c)
    out.samples[c] = (-2.0 * u.at(c, 0) + 3.0 * u.at(c, 1) - u.at(c, 2)) / h;
  return out;
}

SolutionBundle solve_halfspace_heat(const IbvpData& data, const SolverOptions& opts) {
  data.validate();
  check_options(opts);
  const GridSpec& g = data.grid;
  const TimeGrid& time = data.time;
  const bool dirichlet = data.bc == KernelKind::Dirichlet;
  auto reflect = [&](const HalfField& u) { return dirichlet ? extend_odd(u) : extend_even(u); };

  const HalfField zero_half = HalfField::zeros(g);
  const Field v0 = reflect(data.u0.samples.empty() ? zero_half : data.u0);
  const SpaceTimeField U1 = whole_space_heat(v0, SpaceTimeField{}, time);

  SpaceTimeField ext_f;
  if (!data.f.slices.empty()) {
    ext_f.time = time;
    for (const auto& s : data.f.slices) ext_f.slices.push_back(reflect(s));
  }
  const SpaceTimeField U3 = whole_space_heat(Field::zeros(g), ext_f, time);

  // Boundary datum for the corrector: h minus the boundary value (or flux) of u1.
  TimeField g2;
  g2.time = time;
  const GridSpec bgrid = g.boundary();
  for (int i = 0; i < time.points; ++i) {
    Field slice = data.h.slices.empty() ? Field::zeros(bgrid) : data.h.slices[i];
    slice -= spectral_trace(U1.slices[i], dirichlet ? 0 : 1);
    g2.slices.push_back(std::move(slice));
  }

  SolutionBundle out;
  out.u1.time = out.u2.time = out.u3.time = out.u.time = time;
  out.u2 = boundary_corrector(data.bc, g2, g, time, 0, opts);
  for (int i = 0; i < time.points; ++i) {
    out.u1.slices.push_back(restrict_half(U1.slices[i]));
    out.u3.slices.push_back(restrict_half(U3.slices[i]));
    HalfField u = out.u1.slices.back();
    for (std::size_t q = 0; q < u.samples.size(); ++q)
      u.samples[q] += out.u2.slices[i].samples[q] + out.u3.slices.back().samples[q];
    out.u.slices.push_back(std::move(u));
  }

  // Residual diagnostics: centered differences in t and x, periodic in x'.
  const double dt = time.step();
  const double hx = g.spacing();
  const int n = g.points;
  const int rows = zero_half.rows();
  const std::size_t cols = zero_half.columns();
  for (int i = 1; i + 1 < time.points; ++i) {
    const HalfField& u = out.u.slices[i];
    double sum = 0.0;
    double worst = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      const auto idx = bgrid.dim > 0 ? bgrid.unravel(c) : std::array<int, 3>{0, 0, 0};
      for (int r = 2; r <= rows - 3; ++r) {
        const cplx centre = u.at(c, r);
        cplx lap = (u.at(c, r + 1) - 2.0 * centre + u.at(c, r - 1)) / (hx * hx);
        for (int d = 0; d < bgrid.dim; ++d) {
          auto plus = idx;
          auto minus = idx;
          plus[d] = (idx[d] + 1) % n;
          minus[d] = (idx[d] + n - 1) % n;
          std::size_t cp = 0;
          std::size_t cm = 0;
          for (int e = 0; e < bgrid.dim; ++e) {
            cp = cp * n + plus[e];
            cm = cm * n + minus[e];
          }
          lap += (u.at(cp, r) - 2.0 * centre + u.at(cm, r)) / (hx * hx);
        }
        const cplx dudt = (out.u.slices[i + 1].at(c, r) - out.u.slices[i - 1].at(c, r)) / (2.0 * dt);
        const cplx force = data.f.slices.empty() ? cplx{} : data.f.slices[i].at(c, r);
        const double res = std::abs(dudt - lap - force);
        sum += res * res;
        worst = std::max(worst, res);
      }
    }
    out.residual_l2.push_back(std::sqrt(sum * g.cell_volume()));
    out.residual_max.push_back(worst);
  }
  if (opts.residual_threshold) {
    for (double r : out.residual_l2) out.residual_flagged = out.residual_flagged || r > *opts.residual_threshold;
  }
  return out;
}

}  // namespace besovheat
