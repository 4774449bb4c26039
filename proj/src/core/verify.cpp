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

#include "core/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <tuple>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/profile.hpp"
#include "core/quadrature.hpp"

namespace besovheat {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string error_flag(const Error& e) { return "failed:" + std::to_string(static_cast<int>(e.code())); }

void append_flag(std::string& flags, const std::string& flag) {
  if (flag.empty()) return;
  if (!flags.empty()) flags += '|';
  flags += flag;
}

std::string warning_flags(unsigned warnings) {
  if (warnings == kWarnNone) return "";
  return describe_warnings(warnings);
}

double log2_bracket(double x) { return std::log2(bracket(x)); }

// Slope of log2 y against x with the largest magnitude over groups of rows that agree on
// every coordinate except the swept one.
struct Sample {
  std::vector<double> key;  // grouping coordinates (the swept one removed)
  double x;
  double log_y;
};

std::optional<double> worst_group_slope(const std::vector<Sample>& samples) {
  std::map<std::vector<double>, std::pair<std::vector<double>, std::vector<double>>> groups;
  for (const auto& s : samples) {
    auto& g = groups[s.key];
    g.first.push_back(s.x);
    g.second.push_back(s.log_y);
  }
  std::optional<double> worst;
  for (const auto& [key, g] : groups) {
    std::set<double> distinct(g.first.begin(), g.first.end());
    if (distinct.size() < 2) continue;
    const double slope = regression_slope(g.first, g.second);
    if (!worst || std::abs(slope) > std::abs(*worst)) worst = slope;
  }
  return worst;
}

double trapezoid(const std::vector<double>& v, double dt) {
  if (v.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += x;
  acc -= 0.5 * (v.front() + v.back());
  return acc * dt;
}

int dyadic_exponent(double lambda) {
  require(lambda > 0.0, ErrorCode::InvalidArgument, "dilation factors must be positive");
  const double l = std::log2(lambda);
  const double r = std::round(l);
  require(std::abs(l - r) < 1e-12, ErrorCode::InvalidArgument, "dilation factors must be powers of two");
  return static_cast<int>(r);
}

// d/dx' derivatives of every eta-row of a half-space field; orders[a] along x' axis a.
HalfField xprime_derivative(const HalfField& u, const std::array<int, 2>& orders) {
  if (orders[0] == 0 && orders[1] == 0) return u;
  const GridSpec boundary = u.grid.boundary();
  const int rows = u.rows();
  const std::size_t cols = u.columns();
  const double nyquist = boundary.nyquist();
  HalfField out = HalfField::zeros(u.grid);
  Field slice = Field::zeros(boundary);
  for (int r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) slice.samples[c] = u.at(c, r);
    Field d = apply_multiplier(slice, [&](const Point& xi) {
      cplx m{1.0, 0.0};
      for (int a = 0; a < boundary.dim; ++a) {
        const int o = orders[static_cast<std::size_t>(a)];
        if (o == 0) continue;
        if (o % 2 == 1 && std::abs(std::abs(xi[a]) - nyquist) < 1e-9 * nyquist) return cplx{0.0, 0.0};
        m *= std::pow(cplx{0.0, xi[a]}, o);
      }
      return m;
    });
    for (std::size_t c = 0; c < cols; ++c) out.at(c, r) = d.samples[c];
  }
  return out;
}

HalfField time_derivative(const HalfSpaceTimeField& u, int i) {
  const int n = static_cast<int>(u.slices.size());
  require(n >= 3, ErrorCode::InvalidArgument, "time derivative needs three or more time levels");
  const double dt = u.time.step();
  HalfField out = HalfField::zeros(u.slices[0].grid);
  auto combine = [&](std::initializer_list<std::pair<int, double>> terms) {
    for (std::size_t q = 0; q < out.samples.size(); ++q) {
      cplx acc{0.0, 0.0};
      for (const auto& [idx, w] : terms) acc += w * u.slices[static_cast<std::size_t>(idx)].samples[q];
      out.samples[q] = acc / (2.0 * dt);
    }
  };
  if (i == 0)
    combine({{0, -3.0}, {1, 4.0}, {2, -1.0}});
  else if (i == n - 1)
    combine({{n - 1, 3.0}, {n - 2, -4.0}, {n - 3, 1.0}});
  else
    combine({{i + 1, 1.0}, {i - 1, -1.0}});
  return out;
}

// The pairs a <= b of the n axes (x' axes first, eta last) as (x' orders, eta order).
std::vector<std::pair<std::array<int, 2>, int>> hessian_components(int dim) {
  std::vector<std::pair<std::array<int, 2>, int>> out;
  for (int a = 0; a < dim; ++a)
    for (int b = a; b < dim; ++b) {
      std::array<int, 2> o{0, 0};
      int eta_order = 0;
      for (int axis : {a, b}) {
        if (axis == dim - 1)
          ++eta_order;
        else
          ++o[static_cast<std::size_t>(axis)];
      }
      out.emplace_back(o, eta_order);
    }
  return out;
}

// Derivative of exp(-y^2 / (2 w^2) + i omega y) divided by itself, via the recursion
// g' = P g with P = -y / w^2 + i omega.
cplx gaussian_wave_factor(double y, double w, double omega, int order) {
  const cplx P{-y / (w * w), omega};
  const double q = 1.0 / (w * w);
  switch (order) {
    case 0: return 1.0;
    case 1: return P;
    case 2: return P * P - q;
    case 3: return P * P * P - 3.0 * q * P;
    default: throw Error(ErrorCode::InvalidArgument, "derivative order above three");
  }
}

double gaussian_wave(double y, double w, double omega, int order, double phase = 0.0) {
  const cplx g = std::exp(cplx{-0.5 * y * y / (w * w), omega * y + phase});
  return std::real(gaussian_wave_factor(y, w, omega, order) * g);
}

SweepReport empty_report(std::string estimate) {
  SweepReport r;
  r.estimate = std::move(estimate);
  r.metadata["profile"] = std::string(DyadicProfile::kId);
  return r;
}

void record_setup(SweepReport& report, const EstimateSetup& s) {
  report.metadata["bc"] = to_string(s.bc);
  report.metadata["grid"] = "n=" + std::to_string(s.grid.dim) + " N=" + std::to_string(s.grid.points) +
                            " L=" + format_double(s.grid.length);
  report.metadata["time"] = "T=" + format_double(s.time.horizon) + " Nt=" + std::to_string(s.time.points) +
                            " padded=" + std::to_string(s.padded_time);
  report.metadata["windows"] = "j=[" + std::to_string(s.jmin) + "," + std::to_string(s.jmax) + "] k=[" +
                               std::to_string(s.kmin) + "," + std::to_string(s.kmax) + "]";
  report.metadata["s"] = format_double(s.s);
  report.metadata["p"] = format_double(s.p);
}

void check_spread(SweepReport& report, std::optional<double> invariance_tolerance, double spread_bound) {
  const double hi = report.max_ratio();
  const double lo = report.min_ratio();
  if (!std::isfinite(hi) || !std::isfinite(lo)) {
    report.pass = false;
    return;
  }
  if (invariance_tolerance) {
    report.add_slope("ratio_spread", hi / lo - 1.0, 0.0, *invariance_tolerance);
  } else {
    // max/min lies in [1, spread_bound].
    report.add_slope("max_over_min", hi / lo, 0.5 * (1.0 + spread_bound), 0.5 * (spread_bound - 1.0));
  }
}

}  // namespace

// ---------------------------------------------------------------------------------------

SweepReport ortho_sweep(const OrthoSweepSpec& spec) {
  require(!spec.ks.empty() && !spec.js.empty() && !spec.t_units.empty() && !spec.eta_levels.empty(),
          ErrorCode::InvalidArgument, "sweep ranges must be non-empty");
  for (double t : spec.t_units) require(t >= 0.0, ErrorCode::InvalidArgument, "times must be non-negative");

  struct Task {
    int k, j;
    std::size_t ti;
    int level;
  };
  std::vector<Task> tasks;
  for (int k : spec.ks)
    for (int j : spec.js)
      for (std::size_t ti = 0; ti < spec.t_units.size(); ++ti)
        for (int l : spec.eta_levels) tasks.push_back({k, j, ti, l});

  std::vector<KernelL1Result> results(tasks.size());
  std::vector<std::string> failures(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) {
    const Task& tk = tasks[i];
    KernelSpec ks;
    ks.kind = spec.kind;
    ks.dim = spec.dim;
    ks.k = tk.k;
    ks.j = tk.j;
    ks.eta = std::ldexp(1.0, -tk.level);
    try {
      results[i] = kernel_l1_norm(ks, spec.t_units[tk.ti] * std::ldexp(1.0, -tk.k), spec.quadrature);
    } catch (const Error& e) {
      failures[i] = error_flag(e);
    }
  });

  SweepReport report = empty_report("orthogonality-" + to_string(spec.kind));
  report.param_names = {"k", "j", "t", "eta"};
  report.extra_names = {"envelope_simple", "ratio_simple", "ratio_other_regime", "richardson", "tail"};
  report.metadata["polynomial_envelope"] = spec.polynomial ? "true" : "false";
  report.metadata["nodes_per_octave"] = std::to_string(spec.quadrature.nodes_per_octave);
  report.metadata["box"] = format_double(spec.quadrature.box);
  report.metadata["slope_tolerance"] = format_double(spec.slope_tolerance);

  // per regime and parameter: samples of log2 ratio
  std::map<std::pair<std::string, std::string>, std::vector<Sample>> samples;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Task& tk = tasks[i];
    const double t = spec.t_units[tk.ti] * std::ldexp(1.0, -tk.k);
    const double eta = std::ldexp(1.0, -tk.level);
    const Regime regime = regime_of(tk.k, tk.j);
    const Regime other = regime == Regime::TimeDominated ? Regime::SpaceDominated : Regime::TimeDominated;
    const double env = orthogonality_envelope(spec.kind, spec.dim, tk.k, tk.j, t, eta, regime, spec.polynomial);
    const double simple = orthogonality_envelope(spec.kind, spec.dim, tk.k, tk.j, t, eta, regime, false);
    const double wrong = orthogonality_envelope(spec.kind, spec.dim, tk.k, tk.j, t, eta, other, spec.polynomial);
    const bool failed = !failures[i].empty();
    const double measured = failed ? kNaN : results[i].value;
    SweepRow& row = report.add({static_cast<double>(tk.k), static_cast<double>(tk.j), t, eta}, measured, env,
                               to_string(regime),
                               {simple, measured / simple, measured / wrong, failed ? kNaN : results[i].richardson_error,
                                failed ? kNaN : results[i].tail_estimate});
    append_flag(row.flags, failures[i]);
    if (failed || !(row.ratio > 0.0) || !std::isfinite(row.ratio)) continue;

    const double ly = std::log2(row.ratio);
    const double tk_unit = spec.t_units[tk.ti];
    const std::string rn = to_string(regime);
    samples[{rn, "k"}].push_back({{double(tk.j), tk_unit, double(tk.level)}, double(tk.k), ly});
    samples[{rn, "j"}].push_back({{double(tk.k), tk_unit, double(tk.level)}, double(tk.j), ly});
    samples[{rn, "t"}].push_back({{double(tk.k), double(tk.j), double(tk.level)}, log2_bracket(tk_unit), ly});
    samples[{rn, "eta"}].push_back({{double(tk.k), double(tk.j), tk_unit}, -double(tk.level), ly});
  }
  for (const auto& [key, s] : samples) {
    if (auto slope = worst_group_slope(s)) report.add_slope(key.first + ":" + key.second, *slope, 0.0, spec.slope_tolerance);
  }
  if (report.any_failed()) report.pass = false;
  return report;
}

SweepReport neumann_dirichlet_scaling(int dim, const std::vector<int>& ks, int j, double tolerance,
                                      const QuadratureOptions& quadrature) {
  require(ks.size() >= 2, ErrorCode::InvalidArgument, "the k-slope needs two or more k values");
  std::vector<KernelL1Result> dn(ks.size() * 2);
  std::vector<std::string> failures(dn.size());
  parallel_for(dn.size(), [&](std::size_t i) {
    KernelSpec s;
    s.kind = i % 2 == 0 ? KernelKind::Dirichlet : KernelKind::Neumann;
    s.dim = dim;
    s.k = ks[i / 2];
    s.j = j;
    s.eta = std::pow(2.0, -0.5 * s.k);
    try {
      dn[i] = kernel_l1_norm(s, 0.0, quadrature);
    } catch (const Error& e) {
      failures[i] = error_flag(e);
    }
  });
  SweepReport report = empty_report("neumann-dirichlet-scaling");
  report.param_names = {"k", "j"};
  report.extra_names = {"log2_ratio"};
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t q = 0; q < ks.size(); ++q) {
    const std::string flag = failures[2 * q].empty() ? failures[2 * q + 1] : failures[2 * q];
    const double d = flag.empty() ? dn[2 * q].value : kNaN;
    const double n = flag.empty() ? dn[2 * q + 1].value : kNaN;
    SweepRow& row = report.add({double(ks[q]), double(j)}, n, d, to_string(regime_of(ks[q], j)), {std::log2(n / d)});
    append_flag(row.flags, flag);
    if (flag.empty()) {
      x.push_back(ks[q]);
      y.push_back(std::log2(n / d));
    }
  }
  if (x.size() >= 2)
    report.add_slope("k", regression_slope(x, y), -0.5, tolerance);
  else
    report.pass = false;
  if (report.any_failed()) report.pass = false;
  return report;
}

SweepReport smoothed_sweep(const SmoothedSweepSpec& spec) {
  require(!spec.ks.empty(), ErrorCode::InvalidArgument, "need at least one k");
  require(spec.m_span >= 1, ErrorCode::InvalidArgument, "m_span must be positive");
  require(spec.eta_step >= 1 && spec.eta_hi >= spec.eta_lo, ErrorCode::InvalidArgument, "invalid eta grid");
  for (int k : spec.ks) require(k % 2 == 0, ErrorCode::InvalidArgument, "smoothed sweeps need even k");

  struct Task {
    int k, m, i;
  };
  std::vector<Task> tasks;
  for (int k : spec.ks)
    for (int m = k / 2 - spec.m_span; m <= k / 2 + spec.m_span; ++m)
      for (int i = spec.eta_lo; i <= spec.eta_hi; i += spec.eta_step) tasks.push_back({k, m, i});

  std::vector<double> values(tasks.size(), kNaN);
  std::vector<std::string> failures(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t q) {
    const Task& tk = tasks[q];
    KernelSpec s;
    s.kind = spec.kind;
    s.dim = spec.dim;
    s.k = tk.k;
    s.j = spec.j;
    s.m = tk.m;
    s.eta = std::pow(2.0, -0.5 * tk.k + 0.5 * tk.i);
    try {
      values[q] = eta_smoothed_l1(s, spec.t_unit * std::ldexp(1.0, -tk.k), spec.quadrature).value;
    } catch (const Error& e) {
      failures[q] = error_flag(e);
    }
  });

  SweepReport report = empty_report("smoothed-orthogonality-" + to_string(spec.kind));
  report.param_names = {"k", "m", "t"};
  report.extra_names = {"eta_at_sup", "gap"};
  report.metadata["eta_grid"] = "2^(-k/2+i/2), i=" + std::to_string(spec.eta_lo) + ".." + std::to_string(spec.eta_hi) +
                                " step " + std::to_string(spec.eta_step);
  report.metadata["slope_tolerance"] = format_double(spec.slope_tolerance);

  std::size_t q = 0;
  for (int k : spec.ks) {
    std::vector<double> x;
    std::vector<double> y;
    const double t = spec.t_unit * std::ldexp(1.0, -k);
    const Regime regime = regime_of(k, spec.j);
    for (int m = k / 2 - spec.m_span; m <= k / 2 + spec.m_span; ++m) {
      double best = kNaN;
      double best_eta = kNaN;
      std::string flag;
      for (; q < tasks.size() && tasks[q].k == k && tasks[q].m == m; ++q) {
        if (!failures[q].empty()) {
          flag = failures[q];
          continue;
        }
        if (std::isnan(best) || values[q] > best) {
          best = values[q];
          best_eta = std::pow(2.0, -0.5 * k + 0.5 * tasks[q].i);
        }
      }
      if (!flag.empty()) best = kNaN;
      const double gap = std::abs(0.5 * k - m);
      const double env = smoothed_envelope(spec.kind, k, spec.j, m, t, 0.0, regime, 2);
      SweepRow& row = report.add({double(k), double(m), t}, best, env, to_string(regime), {best_eta, gap});
      append_flag(row.flags, flag);
      if (flag.empty() && best > 0.0) {
        x.push_back(-gap);
        y.push_back(std::log2(best));
      }
    }
    if (x.size() >= 2)
      report.add_slope("k=" + std::to_string(k), regression_slope(x, y), 1.0, spec.slope_tolerance);
    else
      report.pass = false;
  }
  if (report.any_failed()) report.pass = false;
  return report;
}

// ---------------------------------------------------------------------------------------

double EstimateSetup::time_exponent() const {
  return bc == KernelKind::Dirichlet ? 1.0 - 0.5 / p : 0.5 - 0.5 / p;
}

double EstimateSetup::space_exponent() const {
  return bc == KernelKind::Dirichlet ? s + 2.0 - 1.0 / p : s + 1.0 - 1.0 / p;
}

EstimateSetup EstimateSetup::dilated(double lambda) const {
  const int e = dyadic_exponent(lambda);
  EstimateSetup out = *this;
  out.grid = grid.scaled(1.0 / lambda);
  out.time.horizon = time.horizon / (lambda * lambda);
  out.jmin += e;
  out.jmax += e;
  out.kmin += 2 * e;
  out.kmax += 2 * e;
  return out;
}

void EstimateSetup::validate() const {
  require(bc == KernelKind::Dirichlet || bc == KernelKind::Neumann, ErrorCode::InvalidArgument,
          "estimates are defined for Dirichlet and Neumann conditions");
  require(grid.dim == 2 || grid.dim == 3, ErrorCode::InvalidArgument, "estimates need n = 2 or n = 3");
  grid.validate();
  time.validate();
  require(time.points >= 3, ErrorCode::InvalidArgument, "estimates need three or more time levels");
  require(padded_time >= time.points, ErrorCode::InvalidArgument, "padded time line shorter than the time grid");
  require(p >= 1.0, ErrorCode::InvalidArgument, "p must be at least 1");
  require(s > -1.0 + 1.0 / p && s <= 0.0, ErrorCode::InvalidArgument, "s must satisfy -1 + 1/p < s <= 0");
  require(jmin <= jmax && kmin <= kmax, ErrorCode::InvalidArgument, "empty window");
  require(std::ldexp(1.0, jmax + 1) <= grid.nyquist() * (1.0 + 1e-12), ErrorCode::OutOfBand,
          "spatial window exceeds the grid Nyquist frequency");
  require(std::ldexp(1.0, kmax + 1) <= std::numbers::pi / time.step() * (1.0 + 1e-12), ErrorCode::OutOfBand,
          "time window exceeds the time-grid Nyquist frequency");
}

EstimateSetup EstimateSetup::standard(KernelKind bc) {
  EstimateSetup s;
  s.bc = bc;
  s.grid = GridSpec::halfspace(2, 64, 16.0);
  s.time = TimeGrid{12.0, 241};
  s.jmax = 2;
  s.kmax = 4;
  return s;
}

double smooth_bump(double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

double smooth_bump_derivative(double u, int order) {
  if (std::abs(u) >= 1.0) return 0.0;
  const double v = 1.0 - u * u;
  const double chi = std::exp(-1.0 / v);
  const double d1 = -2.0 * u / (v * v);                         // (log chi)'
  const double d2 = -2.0 / (v * v) - 8.0 * u * u / (v * v * v);  // (log chi)''
  switch (order) {
    case 0: return chi;
    case 1: return d1 * chi;
    case 2: return (d2 + d1 * d1) * chi;
    default: throw Error(ErrorCode::InvalidArgument, "bump derivative order above two");
  }
}

TimeField boundary_datum(const EstimateSetup& setup, const std::vector<BoundaryBump>& bumps, double band_lo,
                         double band_hi) {
  setup.validate();
  require(band_lo >= 0.0 && band_hi > band_lo, ErrorCode::InvalidArgument, "invalid band");
  const GridSpec b = setup.grid.boundary();
  Field profile = Field::zeros(b);
  TimeField h{setup.time, {}};
  h.slices.reserve(static_cast<std::size_t>(setup.time.points));
  // Each bump is a product of a time factor and a band-projected spatial factor.
  std::vector<Field> spatial;
  for (const auto& bump : bumps) {
    Field g = Field::sample(b, [&](const Point& x) {
      double v = 1.0;
      for (int a = 0; a < b.dim; ++a)
        v *= gaussian_wave(x[a] - bump.x_center, bump.x_width, a == 0 ? bump.frequency : 0.0, 0,
                           a == 0 ? bump.phase : 0.0);
      return v;
    });
    g = apply_multiplier(g, [&](const Point& xi) {
      double r2 = 0.0;
      for (int a = 0; a < b.dim; ++a) r2 += xi[a] * xi[a];
      const double r = std::sqrt(r2);
      return cplx{r >= band_lo && r <= band_hi ? 1.0 : 0.0, 0.0};
    });
    for (auto& z : g.samples) z = cplx{z.real(), 0.0};
    spatial.push_back(std::move(g));
  }
  for (int i = 0; i < setup.time.points; ++i) {
    Field slice = Field::zeros(b);
    const double t = setup.time.at(i);
    for (std::size_t q = 0; q < bumps.size(); ++q) {
      const double a = bumps[q].amplitude * smooth_bump((t - bumps[q].t_center) / bumps[q].t_width);
      if (a != 0.0) slice += a * spatial[q];
    }
    h.slices.push_back(std::move(slice));
  }
  return h;
}

std::vector<std::vector<BoundaryBump>> random_bump_family(std::uint64_t seed, int members, const EstimateSetup& setup) {
  require(members >= 1, ErrorCode::InvalidArgument, "family needs at least one member");
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * std::generate_canonical<double, 53>(rng); };
  const double centre = 0.5 * setup.grid.length;
  const double T = setup.time.horizon;
  std::vector<std::vector<BoundaryBump>> out;
  for (int m = 0; m < members; ++m) {
    const int count = 1 + static_cast<int>(rng() % 2);
    std::vector<BoundaryBump> member;
    for (int q = 0; q < count; ++q) {
      BoundaryBump b;
      b.amplitude = uniform(0.5, 1.5);
      b.t_width = uniform(0.0625, 0.125) * T;
      b.t_center = uniform(b.t_width + 0.05 * T, 0.35 * T);
      b.x_center = centre + uniform(-0.125, 0.125) * setup.grid.length;
      b.x_width = uniform(0.0625, 0.125) * setup.grid.length;
      b.frequency = uniform(2.5, 4.0) * 16.0 / setup.grid.length;
      b.phase = uniform(0.0, 2.0 * std::numbers::pi);
      member.push_back(b);
    }
    out.push_back(std::move(member));
  }
  return out;
}

TimeField translate_in_time(const TimeField& h, int steps) {
  require(!h.slices.empty(), ErrorCode::InvalidArgument, "empty time field");
  TimeField out{h.time, {}};
  const int n = static_cast<int>(h.slices.size());
  out.slices.reserve(h.slices.size());
  for (int i = 0; i < n; ++i) {
    const int src = i - steps;
    if (src >= 0 && src < n)
      out.slices.push_back(h.slices[static_cast<std::size_t>(src)]);
    else
      out.slices.push_back(Field::zeros(h.slices[0].grid));
  }
  return out;
}

MaxregSides maxreg_sides(const EstimateSetup& setup, const TimeField& h) {
  setup.validate();
  const GridSpec boundary = setup.grid.boundary();
  require(static_cast<int>(h.slices.size()) == setup.time.points, ErrorCode::GridMismatch,
          "datum has the wrong number of time levels");
  for (const auto& s : h.slices)
    require(s.grid.same_lattice(boundary), ErrorCode::GridMismatch, "datum is not on the boundary grid");

  const DyadicProfile profile;
  const FilterBank bulk(profile, setup.jmin, setup.jmax, setup.grid);
  const FilterBank edge(profile, setup.jmin, setup.jmax, boundary);
  const FilterBank tbank = make_time_bank(profile, setup.time, setup.padded_time, setup.kmin, setup.kmax);
  std::atomic<unsigned> warnings{0};

  NormParams bulk_params;
  bulk_params.s = setup.s;
  bulk_params.p = setup.p;
  auto bulk_norm = [&](const HalfField& f) {
    const NormResult r = halfspace_norm(f, bulk_params, bulk);
    warnings.fetch_or(r.warnings);
    return r.value;
  };

  std::array<HalfSpaceTimeField, 3> layers;
  for (int order = 0; order < 3; ++order)
    layers[static_cast<std::size_t>(order)] =
        boundary_corrector(setup.bc, h, setup.grid, setup.time, order, setup.solver);

  const auto components = hessian_components(setup.grid.dim);
  const auto nt = static_cast<std::size_t>(setup.time.points);
  std::vector<double> dt_values(nt);
  std::vector<double> hess_values(nt);
  parallel_for(nt, [&](std::size_t i) {
    dt_values[i] = bulk_norm(time_derivative(layers[0], static_cast<int>(i)));
    double acc = 0.0;
    for (const auto& [orders, eta_order] : components)
      acc += bulk_norm(xprime_derivative(layers[static_cast<std::size_t>(eta_order)].slices[i], orders));
    hess_values[i] = acc;
  });

  MaxregSides out;
  out.dt_norm = trapezoid(dt_values, setup.time.step());
  out.hessian_norm = trapezoid(hess_values, setup.time.step());

  auto edge_norm = [&](double regularity) {
    return [&, regularity](const Field& f) {
      NormParams np;
      np.s = regularity;
      np.p = setup.p;
      const NormResult r = besov_norm(f, np, edge);
      warnings.fetch_or(r.warnings);
      return r.value;
    };
  };
  TimeNormParams tp;
  tp.s = setup.time_exponent();
  tp.p = 1.0;
  const NormResult rt = bochner_tl_norm(h, tp, edge_norm(setup.s), tbank);
  warnings.fetch_or(rt.warnings);
  out.rhs_time = rt.value;
  out.rhs_space = bochner_lebesgue_norm(h, 1.0, edge_norm(setup.space_exponent()));
  out.warnings = warnings.load();
  return out;
}

std::vector<MaxregMember> maxreg_dilation_family(const EstimateSetup& base, const TimeField& h,
                                                 const std::vector<double>& lambdas) {
  std::vector<MaxregMember> out;
  for (double lambda : lambdas) {
    MaxregMember m;
    m.params = {lambda};
    m.setup = base.dilated(lambda);
    m.h.time = m.setup.time;
    const GridSpec b = m.setup.grid.boundary();
    for (const auto& s : h.slices) {
      Field f = s;
      f.grid = b;
      m.h.slices.push_back(std::move(f));
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<MaxregMember> maxreg_translation_family(const EstimateSetup& base, const TimeField& h,
                                                    const std::vector<int>& steps) {
  std::vector<MaxregMember> out;
  for (int s : steps) {
    require(s >= 0, ErrorCode::InvalidArgument, "time translations must be forward");
    out.push_back({{base.time.step() * s}, base, translate_in_time(h, s)});
  }
  return out;
}

std::vector<MaxregMember> maxreg_random_family(const EstimateSetup& base, std::uint64_t seed, int members,
                                               double band_lo, double band_hi) {
  std::vector<MaxregMember> out;
  const auto family = random_bump_family(seed, members, base);
  for (std::size_t q = 0; q < family.size(); ++q)
    out.push_back({{static_cast<double>(q)}, base, boundary_datum(base, family[q], band_lo, band_hi)});
  return out;
}

SweepReport maxreg_ratio(const std::vector<std::string>& param_names, const std::vector<MaxregMember>& family,
                         std::optional<double> invariance_tolerance, double spread_bound) {
  require(!family.empty(), ErrorCode::InvalidArgument, "empty data family");
  SweepReport report = empty_report("maximal-regularity-" + to_string(family.front().setup.bc));
  report.param_names = param_names;
  report.extra_names = {"dt_norm", "hessian_norm", "rhs_time", "rhs_space"};
  record_setup(report, family.front().setup);
  for (const auto& member : family) {
    require(member.params.size() == param_names.size(), ErrorCode::InvalidArgument,
            "member parameters do not match the parameter names");
    try {
      const MaxregSides sides = maxreg_sides(member.setup, member.h);
      SweepRow& row = report.add(member.params, sides.lhs(), sides.rhs(), "all",
                                 {sides.dt_norm, sides.hessian_norm, sides.rhs_time, sides.rhs_space});
      if (sides.rhs() == 0.0 && sides.lhs() == 0.0) append_flag(row.flags, "degenerate");
      append_flag(row.flags, warning_flags(sides.warnings));
    } catch (const Error& e) {
      SweepRow& row = report.add(member.params, kNaN, kNaN, "all", {kNaN, kNaN, kNaN, kNaN});
      append_flag(row.flags, error_flag(e));
    }
  }
  check_spread(report, invariance_tolerance, spread_bound);
  if (report.any_failed()) report.pass = false;
  return report;
}

// ---------------------------------------------------------------------------------------

SeparableSolution SeparableSolution::dilated(double lambda) const {
  require(lambda > 0.0, ErrorCode::InvalidArgument, "dilation factor must be positive");
  SeparableSolution u = *this;
  u.t_center /= lambda * lambda;
  u.t_width /= lambda * lambda;
  u.x_center /= lambda;
  u.x_width /= lambda;
  u.frequency *= lambda;
  u.eta_width /= lambda;
  return u;
}

double SeparableSolution::a(double t, int order) const {
  return amplitude * smooth_bump_derivative((t - t_center) / t_width, order) / std::pow(t_width, order);
}

double SeparableSolution::b(double x, int order) const { return gaussian_wave(x - x_center, x_width, frequency, order); }

double SeparableSolution::c(double eta, int order) const { return gaussian_wave(eta, eta_width, 1.0 / eta_width, order); }

std::vector<SeparableSolution> random_separable_family(std::uint64_t seed, int members, const EstimateSetup& setup) {
  require(members >= 1, ErrorCode::InvalidArgument, "family needs at least one member");
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * std::generate_canonical<double, 53>(rng); };
  const double L = setup.grid.length;
  const double T = setup.time.horizon;
  std::vector<SeparableSolution> out;
  for (int m = 0; m < members; ++m) {
    SeparableSolution u;
    u.amplitude = uniform(0.5, 1.5);
    u.t_width = uniform(0.08, 0.15) * T;
    u.t_center = uniform(u.t_width + 0.02 * T, 0.4 * T);
    u.x_center = 0.5 * L + uniform(-0.1, 0.1) * L;
    u.x_width = uniform(0.06, 0.12) * L;
    u.frequency = uniform(1.0, 3.0) * 16.0 / L;
    u.eta_width = uniform(0.04, 0.08) * L;
    out.push_back(u);
  }
  return out;
}

TraceSides trace_sides(const EstimateSetup& setup, const SeparableSolution& u, bool derivative, int eta_layers) {
  setup.validate();
  require(u.a(0.0) == 0.0, ErrorCode::Precondition, "manufactured solution does not vanish at t = 0");
  require(eta_layers >= 1 && eta_layers <= setup.grid.points / 2, ErrorCode::InvalidArgument,
          "eta layer count outside the half box");

  const GridSpec boundary = setup.grid.boundary();
  const DyadicProfile profile;
  const FilterBank bulk(profile, setup.jmin, setup.jmax, setup.grid);
  const FilterBank edge(profile, setup.jmin, setup.jmax, boundary);
  const FilterBank tbank = make_time_bank(profile, setup.time, setup.padded_time, setup.kmin, setup.kmax);
  std::atomic<unsigned> warnings{0};

  const double t_reg = derivative ? 0.5 - 0.5 / setup.p : 1.0 - 0.5 / setup.p;
  const double x_reg = derivative ? setup.s + 1.0 - 1.0 / setup.p : setup.s + 2.0 - 1.0 / setup.p;

  auto xprime_profile = [&](const std::array<int, 2>& orders) {
    return Field::sample(boundary, [&](const Point& x) {
      double v = 1.0;
      for (int a = 0; a < boundary.dim; ++a) v *= u.b(x[a], orders[static_cast<std::size_t>(a)]);
      return v;
    });
  };
  auto edge_norm = [&](double regularity) {
    return [&, regularity](const Field& f) {
      NormParams np;
      np.s = regularity;
      np.p = setup.p;
      const NormResult r = besov_norm(f, np, edge);
      warnings.fetch_or(r.warnings);
      return r.value;
    };
  };

  TraceSides out;
  const Field bx = xprime_profile({0, 0});
  const int eta_order = derivative ? 1 : 0;
  std::vector<double> layer_values(static_cast<std::size_t>(eta_layers));
  HalfField probe = HalfField::zeros(setup.grid);
  for (int r = 0; r < eta_layers; ++r) {
    const double cr = u.c(probe.eta(r), eta_order);
    TimeField layer{setup.time, {}};
    for (int i = 0; i < setup.time.points; ++i) layer.slices.push_back(u.a(setup.time.at(i)) * cr * bx);
    TimeNormParams tp;
    tp.s = t_reg;
    tp.p = 1.0;
    const NormResult tl = bochner_tl_norm(layer, tp, edge_norm(setup.s), tbank);
    warnings.fetch_or(tl.warnings);
    layer_values[static_cast<std::size_t>(r)] = tl.value + bochner_lebesgue_norm(layer, 1.0, edge_norm(x_reg));
  }
  out.lhs = *std::max_element(layer_values.begin(), layer_values.end());

  NormParams bulk_params;
  bulk_params.s = setup.s;
  bulk_params.p = setup.p;
  auto bulk_component = [&](const std::array<int, 2>& orders, int c_order) {
    const Field bxo = xprime_profile(orders);
    HalfField f = HalfField::zeros(setup.grid);
    for (std::size_t col = 0; col < f.columns(); ++col)
      for (int r = 0; r < f.rows(); ++r) f.at(col, r) = bxo.samples[col] * u.c(f.eta(r), c_order);
    const NormResult res = halfspace_norm(f, bulk_params, bulk);
    warnings.fetch_or(res.warnings);
    return res.value;
  };
  std::vector<double> abs_a(static_cast<std::size_t>(setup.time.points));
  std::vector<double> abs_da(abs_a.size());
  for (int i = 0; i < setup.time.points; ++i) {
    abs_a[static_cast<std::size_t>(i)] = std::abs(u.a(setup.time.at(i)));
    abs_da[static_cast<std::size_t>(i)] = std::abs(u.a(setup.time.at(i), 1));
  }
  double hessian = 0.0;
  for (const auto& [orders, c_order] : hessian_components(setup.grid.dim)) hessian += bulk_component(orders, c_order);
  out.rhs = trapezoid(abs_da, setup.time.step()) * bulk_component({0, 0}, 0) +
            trapezoid(abs_a, setup.time.step()) * hessian;
  out.warnings = warnings.load();
  return out;
}

SweepReport trace_check(const std::vector<std::string>& param_names, const std::vector<std::vector<double>>& params,
                        const std::vector<EstimateSetup>& setups, const std::vector<SeparableSolution>& family,
                        bool derivative, std::optional<double> invariance_tolerance) {
  require(!family.empty() && family.size() == setups.size() && family.size() == params.size(),
          ErrorCode::InvalidArgument, "family, setups and parameters must have equal non-zero length");
  for (std::size_t q = 0; q < family.size(); ++q)
    require(family[q].a(0.0) == 0.0, ErrorCode::Precondition, "manufactured solution does not vanish at t = 0");

  SweepReport report = empty_report(derivative ? "derivative-trace" : "trace");
  report.param_names = param_names;
  record_setup(report, setups.front());
  report.metadata.erase("bc");
  for (std::size_t q = 0; q < family.size(); ++q) {
    try {
      const TraceSides sides = trace_sides(setups[q], family[q], derivative);
      SweepRow& row = report.add(params[q], sides.lhs, sides.rhs, "all");
      if (sides.lhs == 0.0 && sides.rhs == 0.0) append_flag(row.flags, "degenerate");
      append_flag(row.flags, warning_flags(sides.warnings));
    } catch (const Error& e) {
      SweepRow& row = report.add(params[q], kNaN, kNaN, "all");
      append_flag(row.flags, error_flag(e));
    }
  }
  for (const auto& r : report.rows) {
    const bool degenerate = r.flags.find("degenerate") != std::string::npos;
    if (!degenerate && !(std::isfinite(r.ratio) && r.ratio > 0.0)) report.pass = false;
  }
  if (invariance_tolerance) check_spread(report, invariance_tolerance, 0.0);
  if (report.any_failed()) report.pass = false;
  return report;
}

// ---------------------------------------------------------------------------------------

std::string to_string(ScalingNorm n) { return n == ScalingNorm::TimeTriebel ? "time-triebel" : "lebesgue"; }

SpaceTimeFunction default_scaling_datum(const ScalingSetup& setup) {
  Point centre = setup.boundary.origin;
  for (int a = 0; a < setup.boundary.dim; ++a) centre[a] += 0.5 * setup.boundary.length;
  const int dim = setup.boundary.dim;
  return [centre, dim](double t, const Point& x) {
    const double u = (t - 5.0) / 0.8;
    double v = (u * u - 1.0) * std::exp(-0.5 * u * u);
    for (int a = 0; a < dim; ++a) {
      const double y = 0.5 * (x[a] - centre[a]);
      v *= (1.0 - y * y) * std::exp(-0.5 * y * y);
    }
    return v;
  };
}

SweepReport scaling_exponents(const ScalingSetup& setup, const SpaceTimeFunction& datum,
                              const std::vector<double>& lambdas) {
  setup.boundary.validate();
  setup.time.validate();
  require(setup.boundary.dim >= 1 && setup.boundary.dim <= 2, ErrorCode::InvalidArgument,
          "scaling needs a boundary grid of dimension 1 or 2");
  require(setup.p >= 1.0, ErrorCode::InvalidArgument, "p must be at least 1");
  require(setup.padded_time >= setup.time.points, ErrorCode::InvalidArgument, "padded line shorter than the grid");
  std::set<double> distinct(lambdas.begin(), lambdas.end());
  require(distinct.size() >= 2, ErrorCode::InvalidArgument,
          "scaling needs two or more distinct dilation factors");
  for (double l : lambdas) dyadic_exponent(l);

  const int n = setup.boundary.dim + 1;
  const double target = setup.s - n / setup.p;
  const double t_reg = setup.bc == KernelKind::Dirichlet ? 1.0 - 0.5 / setup.p : 0.5 - 0.5 / setup.p;
  const double x_reg = setup.bc == KernelKind::Dirichlet ? setup.s + 2.0 - 1.0 / setup.p : setup.s + 1.0 - 1.0 / setup.p;

  const DyadicProfile profile;
  const FilterBank edge(profile, setup.jmin, setup.jmax, setup.boundary);
  Point centre = setup.boundary.origin;
  for (int a = 0; a < setup.boundary.dim; ++a) centre[a] += 0.5 * setup.boundary.length;

  std::vector<double> norms(lambdas.size());
  std::vector<unsigned> warnings(lambdas.size(), 0);
  for (std::size_t q = 0; q < lambdas.size(); ++q) {
    const double lambda = lambdas[q];
    const double amplitude = setup.bc == KernelKind::Neumann ? lambda : 1.0;
    TimeField h{setup.time, {}};
    double peak = 0.0;
    std::size_t peak_index = 0;
    for (int i = 0; i < setup.time.points; ++i) {
      const double t = lambda * lambda * setup.time.at(i);
      Field f = Field::sample(setup.boundary, [&](const Point& x) {
        Point y = x;
        for (int a = 0; a < setup.boundary.dim; ++a) y[a] = lambda * (x[a] - centre[a]) + centre[a];
        return amplitude * datum(t, y);
      });
      const double m = max_abs(f.samples);
      if (m > peak) {
        peak = m;
        peak_index = static_cast<std::size_t>(i);
      }
      h.slices.push_back(std::move(f));
    }
    require(peak > 0.0, ErrorCode::OutOfBand, "dilated datum vanishes on the time grid");
    require(max_abs(h.slices.back().samples) <= 1e-8 * peak, ErrorCode::OutOfBand,
            "dilated datum is not supported inside the time horizon");
    NormParams probe;
    probe.s = setup.s;
    probe.p = setup.p;
    const NormResult check = besov_norm(h.slices[peak_index], probe, edge);
    require(check.high_leftover <= 1e-3, ErrorCode::OutOfBand, "dilated datum leaves the resolvable band");

    auto spatial = [&](double regularity) {
      return [&, regularity, q](const Field& f) {
        NormParams np;
        np.s = regularity;
        np.p = setup.p;
        const NormResult r = besov_norm(f, np, edge);
        warnings[q] |= r.warnings;
        return r.value;
      };
    };
    if (setup.norm == ScalingNorm::Lebesgue) {
      norms[q] = bochner_lebesgue_norm(h, 1.0, spatial(x_reg));
    } else {
      const FilterBank tbank = make_time_bank(profile, setup.time, setup.padded_time, setup.kmin, setup.kmax);
      TimeNormParams tp;
      tp.s = t_reg;
      tp.p = 1.0;
      const NormResult r = bochner_tl_norm(h, tp, spatial(setup.s), tbank);
      warnings[q] |= r.warnings;
      norms[q] = r.value;
    }
  }

  SweepReport report = empty_report("scaling-" + to_string(setup.norm) + "-" + to_string(setup.bc));
  report.param_names = {"lambda", "log2_lambda"};
  report.extra_names = {};
  report.metadata["target"] = format_double(target);
  report.metadata["tolerance"] = format_double(setup.tolerance);
  const auto first = std::min_element(lambdas.begin(), lambdas.end()) - lambdas.begin();
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t q = 0; q < lambdas.size(); ++q) {
    const double env = norms[static_cast<std::size_t>(first)] * std::pow(lambdas[q] / lambdas[static_cast<std::size_t>(first)], target);
    SweepRow& row = report.add({lambdas[q], std::log2(lambdas[q])}, norms[q], env, "all");
    append_flag(row.flags, warning_flags(warnings[q]));
    x.push_back(std::log2(lambdas[q]));
    y.push_back(std::log2(norms[q]));
  }
  report.add_slope("log2_lambda", regression_slope(x, y), target, setup.tolerance);
  return report;
}

double lemma_b_integral(int N, double a) {
  require(N >= 2, ErrorCode::InvalidArgument, "N must be at least 2");
  require(a > 0.0, ErrorCode::InvalidArgument, "a must be positive");
  // Panels of width 1/4 up to min(a, 1), then doubling widths.
  std::vector<double> edges{0.0};
  while (edges.back() < std::min(a, 1.0)) edges.push_back(std::min(edges.back() + 0.25, std::min(a, 1.0)));
  while (edges.back() < a) edges.push_back(std::min(2.0 * edges.back(), a));
  const QuadratureRule rule = composite_gauss(edges, 32);
  const double half = 0.5 * N;
  return 2.0 * integrate(rule, [half](double x) { return std::pow(1.0 + x * x, -half); });
}

double lemma_b_closed_form(int N, double a) {
  switch (N) {
    case 2: return 2.0 * std::atan(a);
    case 3: return 2.0 * a / std::sqrt(1.0 + a * a);
    case 4: return a / (1.0 + a * a) + std::atan(a);
    default: return kNaN;
  }
}

SweepReport lemma_b_bound(int N, const std::vector<double>& a_values) {
  require(N >= 2, ErrorCode::InvalidArgument, "N must be at least 2");
  require(!a_values.empty(), ErrorCode::InvalidArgument, "empty a-set");
  SweepReport report = empty_report("integral-bound");
  report.param_names = {"N", "a"};
  report.extra_names = {"closed_form", "relative_error"};
  double worst_error = 0.0;
  bool have_closed = false;
  for (double a : a_values) {
    const double value = lemma_b_integral(N, a);
    const double closed = lemma_b_closed_form(N, a);
    const double err = std::isnan(closed) ? kNaN : std::abs(value - closed) / std::abs(closed);
    if (!std::isnan(err)) {
      have_closed = true;
      worst_error = std::max(worst_error, err);
    }
    report.add({double(N), a}, value, a / std::sqrt(1.0 + a * a), "all", {closed, err});
  }
  if (have_closed) report.add_slope("closed_form_error", worst_error, 0.0, 1e-8);
  // the ratio never exceeds the N = 2 limit pi (the integrand decreases with N)
  report.add_slope("excess_over_pi", std::max(0.0, report.max_ratio() - std::numbers::pi), 0.0, 0.01);
  return report;
}

}  // namespace besovheat
