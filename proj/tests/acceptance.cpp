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

// Acceptance run: one PASS/FAIL line per criterion. The exit status is the number of
// failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/filterbank.hpp"
#include "core/kernels.hpp"
#include "core/solver.hpp"
#include "core/spaces.hpp"
#include "core/verify.hpp"

using namespace besovheat;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Slopes of a report, for the detail column.
std::string slopes_of(const SweepReport& r) {
  std::ostringstream os;
  for (const auto& s : r.slopes) os << ' ' << s.name << '=' << fmt("%.3g", s.value) << (s.pass ? "" : "(x)");
  return os.str();
}

bool report_ok(const SweepReport& r) { return r.pass && !r.any_failed(); }

// 1. Partition of unity on 1000 radii and the separated-variable sum.
Outcome partition() {
  const FilterBank bank(DyadicProfile{}, -4, 5, GridSpec::halfspace(2, 256, 2 * M_PI));
  const double whole = partition_residual(bank, 1000);
  const double split = split_partition_residual(bank, 1000);
  return {whole < 1e-10 && split < 1e-10, "partition " + fmt("%.1e", whole) + ", split " + fmt("%.1e", split)};
}

// 2. Telescoping, restriction of the zero extension, and half-space norm of an interior bump.
Outcome telescoping() {
  const GridSpec grid = GridSpec::halfspace(2, 128, 16.0);
  const FilterBank bank(DyadicProfile{}, -3, 3, grid);
  const double tele = telescoping_residual(bank, 1000);

  // Compactly supported bump of radius 3 centred at (8, 4): inside x_n > 0.
  const Field bump = Field::sample(grid, [](const Point& x) {
    const double r2 = ((x[0] - 8.0) * (x[0] - 8.0) + (x[1] - 4.0) * (x[1] - 4.0)) / 9.0;
    return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) * std::cos(2.0 * x[0]) : 0.0;
  });
  const HalfField half = restrict_half(bump);
  const HalfField round_trip = restrict_half(extend_zero(half));
  bool exact = round_trip.samples.size() == half.samples.size();
  for (std::size_t i = 0; exact && i < half.samples.size(); ++i) exact = round_trip.samples[i] == half.samples[i];

  NormParams p;
  p.s = 0.0;
  p.p = 2.0;
  const double whole = besov_norm(bump, p, bank).value;
  const double halfnorm = halfspace_norm(half, p, bank).value;
  const double rel = std::abs(halfnorm - whole) / whole;
  return {tele < 1e-14 && exact && rel < 1e-10, "telescoping " + fmt("%.1e", tele) + ", R0E0 " +
                                                    (exact ? "exact" : "inexact") + ", half/whole " + fmt("%.1e", rel)};
}

// 3. Dilation exponent s - n/p of the Besov norm for random band-limited fields.
Outcome dilation() {
  // Gaussian window w = 4 on a box of 12 w; single radius |k| = 1.5 so that the spectrum at
  // zero is e^{-18} and lambda = 4 stays below 2^jmax.
  const double w = 4.0, L = 12.0 * w, c = L / 2.0, kr = 1.5;
  const GridSpec grid = GridSpec::periodic(2, 512, L);
  const FilterBank bank(DyadicProfile{}, -4, 4, grid);
  const std::vector<double> lambdas{1.0, 2.0, 4.0};
  const std::vector<std::pair<double, double>> sp{{0.0, 2.0}, {-0.25, 2.0}, {0.0, 4.0}};

  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int member = 0; member < 5; ++member) {
    struct Wave {
      double a, kx, ky, phase;
    };
    std::vector<Wave> waves;
    for (int q = 0; q < 4; ++q) {
      const double dir = 2.0 * M_PI * unit(rng);
      waves.push_back({0.5 + unit(rng), kr * std::cos(dir), kr * std::sin(dir), 2.0 * M_PI * unit(rng)});
    }
    std::vector<Field> dilates;
    for (double l : lambdas)
      dilates.push_back(Field::sample(grid, [&](const Point& x) {
        const double y0 = l * (x[0] - c), y1 = l * (x[1] - c);
        double v = 0.0;
        for (const auto& wv : waves) v += wv.a * std::cos(wv.kx * y0 + wv.ky * y1 + wv.phase);
        return v * std::exp(-(y0 * y0 + y1 * y1) / (2.0 * w * w));
      }));
    for (const auto& [s, p] : sp) {
      NormParams np;
      np.s = s;
      np.p = p;
      std::vector<double> x, y;
      for (std::size_t i = 0; i < lambdas.size(); ++i) {
        x.push_back(std::log2(lambdas[i]));
        y.push_back(std::log2(besov_norm(dilates[i], np, bank).value));
      }
      worst = std::max(worst, std::abs(regression_slope(x, y) - (s - 2.0 / p)));
    }
  }
  return {worst < 0.05, "worst |slope - (s - n/p)| " + fmt("%.2e", worst)};
}

// 4. Kernel rescaling (k, j, t, eta) -> (k - 2, j - 1, 4t, 2 eta): ratio 16 (Dirichlet), 8 (Neumann).
Outcome rescaling() {
  const std::vector<std::pair<int, int>> pairs{{4, 1}, {4, 2}, {6, 2}, {6, 3}, {8, 3}, {8, 4}};
  double worst = 0.0;
  for (const auto& [kind, expected] : {std::pair{KernelKind::Dirichlet, 16.0}, std::pair{KernelKind::Neumann, 8.0}})
    for (const auto& [k, j] : pairs) {
      KernelSpec a;
      a.kind = kind;
      a.k = k;
      a.j = j;
      a.eta = std::ldexp(1.0, -j);
      const double t = std::ldexp(1.0, -k);
      KernelSpec b = a;
      b.k -= 2;
      b.j -= 1;
      b.eta *= 2.0;
      const double ratio = kernel_l1_norm(a, t).value / kernel_l1_norm(b, 4.0 * t).value;
      worst = std::max(worst, std::abs(ratio / expected - 1.0));
    }
  return {worst < 1e-4, "worst relative deviation " + fmt("%.2e", worst)};
}

// 5. Envelope sweeps for both kernels and the Neumann/Dirichlet k-slope.
Outcome envelopes() {
  OrthoSweepSpec d;
  d.kind = KernelKind::Dirichlet;
  OrthoSweepSpec n = d;
  n.kind = KernelKind::Neumann;
  const SweepReport rd = ortho_sweep(d);
  const SweepReport rn = ortho_sweep(n);
  const SweepReport nd = neumann_dirichlet_scaling(2, {4, 6, 8}, 0, 0.1);
  const bool pass = report_ok(rd) && report_ok(rn) && report_ok(nd);
  return {pass, "D max ratio " + fmt("%.3g", rd.max_ratio()) + slopes_of(rd) + "; N max ratio " +
                    fmt("%.3g", rn.max_ratio()) + slopes_of(rn) + "; N/D" + slopes_of(nd)};
}

// 6. Smoothed decay 2^{-|k/2 - m|}.
Outcome smoothed() {
  const SweepReport r = smoothed_sweep(SmoothedSweepSpec{});
  return {report_ok(r), "slopes" + slopes_of(r)};
}

// 7. Solver oracles: erfc / flux solutions, manufactured 2-D solution, residual order.
Outcome solver() {
  double worst_1d = 0.0;
  for (auto bc : {KernelKind::Dirichlet, KernelKind::Neumann}) {
    IbvpData d;
    d.bc = bc;
    d.grid = GridSpec::halfspace(1, 256, 16.0);
    d.time = {1.0, 101};
    d.h.time = d.time;
    for (int i = 0; i < d.time.points; ++i) {
      Field h = Field::zeros(d.grid.boundary());
      h.samples[0] = 1.0;
      d.h.slices.push_back(h);
    }
    const SolutionBundle s = solve_halfspace_heat(d);
    for (int i = 1; i < d.time.points; ++i) {
      const double t = d.time.at(i);
      const HalfField& u = s.u.slices[static_cast<std::size_t>(i)];
      for (int r = 0; r < u.rows(); ++r) {
        const double eta = u.eta(r);
        const double erfc = std::erfc(eta / (2.0 * std::sqrt(t)));
        const double exact = bc == KernelKind::Dirichlet
                                 ? erfc
                                 : -2.0 * std::sqrt(t / M_PI) * std::exp(-eta * eta / (4.0 * t)) + eta * erfc;
        if (std::abs(exact) > 1e-3) worst_1d = std::max(worst_1d, std::abs(u.at(0, r).real() - exact) / std::abs(exact));
      }
    }
  }

  auto exact = [](double t, double x, double eta) {
    const double layer = t > 0.0 ? std::erfc(eta / (2.0 * std::sqrt(t))) : 0.0;
    return (1.0 + t) * std::cos(x) * std::sin(eta) + std::exp(-t) * std::cos(x) * layer;
  };
  std::vector<double> rel, residual;
  for (int N : {32, 64}) {
    IbvpData d;
    d.grid = GridSpec::halfspace(2, N, 2.0 * M_PI);
    d.time = {1.0, N + 1};
    const GridSpec b = d.grid.boundary();
    d.u0 = HalfField::zeros(d.grid);
    for (std::size_t col = 0; col < d.u0.columns(); ++col)
      for (int r = 0; r < d.u0.rows(); ++r) d.u0.at(col, r) = exact(0.0, b.coordinate(0, static_cast<int>(col)), d.u0.eta(r));
    d.f.time = d.time;
    d.h.time = d.time;
    for (int i = 0; i < d.time.points; ++i) {
      const double t = d.time.at(i);
      HalfField f = HalfField::zeros(d.grid);
      for (std::size_t col = 0; col < f.columns(); ++col)
        for (int r = 0; r < f.rows(); ++r)
          f.at(col, r) = (3.0 + 2.0 * t) * std::cos(b.coordinate(0, static_cast<int>(col))) * std::sin(f.eta(r));
      d.f.slices.push_back(std::move(f));
      d.h.slices.push_back(Field::sample(b, [&](const Point& x) { return std::exp(-t) * std::cos(x[0]); }));
    }
    const SolutionBundle s = solve_halfspace_heat(d);
    const HalfField& u = s.u.slices.back();
    double num = 0.0, den = 0.0;
    for (std::size_t col = 0; col < u.columns(); ++col)
      for (int r = 0; r < u.rows(); ++r) {
        const double e = exact(1.0, b.coordinate(0, static_cast<int>(col)), u.eta(r));
        num += std::norm(u.at(col, r) - e);
        den += e * e;
      }
    rel.push_back(std::sqrt(num / den));
    residual.push_back(s.residual_l2[static_cast<std::size_t>(N / 2 - 1)]);  // t = 1/2
  }
  const double order = std::log2(residual[0] / residual[1]);
  const bool pass = worst_1d < 1e-3 && rel[0] < 1e-3 && rel[1] < 1e-3 && std::abs(order - 2.0) < 0.25;
  return {pass, "1-D max rel " + fmt("%.1e", worst_1d) + ", 2-D rel L2 " + fmt("%.1e", rel[0]) + "/" +
                    fmt("%.1e", rel[1]) + ", residual order " + fmt("%.2f", order)};
}

// 8. Maximal regularity ratios: random family, dilation and time translation.
Outcome maxreg() {
  bool pass = true;
  std::ostringstream os;
  for (auto bc : {KernelKind::Dirichlet, KernelKind::Neumann}) {
    const EstimateSetup setup = EstimateSetup::standard(bc);
    const SweepReport random = maxreg_ratio({"member"}, maxreg_random_family(setup, 12345, 10, 2.0, 5.0));
    const TimeField h = boundary_datum(setup, random_bump_family(12345, 1, setup).front(), 2.0, 5.0);
    const SweepReport dil = maxreg_ratio({"lambda"}, maxreg_dilation_family(setup, h, {1.0, 2.0, 4.0}), 0.1);
    const SweepReport tr = maxreg_ratio({"shift"}, maxreg_translation_family(setup, h, {0, 10, 20}), 1e-6);
    pass = pass && report_ok(random) && report_ok(dil) && report_ok(tr);
    os << to_string(bc) << ": max/min " << fmt("%.3g", random.max_ratio() / random.min_ratio()) << ", dilation spread "
       << fmt("%.1e", dil.max_ratio() / dil.min_ratio() - 1.0) << ", translation spread "
       << fmt("%.1e", tr.max_ratio() / tr.min_ratio() - 1.0) << "; ";
  }
  return {pass, os.str()};
}

// 9. Trace ratios for five separable solutions with u(0) = 0 and their dilation invariance.
Outcome trace() {
  bool pass = true;
  std::ostringstream os;
  const EstimateSetup setup = EstimateSetup::standard(KernelKind::Dirichlet);
  for (bool derivative : {false, true}) {
    const auto family = random_separable_family(777, 5, setup);
    std::vector<EstimateSetup> setups(family.size(), setup);
    std::vector<std::vector<double>> ids;
    for (std::size_t i = 0; i < family.size(); ++i) ids.push_back({static_cast<double>(i)});
    const SweepReport r = trace_check({"member"}, ids, setups, family, derivative);
    bool finite = !r.rows.empty();
    for (const auto& row : r.rows) finite = finite && std::isfinite(row.ratio) && row.ratio > 0.0;

    std::vector<EstimateSetup> dsetups;
    std::vector<SeparableSolution> dfamily;
    std::vector<std::vector<double>> ls;
    for (double l : {1.0, 2.0, 4.0}) {
      dsetups.push_back(setup.dilated(l));
      dfamily.push_back(family.front().dilated(l));
      ls.push_back({l});
    }
    const SweepReport d = trace_check({"lambda"}, ls, dsetups, dfamily, derivative, 0.1);
    pass = pass && finite && report_ok(r) && report_ok(d);
    os << (derivative ? "normal-derivative" : "value") << ": ratios " << fmt("%.3g", r.min_ratio()) << ".."
       << fmt("%.3g", r.max_ratio()) << ", dilation spread " << fmt("%.1e", d.max_ratio() / d.min_ratio() - 1.0)
       << "; ";
  }
  return {pass, os.str()};
}

// 10. Integral bound with N = 2 against pi and the arctan closed form.
Outcome integral_bound() {
  std::vector<double> a;
  for (int i = 0; i <= 80; ++i) a.push_back(0.01 * std::pow(1e4, i / 80.0));
  const SweepReport r = lemma_b_bound(2, a);
  return {report_ok(r) && r.max_ratio() <= M_PI + 0.01, "max ratio " + fmt("%.6f", r.max_ratio()) + slopes_of(r)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double budget;  // seconds; 0 = no limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, 5.0, partition},   {2, 0.0, telescoping}, {3, 30.0, dilation}, {4, 120.0, rescaling},
      {5, 600.0, envelopes}, {6, 0.0, smoothed},    {7, 180.0, solver},  {8, 0.0, maxreg},
      {9, 0.0, trace},       {10, 0.0, integral_bound},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double elapsed = seconds_since(t0);
    if (c.budget > 0.0 && elapsed > c.budget) {
      o.pass = false;
      o.detail += ", over the " + fmt("%.0f", c.budget) + " s budget";
    }
    failures += o.pass ? 0 : 1;
    std::printf("criterion %d: %s  %s (%.1f s)\n", c.id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), elapsed);
    std::fflush(stdout);
  }
  std::printf("acceptance: %d of %zu criteria failed\n", failures, criteria.size());
  return failures;
}
