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

#include <gtest/gtest.h>

#include <cmath>

#include "core/error.hpp"
#include "core/solver.hpp"
#include "core/spaces.hpp"

using namespace besovheat;

namespace {

TimeField constant_boundary(const GridSpec& grid, const TimeGrid& time, double value) {
  TimeField h{time, {}};
  for (int i = 0; i < time.points; ++i) {
    Field f = Field::zeros(grid.boundary());
    for (auto& s : f.samples) s = value;
    h.slices.push_back(f);
  }
  return h;
}

// Max relative error against the half-line oracle where |exact| > 1e-3.
double half_line_error(KernelKind bc, const SolutionBundle& s, const TimeGrid& time) {
  double worst = 0.0;
  for (int i = 1; i < time.points; ++i) {
    const double t = time.at(i);
    const HalfField& u = s.u.slices[static_cast<std::size_t>(i)];
    for (int r = 0; r < u.rows(); ++r) {
      const double eta = u.eta(r);
      const double erfc = std::erfc(eta / (2.0 * std::sqrt(t)));
      const double exact =
          bc == KernelKind::Dirichlet ? erfc : -2.0 * std::sqrt(t / M_PI) * std::exp(-eta * eta / (4.0 * t)) + eta * erfc;
      if (std::abs(exact) > 1e-3) worst = std::max(worst, std::abs(u.at(0, r).real() - exact) / std::abs(exact));
    }
  }
  return worst;
}

}  // namespace

// u = erfc(x / 2 sqrt t) solves the half-line problem with u(0) = 0 and u = 1 on x = 0.
TEST(HalfLine, DirichletErfc) {
  IbvpData d;
  d.grid = GridSpec::halfspace(1, 128, 16.0);
  d.time = {1.0, 41};
  d.h = constant_boundary(d.grid, d.time, 1.0);
  EXPECT_LT(half_line_error(KernelKind::Dirichlet, solve_halfspace_heat(d), d.time), 1e-8);
}

// d_n u = 1: u = -2 sqrt(t/pi) e^{-x^2/4t} + x erfc(x / 2 sqrt t).
TEST(HalfLine, NeumannFlux) {
  IbvpData d;
  d.bc = KernelKind::Neumann;
  d.grid = GridSpec::halfspace(1, 128, 16.0);
  d.time = {1.0, 41};
  d.h = constant_boundary(d.grid, d.time, 1.0);
  EXPECT_LT(half_line_error(KernelKind::Neumann, solve_halfspace_heat(d), d.time), 1e-8);
}

TEST(HalfLine, LinearInTheDatum) {
  IbvpData d;
  d.grid = GridSpec::halfspace(1, 64, 16.0);
  d.time = {1.0, 21};
  d.h = constant_boundary(d.grid, d.time, 1.0);
  const SolutionBundle one = solve_halfspace_heat(d);
  d.h = constant_boundary(d.grid, d.time, -3.0);
  const SolutionBundle three = solve_halfspace_heat(d);
  for (std::size_t q = 0; q < one.u.slices.back().samples.size(); ++q)
    EXPECT_NEAR(three.u.slices.back().samples[q].real(), -3.0 * one.u.slices.back().samples[q].real(), 1e-13);
}

TEST(Solver, ZeroDataGiveZeroSolution) {
  for (auto bc : {KernelKind::Dirichlet, KernelKind::Neumann}) {
    IbvpData d;
    d.bc = bc;
    d.grid = GridSpec::halfspace(2, 16, 2 * M_PI);
    d.time = {0.5, 5};
    const SolutionBundle s = solve_halfspace_heat(d);
    ASSERT_EQ(s.u.slices.size(), 5u);
    for (const auto& slice : s.u.slices)
      for (const auto& v : slice.samples) EXPECT_EQ(v, cplx(0.0));
    EXPECT_FALSE(s.residual_flagged);
  }
}

// u = (1 + t) cos x' sin x_n + e^{-t} cos x' erfc(x_n / 2 sqrt t) on the 2 pi torus.
TEST(Solver, ManufacturedTwoDimensional) {
  const int N = 32;
  IbvpData d;
  d.grid = GridSpec::halfspace(2, N, 2 * M_PI);
  d.time = {1.0, N + 1};
  const GridSpec b = d.grid.boundary();
  auto exact = [](double t, double x, double eta) {
    return (1 + t) * std::cos(x) * std::sin(eta) +
           std::exp(-t) * std::cos(x) * (t > 0 ? std::erfc(eta / (2 * std::sqrt(t))) : 0.0);
  };
  d.u0 = HalfField::zeros(d.grid);
  for (std::size_t c = 0; c < d.u0.columns(); ++c)
    for (int r = 0; r < d.u0.rows(); ++r) d.u0.at(c, r) = exact(0, b.coordinate(0, static_cast<int>(c)), d.u0.eta(r));
  d.f.time = d.time;
  d.h.time = d.time;
  for (int i = 0; i < d.time.points; ++i) {
    const double t = d.time.at(i);
    HalfField f = HalfField::zeros(d.grid);
    for (std::size_t c = 0; c < f.columns(); ++c)
      for (int r = 0; r < f.rows(); ++r)
        f.at(c, r) = (3 + 2 * t) * std::cos(b.coordinate(0, static_cast<int>(c))) * std::sin(f.eta(r));
    d.f.slices.push_back(f);
    d.h.slices.push_back(Field::sample(b, [&](const Point& x) { return std::exp(-t) * std::cos(x[0]); }));
  }
  const SolutionBundle s = solve_halfspace_heat(d);
  const HalfField& u = s.u.slices.back();
  double num = 0, den = 0;
  for (std::size_t c = 0; c < u.columns(); ++c)
    for (int r = 0; r < u.rows(); ++r) {
      const double e = exact(1.0, b.coordinate(0, static_cast<int>(c)), u.eta(r));
      num += std::norm(u.at(c, r) - e);
      den += e * e;
    }
  EXPECT_LT(std::sqrt(num / den), 2e-5);
  // The components add up to u.
  for (std::size_t q = 0; q < u.samples.size(); ++q) {
    const cplx sum = s.u1.slices.back().samples[q] + s.u2.slices.back().samples[q] + s.u3.slices.back().samples[q];
    EXPECT_NEAR(std::abs(sum - u.samples[q]), 0.0, 1e-12);
  }
  EXPECT_EQ(s.residual_l2.size(), static_cast<std::size_t>(d.time.points - 2));
}

TEST(Solver, ResidualThresholdFlags) {
  IbvpData d;
  d.grid = GridSpec::halfspace(2, 16, 2 * M_PI);
  d.time = {1.0, 9};
  d.h = constant_boundary(d.grid, d.time, 1.0);
  SolverOptions opts;
  opts.residual_threshold = 1e-30;
  EXPECT_TRUE(solve_halfspace_heat(d, opts).residual_flagged);
}

TEST(Solver, RejectsPeriodicGrid) {
  IbvpData d;
  d.grid = GridSpec::periodic(2, 16, 2 * M_PI);
  d.time = {1.0, 5};
  EXPECT_THROW(solve_halfspace_heat(d), Error);
}

TEST(Solver, RejectsMismatchedBoundaryData) {
  IbvpData d;
  d.grid = GridSpec::halfspace(2, 16, 2 * M_PI);
  d.time = {1.0, 5};
  d.h = constant_boundary(GridSpec::halfspace(2, 32, 2 * M_PI), d.time, 1.0);
  EXPECT_THROW(solve_halfspace_heat(d), Error);
}

TEST(WholeSpace, CosineDecays) {
  const GridSpec g = GridSpec::periodic(2, 16, 2 * M_PI);
  const Field v0 = Field::sample(g, [](const Point& x) { return std::cos(x[0]) * std::cos(2 * x[1]); });
  const TimeGrid time{0.5, 6};
  const SpaceTimeField u = whole_space_heat(v0, SpaceTimeField{}, time);
  ASSERT_EQ(u.slices.size(), 6u);
  for (int i = 0; i < time.points; ++i)
    for (std::size_t q = 0; q < g.size(); ++q)
      EXPECT_NEAR(u.slices[static_cast<std::size_t>(i)].samples[q].real(), std::exp(-5.0 * time.at(i)) * v0.samples[q].real(),
                  1e-13);
}

TEST(Traces, SpectralAndExtrapolated) {
  const GridSpec g = GridSpec::halfspace(2, 64, 2 * M_PI);
  const Field c = Field::sample(g, [](const Point& x) { return std::cos(x[0]) * std::cos(x[1]); });
  const Field s = Field::sample(g, [](const Point& x) { return std::cos(x[0]) * std::sin(x[1]); });
  const Field value = spectral_trace(c, 0);
  const Field flux = spectral_trace(s, 1);
  const GridSpec b = g.boundary();
  for (int i = 0; i < b.points; ++i) {
    EXPECT_NEAR(value.samples[static_cast<std::size_t>(i)].real(), std::cos(b.coordinate(0, i)), 1e-12);
    EXPECT_NEAR(flux.samples[static_cast<std::size_t>(i)].real(), std::cos(b.coordinate(0, i)), 1e-12);
  }
  const Field ev = extrapolated_trace(restrict_half(c));
  const Field ef = extrapolated_flux(restrict_half(s));
  const double h = g.spacing();
  for (int i = 0; i < b.points; ++i) {
    EXPECT_NEAR(ev.samples[static_cast<std::size_t>(i)].real(), std::cos(b.coordinate(0, i)), 2 * h * h);
    EXPECT_NEAR(ef.samples[static_cast<std::size_t>(i)].real(), std::cos(b.coordinate(0, i)), 2 * h * h);
  }
}

TEST(Corrector, GradedGridAndKernelSymmetry) {
  const auto eta = graded_eta_grid(0.01, 2.0);
  ASSERT_GE(eta.size(), 2u);
  EXPECT_DOUBLE_EQ(eta.front(), 0.01);
  for (std::size_t i = 1; i < eta.size(); ++i) EXPECT_NEAR(eta[i] / eta[i - 1], 1.15, 1e-12);
  EXPECT_LE(eta.back(), 2.0);
  // The Dirichlet kernel is positive and its layers decay away from the boundary.
  EXPECT_GT(corrector_kernel(KernelKind::Dirichlet, 0, 0.5, 1.0, 0.2), 0.0);
  EXPECT_GT(corrector_kernel(KernelKind::Dirichlet, 0, 0.5, 1.0, 0.2),
            corrector_kernel(KernelKind::Dirichlet, 0, 0.5, 1.0, 3.0));
}
