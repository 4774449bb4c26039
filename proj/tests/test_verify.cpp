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
#include "core/verify.hpp"

using namespace besovheat;

TEST(IntegralBound, ClosedForms) {
  for (double a : {0.01, 0.5, 3.0, 50.0}) {
    EXPECT_NEAR(lemma_b_integral(2, a), 2.0 * std::atan(a), 1e-12 * std::max(1.0, a));
    EXPECT_NEAR(lemma_b_integral(3, a), 2.0 * a / std::sqrt(1.0 + a * a), 1e-12);
    EXPECT_NEAR(lemma_b_integral(4, a), a / (1.0 + a * a) + std::atan(a), 1e-12);
    EXPECT_DOUBLE_EQ(lemma_b_closed_form(2, a), 2.0 * std::atan(a));
  }
  EXPECT_TRUE(std::isnan(lemma_b_closed_form(5, 1.0)));
}

TEST(IntegralBound, SweepStaysBelowPi) {
  const SweepReport r = lemma_b_bound(2, {0.01, 0.1, 1.0, 10.0, 100.0});
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.rows.size(), 5u);
  EXPECT_LE(r.max_ratio(), M_PI + 0.01);
  // a / sqrt(1 + a^2) -> 1 and 2 atan a -> pi.
  EXPECT_GT(r.max_ratio(), 3.0);
}

TEST(Bumps, DerivativesMatchFiniteDifferences) {
  const double h = 1e-5;
  for (double u : {-0.7, -0.1, 0.3, 0.8}) {
    EXPECT_NEAR(smooth_bump_derivative(u, 0), smooth_bump(u), 1e-15);
    EXPECT_NEAR(smooth_bump_derivative(u, 1), (smooth_bump(u + h) - smooth_bump(u - h)) / (2 * h), 1e-6);
    EXPECT_NEAR(smooth_bump_derivative(u, 2),
                (smooth_bump_derivative(u + h, 1) - smooth_bump_derivative(u - h, 1)) / (2 * h), 1e-5);
  }
  EXPECT_EQ(smooth_bump(1.0), 0.0);
  EXPECT_EQ(smooth_bump(-1.5), 0.0);
}

TEST(Separable, DerivativesMatchFiniteDifferences) {
  const SeparableSolution u;
  const double h = 1e-5;
  for (double x : {1.7, 2.6, 3.1}) {
    EXPECT_NEAR(u.a(x, 1), (u.a(x + h) - u.a(x - h)) / (2 * h), 1e-6);
    EXPECT_NEAR(u.a(x, 2), (u.a(x + h, 1) - u.a(x - h, 1)) / (2 * h), 1e-5);
  }
  for (double x : {7.0, 8.3, 9.5}) {
    EXPECT_NEAR(u.b(x, 1), (u.b(x + h) - u.b(x - h)) / (2 * h), 1e-6);
    EXPECT_NEAR(u.b(x, 2), (u.b(x + h, 1) - u.b(x - h, 1)) / (2 * h), 1e-5);
  }
  for (double e : {0.2, 0.9, 1.6}) {
    EXPECT_NEAR(u.c(e, 1), (u.c(e + h) - u.c(e - h)) / (2 * h), 1e-6);
    EXPECT_NEAR(u.c(e, 2), (u.c(e + h, 1) - u.c(e - h, 1)) / (2 * h), 1e-5);
  }
}

TEST(Separable, DilationComposesWithScaling) {
  const SeparableSolution u;
  const SeparableSolution v = u.dilated(2.0);
  EXPECT_NEAR(v.a(0.3), u.a(4.0 * 0.3), 1e-14);
  EXPECT_NEAR(v.c(0.2), u.c(2.0 * 0.2), 1e-14);
}

TEST(Separable, RandomFamilyIsSeededAndVanishesAtZero) {
  const EstimateSetup setup = EstimateSetup::standard(KernelKind::Dirichlet);
  const auto a = random_separable_family(9, 4, setup);
  const auto b = random_separable_family(9, 4, setup);
  const auto c = random_separable_family(10, 4, setup);
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].t_center, b[i].t_center);
    EXPECT_EQ(a[i].x_center, b[i].x_center);
    EXPECT_EQ(a[i].a(0.0), 0.0);
  }
  EXPECT_NE(a[0].t_center, c[0].t_center);
}

TEST(Trace, RejectsNonzeroInitialValue) {
  EstimateSetup setup = EstimateSetup::standard(KernelKind::Dirichlet);
  SeparableSolution u;
  u.t_center = 0.2;
  try {
    trace_sides(setup, u, false);
    FAIL() << "expected a precondition failure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Precondition);
  }
}

TEST(EstimateSetup, Exponents) {
  EstimateSetup d = EstimateSetup::standard(KernelKind::Dirichlet);
  EstimateSetup n = EstimateSetup::standard(KernelKind::Neumann);
  EXPECT_DOUBLE_EQ(d.time_exponent(), 0.75);
  EXPECT_DOUBLE_EQ(d.space_exponent(), 1.5);
  EXPECT_DOUBLE_EQ(n.time_exponent(), 0.25);
  EXPECT_DOUBLE_EQ(n.space_exponent(), 0.5);
  d.p = 1.0;
  EXPECT_DOUBLE_EQ(d.time_exponent(), 0.5);
  EXPECT_DOUBLE_EQ(d.space_exponent(), 1.0);
}

TEST(EstimateSetup, DilationShiftsWindows) {
  const EstimateSetup s = EstimateSetup::standard(KernelKind::Dirichlet);
  const EstimateSetup d = s.dilated(4.0);
  EXPECT_DOUBLE_EQ(d.grid.length, s.grid.length / 4.0);
  EXPECT_DOUBLE_EQ(d.time.horizon, s.time.horizon / 16.0);
  EXPECT_EQ(d.jmin, s.jmin + 2);
  EXPECT_EQ(d.jmax, s.jmax + 2);
  EXPECT_EQ(d.kmin, s.kmin + 4);
  EXPECT_EQ(d.kmax, s.kmax + 4);
  EXPECT_THROW(s.dilated(3.0), Error);
}

TEST(EstimateSetup, RejectsSmoothnessOutsideRange) {
  EstimateSetup s = EstimateSetup::standard(KernelKind::Dirichlet);
  s.s = 0.25;
  EXPECT_THROW(s.validate(), Error);
  s.s = -0.5;
  EXPECT_THROW(s.validate(), Error);
  s.s = -0.25;
  EXPECT_NO_THROW(s.validate());
}

TEST(BoundaryData, TranslationShiftsSlices) {
  const EstimateSetup s = EstimateSetup::standard(KernelKind::Dirichlet);
  const TimeField h = boundary_datum(s, random_bump_family(3, 1, s).front(), 2.0, 5.0);
  const TimeField g = translate_in_time(h, 5);
  ASSERT_EQ(g.slices.size(), h.slices.size());
  for (std::size_t q = 0; q < h.slices[0].samples.size(); ++q) {
    EXPECT_EQ(g.slices[0].samples[q], cplx(0.0));
    EXPECT_EQ(g.slices[20].samples[q], h.slices[15].samples[q]);
  }
}

TEST(Maxreg, TranslationInvariance) {
  const EstimateSetup s = EstimateSetup::standard(KernelKind::Dirichlet);
  const TimeField h = boundary_datum(s, random_bump_family(5, 1, s).front(), 2.0, 5.0);
  const SweepReport r = maxreg_ratio({"shift"}, maxreg_translation_family(s, h, {0, 12}), 1e-6);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(r.any_failed());
  EXPECT_LT(r.max_ratio() / r.min_ratio() - 1.0, 1e-6);
  const MaxregSides sides = maxreg_sides(s, h);
  EXPECT_GT(sides.dt_norm, 0.0);
  EXPECT_GT(sides.hessian_norm, 0.0);
  EXPECT_NEAR(sides.lhs(), sides.dt_norm + sides.hessian_norm, 0.0);
}

TEST(Scaling, LebesgueExponentDirichlet) {
  const ScalingSetup s;
  const SweepReport r = scaling_exponents(s, default_scaling_datum(s), {1.0, 2.0, 4.0});
  EXPECT_TRUE(r.pass);
  ASSERT_FALSE(r.slopes.empty());
  EXPECT_NEAR(r.slopes.front().value, s.s - 2.0 / s.p, 0.05);
}

TEST(Scaling, NeedsTwoDyadicFactors) {
  const ScalingSetup s;
  EXPECT_THROW(scaling_exponents(s, default_scaling_datum(s), {2.0}), Error);
  EXPECT_THROW(scaling_exponents(s, default_scaling_datum(s), {1.0, 3.0}), Error);
}

TEST(Ortho, NeumannOverDirichletSlope) {
  const SweepReport r = neumann_dirichlet_scaling(2, {4, 6, 8}, 0, 0.1);
  EXPECT_TRUE(r.pass);
  ASSERT_EQ(r.slopes.size(), 1u);
  EXPECT_NEAR(r.slopes[0].value, -0.5, 0.1);
}

TEST(Ortho, RowsCarryRegimes) {
  OrthoSweepSpec spec;
  spec.ks = {2, 4};
  spec.js = {2};
  spec.t_units = {0.0};
  spec.eta_levels = {1, 2};
  const SweepReport r = ortho_sweep(spec);
  ASSERT_EQ(r.rows.size(), 4u);
  int time = 0, space = 0;
  for (const auto& row : r.rows) {
    EXPECT_GT(row.measured, 0.0);
    time += row.regime == "time";
    space += row.regime == "space";
  }
  EXPECT_EQ(time, 2);   // k = 4 >= 2j
  EXPECT_EQ(space, 2);  // k = 2 < 2j
}
