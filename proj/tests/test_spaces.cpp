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
#include "core/filterbank.hpp"
#include "core/spaces.hpp"

using namespace besovheat;

namespace {

const GridSpec kLine = GridSpec::periodic(1, 64, 2 * M_PI);

Field cosine(const GridSpec& g, double k) {
  return Field::sample(g, [k](const Point& x) { return std::cos(k * x[0]); });
}

NormParams params(double s, double p, double sigma = 1.0) {
  NormParams np;
  np.s = s;
  np.p = p;
  np.sigma = sigma;
  return np;
}

}  // namespace

TEST(Lebesgue, TorusNorms) {
  const Field one = Field::sample(kLine, [](const Point&) { return 1.0; });
  EXPECT_NEAR(lp_norm(one, 2.0), std::sqrt(2 * M_PI), 1e-13);
  EXPECT_NEAR(lp_norm(one, 1.0), 2 * M_PI, 1e-13);
  EXPECT_NEAR(lp_norm(one, kInfinity), 1.0, 1e-15);
  // ||cos||_2^2 = pi on [0, 2 pi).
  EXPECT_NEAR(lp_norm(cosine(kLine, 1.0), 2.0), std::sqrt(M_PI), 1e-13);
}

// Single-frequency oracles: cos(k x) meets phi_j only where phi(2^-j k) != 0.
TEST(Besov, PureCosineClosedForms) {
  const FilterBank bank(DyadicProfile{}, -2, 4, kLine);
  EXPECT_NEAR(besov_norm(cosine(kLine, 1.0), params(0, 2), bank).value, std::sqrt(M_PI), 1e-12);
  EXPECT_NEAR(besov_norm(cosine(kLine, 2.0), params(1, 2), bank).value, 2.0 * std::sqrt(M_PI), 1e-12);
  // |xi| = 3: phi_1 = phi_2 = 1/2.
  EXPECT_NEAR(besov_norm(cosine(kLine, 3.0), params(0, 2, 1), bank).value, std::sqrt(M_PI), 1e-12);
  EXPECT_NEAR(besov_norm(cosine(kLine, 3.0), params(0, 2, 2), bank).value, std::sqrt(M_PI / 2), 1e-12);
  EXPECT_NEAR(besov_norm(cosine(kLine, 3.0), params(0, 2, kInfinity), bank).value, 0.5 * std::sqrt(M_PI), 1e-12);
  // s = 1: 2 * (1/2) sqrt(pi) + 4 * (1/2) sqrt(pi).
  EXPECT_NEAR(besov_norm(cosine(kLine, 3.0), params(1, 2, 1), bank).value, 3.0 * std::sqrt(M_PI), 1e-12);
}

TEST(Triebel, AgreesWithBesovOnOneBlock) {
  const FilterBank bank(DyadicProfile{}, -2, 4, kLine);
  for (double p : {1.0, 2.0, 4.0}) {
    const Field f = cosine(kLine, 4.0);
    EXPECT_NEAR(triebel_norm(f, params(0.5, p), bank).value, besov_norm(f, params(0.5, p), bank).value, 1e-12);
  }
}

TEST(Triebel, PointwiseSumForTwoBlocks) {
  // cos 3x: F^0_{2,1} = ||(1/2)|cos| + (1/2)|cos| ||_2 = sqrt(pi); F^0_{2,2} = ||cos|| / sqrt 2.
  const FilterBank bank(DyadicProfile{}, -2, 4, kLine);
  const Field f = cosine(kLine, 3.0);
  EXPECT_NEAR(triebel_norm(f, params(0, 2, 1), bank).value, std::sqrt(M_PI), 1e-12);
  EXPECT_NEAR(triebel_norm(f, params(0, 2, 2), bank).value, std::sqrt(M_PI / 2), 1e-12);
}

TEST(Besov, TensorProductFactorizes) {
  // With p = sigma = 2 and s = 0 the norm is sum_j ||phi_j f||_2^2; for cos x cos y both
  // radii equal sqrt 2 and only phi_0, phi_1 contribute.
  const GridSpec plane = GridSpec::periodic(2, 64, 2 * M_PI);
  const FilterBank bank(DyadicProfile{}, -2, 4, plane);
  const Field f = Field::sample(plane, [](const Point& x) { return std::cos(x[0]) * std::cos(x[1]); });
  const DyadicProfile prof;
  const double a = prof.phi(std::sqrt(2.0)), b = prof.phi(std::sqrt(2.0) / 2.0);
  EXPECT_NEAR(besov_norm(f, params(0, 2, 2), bank).value, M_PI * std::sqrt(a * a + b * b), 1e-12);
}

TEST(Besov, HomogeneousInAmplitude) {
  const FilterBank bank(DyadicProfile{}, -2, 4, kLine);
  const Field f = Field::sample(kLine, [](const Point& x) { return std::exp(std::sin(x[0])) - 1.0; });
  const double base = besov_norm(f, params(-0.3, 3.0, 2.0), bank).value;
  EXPECT_NEAR(besov_norm(-2.5 * f, params(-0.3, 3.0, 2.0), bank).value, 2.5 * base, 1e-12 * base);
}

TEST(Besov, HighLeftoverIsFlagged) {
  const FilterBank bank(DyadicProfile{}, -2, 2, kLine);
  const NormResult r = besov_norm(cosine(kLine, 12.0), params(0, 2), bank);
  EXPECT_TRUE(r.warnings & kWarnHighLeftover);
  EXPECT_GT(r.high_leftover, 0.5);
}

TEST(Besov, InvalidExponentsAreRejected) {
  const FilterBank bank(DyadicProfile{}, -2, 4, kLine);
  EXPECT_THROW(besov_norm(cosine(kLine, 1.0), params(0, 0.5), bank), Error);
  EXPECT_THROW(besov_norm(cosine(kLine, 1.0), params(0, 2, 0.9), bank), Error);
}

TEST(HalfSpace, ExtensionRange) {
  EXPECT_TRUE(in_extension_range(0.0, 2.0));
  EXPECT_TRUE(in_extension_range(-0.4, 2.0));
  EXPECT_FALSE(in_extension_range(0.5, 2.0));
  EXPECT_FALSE(in_extension_range(-0.5, 2.0));
  EXPECT_TRUE(in_extension_range(0.9, 1.0 / 0.95));
}

TEST(HalfSpace, RestrictionInvertsZeroExtension) {
  const GridSpec g = GridSpec::halfspace(2, 32, 8.0);
  const Field f = Field::sample(g, [](const Point& x) { return std::sin(x[0]) + x[1]; });
  const HalfField h = restrict_half(f);
  ASSERT_EQ(h.rows(), 16);
  const Field e = extend_zero(h);
  for (std::size_t q = 0; q < g.size(); ++q) {
    const Point x = g.position(q);
    if (x[1] < 0.0) EXPECT_EQ(e.samples[q], cplx(0.0));
    else EXPECT_EQ(e.samples[q], f.samples[q]);
  }
  const HalfField back = restrict_half(e);
  EXPECT_EQ(back.samples, h.samples);
}

TEST(HalfSpace, OutOfRangeNeedsPermission) {
  const GridSpec g = GridSpec::halfspace(2, 32, 8.0);
  const FilterBank bank(DyadicProfile{}, -1, 2, g);
  const HalfField h = restrict_half(Field::sample(g, [](const Point& x) { return std::cos(x[0]); }));
  try {
    halfspace_norm(h, params(0.75, 2), bank);
    FAIL() << "expected a Domain error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Domain);
  }
  const NormResult r = halfspace_norm(h, params(0.75, 2), bank, true);
  EXPECT_TRUE(r.warnings & kWarnValidityRange);
  EXPECT_GT(r.value, 0.0);
}

TEST(Bochner, LebesgueOfConstantSeries) {
  const FilterBank bank(DyadicProfile{}, -2, 4, kLine);
  const TimeGrid time{2.0, 21};
  TimeField h{time, std::vector<Field>(21, cosine(kLine, 1.0))};
  const SpatialNorm x = [&](const Field& f) { return besov_norm(f, params(0, 2), bank).value; };
  EXPECT_NEAR(bochner_lebesgue_norm(h, 1.0, x), 2.0 * std::sqrt(M_PI), 1e-12);
  EXPECT_NEAR(bochner_lebesgue_norm(h, 2.0, x), std::sqrt(2.0 * M_PI), 1e-12);
}

TEST(Bochner, TriebelInTimeScalesWithAmplitude) {
  const FilterBank bank(DyadicProfile{}, -2, 4, kLine);
  const TimeGrid time{8.0, 129};
  const FilterBank tbank = make_time_bank(DyadicProfile{}, time, 512, -3, 3);
  TimeField h{time, {}};
  for (int i = 0; i < time.points; ++i) {
    const double u = (time.at(i) - 4.0) / 1.0;
    h.slices.push_back(std::exp(-u * u) * (1.0 - 2.0 * u * u) * cosine(kLine, 1.0));
  }
  const SpatialNorm x = [&](const Field& f) { return besov_norm(f, params(0, 2), bank).value; };
  TimeNormParams tp;
  tp.s = 0.5;
  const double a = bochner_tl_norm(h, tp, x, tbank).value;
  TimeField h3 = h;
  for (auto& s : h3.slices) s *= 3.0;
  EXPECT_GT(a, 0.0);
  EXPECT_NEAR(bochner_tl_norm(h3, tp, x, tbank).value, 3.0 * a, 1e-12 * a);
}

TEST(Bochner, TimeBankNeedsPadding) {
  EXPECT_THROW(make_time_bank(DyadicProfile{}, TimeGrid{1.0, 65}, 32, -2, 2), Error);
}
