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
#include "core/profile.hpp"

using namespace besovheat;

TEST(Profile, CutoffValues) {
  const DyadicProfile p;
  EXPECT_EQ(p.zeta(0.0), 1.0);
  EXPECT_EQ(p.zeta(1.0), 1.0);
  EXPECT_EQ(p.zeta(2.0), 0.0);
  EXPECT_EQ(p.zeta(3.0), 0.0);
  // S(1/2) = 1/2 by the symmetry e(x) / (e(x) + e(1 - x)).
  EXPECT_NEAR(p.zeta(1.5), 0.5, 1e-15);
  EXPECT_EQ(p.phi(0.4), 0.0);
  EXPECT_EQ(p.phi(1.0), 1.0);
  EXPECT_EQ(p.phi(2.1), 0.0);
  EXPECT_EQ(p.id(), "smoothstep-exp-v1");
}

TEST(Profile, SmoothStepIsAPartition) {
  for (double x = -0.5; x <= 1.5; x += 0.01)
    EXPECT_NEAR(DyadicProfile::smooth_step(x) + DyadicProfile::smooth_step(1.0 - x), 1.0, 1e-15) << x;
}

TEST(Profile, DyadicDilates) {
  const DyadicProfile p;
  for (int m = -3; m <= 3; ++m)
    for (double r : {0.3, 0.9, 1.7, 2.5}) {
      EXPECT_DOUBLE_EQ(p.phi_m(m, r), p.phi(std::ldexp(r, -m)));
      EXPECT_NEAR(p.zeta_m(m - 1, r) + p.phi_m(m, r), p.zeta_m(m, r), 1e-15);
    }
}

TEST(FilterBank, PartitionAndTelescoping) {
  const FilterBank bank(DyadicProfile{}, -3, 5, GridSpec::periodic(2, 256, 2 * M_PI));
  EXPECT_LT(partition_residual(bank, 1000), 1e-12);
  EXPECT_LT(split_partition_residual(bank, 400), 1e-12);
  EXPECT_LT(telescoping_residual(bank, 1000), 1e-15);
}

TEST(FilterBank, SplitPartitionInThreeDimensions) {
  const FilterBank bank(DyadicProfile{}, -1, 3, GridSpec::halfspace(3, 32, 2 * M_PI));
  EXPECT_LT(split_partition_residual(bank, 200), 1e-12);
}

TEST(FilterBank, WindowAboveNyquistIsRejected) {
  // Nyquist of N = 64 on 2 pi is 32, so 2^(jmax + 1) = 64 is out of band.
  try {
    FilterBank bank(DyadicProfile{}, 0, 5, GridSpec::periodic(1, 64, 2 * M_PI));
    FAIL() << "expected OutOfBand";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfBand);
    EXPECT_NE(std::string(e.what()).find("Nyquist"), std::string::npos);
  }
  EXPECT_NO_THROW(FilterBank(DyadicProfile{}, 0, 4, GridSpec::periodic(1, 64, 2 * M_PI)));
}

TEST(FilterBank, WindowBelowFundamentalIsRejected) {
  EXPECT_THROW(FilterBank(DyadicProfile{}, -8, -4, GridSpec::periodic(1, 64, 2 * M_PI)), Error);
}

TEST(FilterBank, ModesBelowWindow) {
  // Fundamental 1/8: radii 1/8 .. 4/8 (both signs) reach no block, phi_0 vanishing at 1/2.
  const FilterBank bank(DyadicProfile{}, 0, 2, GridSpec::periodic(1, 256, 16 * M_PI));
  EXPECT_EQ(bank.modes_below_window(), 8u);
  const FilterBank tight(DyadicProfile{}, 0, 3, GridSpec::periodic(1, 64, 2 * M_PI));
  EXPECT_EQ(tight.modes_below_window(), 0u);
}

TEST(FilterBank, BlocksOfAPureCosine) {
  // |xi| = 3 sits where phi_1 = phi(3/2) = 1/2 and phi_2 = phi(3/4) = 1/2.
  const GridSpec grid = GridSpec::periodic(1, 64, 2 * M_PI);
  const FilterBank bank(DyadicProfile{}, -1, 4, grid);
  const Field f = Field::sample(grid, [](const Point& x) { return std::cos(3.0 * x[0]); });
  const auto blocks = bank.lp_blocks(f);
  ASSERT_EQ(blocks.size(), 6u);
  for (int j = -1; j <= 4; ++j) {
    const double expected = (j == 1 || j == 2) ? 0.5 : 0.0;
    const auto& b = blocks[static_cast<std::size_t>(j + 1)];
    for (std::size_t i = 0; i < grid.size(); ++i)
      EXPECT_NEAR(b.samples[i].real(), expected * f.samples[i].real(), 1e-13) << "j=" << j << " i=" << i;
  }
}

TEST(FilterBank, BlocksAndLeftoversReconstruct) {
  const GridSpec grid = GridSpec::periodic(2, 64, 2 * M_PI);
  const FilterBank bank(DyadicProfile{}, 0, 3, grid);
  const Field f = Field::sample(grid, [](const Point& x) {
    return 0.3 + std::exp(std::sin(x[0]) + 0.5 * std::cos(2.0 * x[1])) * std::cos(7.0 * x[0] + x[1]);
  });
  Field sum = bank.low_leftover(f, false) + bank.high_leftover(f);
  for (const auto& b : bank.lp_blocks(f)) sum += b;
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(std::abs(sum.samples[i] - f.samples[i]), 0.0, 1e-12);
}

TEST(FilterBank, LowPassTelescopes) {
  const GridSpec grid = GridSpec::periodic(1, 128, 2 * M_PI);
  const FilterBank bank(DyadicProfile{}, 0, 4, grid);
  const Field f = Field::sample(grid, [](const Point& x) { return std::exp(std::cos(x[0])); });
  const Field lhs = bank.low_pass(f, 2);
  const Field rhs = bank.low_pass(f, 1) + bank.lp_block(f, 2);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(std::abs(lhs.samples[i] - rhs.samples[i]), 0.0, 1e-13);
}

TEST(FilterBank, GridMismatchIsRejected) {
  const FilterBank bank(DyadicProfile{}, 0, 3, GridSpec::periodic(1, 64, 2 * M_PI));
  const Field other = Field::zeros(GridSpec::periodic(1, 32, 2 * M_PI));
  EXPECT_THROW(bank.lp_block(other, 0), Error);
}
