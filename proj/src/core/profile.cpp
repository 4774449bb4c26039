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

#include "core/profile.hpp"

#include <cmath>

namespace besovheat {
namespace {

double edge(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double DyadicProfile::smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = edge(x);
  const double b = edge(1.0 - x);
  return a / (a + b);
}

double DyadicProfile::zeta_m(int m, double r) const { return zeta(std::ldexp(std::abs(r), -m)); }

// Written as the difference of the two dilated cutoffs so that
// zeta_{m-1} + phi_m == zeta_m holds up to a single rounding.
double DyadicProfile::phi_m(int m, double r) const { return zeta_m(m, r) - zeta_m(m - 1, r); }

}  // namespace besovheat
