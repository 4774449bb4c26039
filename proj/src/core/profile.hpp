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

#pragma once

#include <string_view>

namespace besovheat {

// Radial cutoff zeta(r) = S(2 - r) with the C-infinity step
// S(x) = e(x) / (e(x) + e(1 - x)), e(x) = exp(-1/x) for x > 0 and 0 otherwise.
// zeta == 1 on [0, 1], zeta == 0 on [2, inf); phi(r) = zeta(r) - zeta(2r) lives in (1/2, 2).
class DyadicProfile {
 public:
  static constexpr std::string_view kId = "smoothstep-exp-v1";

  std::string_view id() const { return kId; }

  static double smooth_step(double x);
  double zeta(double r) const { return smooth_step(2.0 - r); }
  double phi(double r) const { return zeta(r) - zeta(2.0 * r); }

  // Dyadic dilates: zeta_m(r) = zeta(2^-m r), phi_m(r) = phi(2^-m r).
  double zeta_m(int m, double r) const;
  double phi_m(int m, double r) const;
};

}  // namespace besovheat
