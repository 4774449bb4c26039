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

#include <functional>
#include <limits>
#include <optional>
#include <utility>

#include "core/filterbank.hpp"
#include "core/grid.hpp"

namespace besovheat {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct NormParams {
  double s = 0.0;
  double p = 2.0;      // in [1, inf]
  double sigma = 1.0;  // in [1, inf]
  bool homogeneous = true;
  std::optional<std::pair<int, int>> window;  // sub-window of the bank; whole bank if unset
  double leftover_threshold = 1e-6;

  void validate() const;
};

struct TimeNormParams {
  double s = 0.0;
  double p = 1.0;
  double sigma = 1.0;
  std::optional<std::pair<int, int>> window;
  double leftover_threshold = 1e-6;

  void validate() const;
};

struct NormResult {
  double value = 0.0;
  unsigned warnings = 0;
  double low_leftover = 0.0;   // relative size of the leftover low-pass part
  double high_leftover = 0.0;  // relative size of the leftover high-pass part
};

// Torus L^p norm: cell-volume weighted sum, max for p = inf.
double lp_norm(const Field& f, double p);

NormResult besov_norm(const Field& f, const NormParams& params, const FilterBank& bank);
NormResult triebel_norm(const Field& f, const NormParams& params, const FilterBank& bank);

using SpatialNorm = std::function<double(const Field&)>;

// Bank over the zero-padded periodic time line used by bochner_tl_norm:
// `padded_points` samples with the spacing of `time`.
FilterBank make_time_bank(const DyadicProfile& profile, const TimeGrid& time, int padded_points, int kmin, int kmax);

// || ( sum_k 2^{s k sigma} || psi_k *_t h(t) ||_X^sigma )^{1/sigma} ||_{L^p_t}, with h extended by
// zero outside [0, T] and the time integral taken over the whole padded line.
NormResult bochner_tl_norm(const TimeField& h, const TimeNormParams& tparams, const SpatialNorm& spatial_norm,
                           const FilterBank& tbank);

// ( int_0^T ||h(t)||_X^p dt )^{1/p}, trapezoid rule.
double bochner_lebesgue_norm(const TimeField& h, double p, const SpatialNorm& spatial_norm);

bool in_extension_range(double s, double p);
Field extend_zero(const HalfField& f);
HalfField restrict_half(const Field& f);

// besov_norm of the zero extension. Outside -1+1/p < s < 1/p this is only an upper bound
// and requires `allow_out_of_range`; the result then carries kWarnValidityRange.
NormResult halfspace_norm(const HalfField& f, const NormParams& params, const FilterBank& bank,
                          bool allow_out_of_range = false);

}  // namespace besovheat
