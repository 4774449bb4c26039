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

#include <span>
#include <vector>

#include "core/grid.hpp"
#include "core/profile.hpp"

namespace besovheat {

// Littlewood-Paley blocks phi_j, j in [jmin, jmax], on the frequency lattice of a torus.
// Immutable after construction; all member functions are const and thread-safe.
class FilterBank {
 public:
  FilterBank(DyadicProfile profile, int jmin, int jmax, GridSpec grid);

  const DyadicProfile& profile() const { return profile_; }
  const GridSpec& grid() const { return grid_; }
  int jmin() const { return jmin_; }
  int jmax() const { return jmax_; }
  int size() const { return jmax_ - jmin_ + 1; }
  bool contains(int j) const { return j >= jmin_ && j <= jmax_; }
  // Number of nonzero lattice radii at or below 2^(jmin-1), where every block of the window vanishes.
  std::size_t modes_below_window() const;

  // Separated-variable block: phi_m(|xi'|) zeta_{m-1}(xi_n) + zeta_m(|xi'|) phi_m(xi_n).
  double split_symbol(int m, double radial_prime, double xi_n) const;

  Field lp_block(const Field& f, int j) const;
  std::vector<Field> lp_blocks(const Field& f) const;
  Field low_pass(const Field& f, int m) const;
  // 1 - zeta_jmax: everything above the window.
  Field high_leftover(const Field& f) const;
  // zeta_{jmin-1} applied to f with its mean (the zero mode) removed.
  Field low_leftover(const Field& f, bool drop_mean) const;
  Field split_block(const Field& f, int m) const;

 private:
  void check_field(const Field& f) const;
  Field multiply(const Field& hat, const std::function<double(std::size_t)>& m) const;

  DyadicProfile profile_;
  int jmin_;
  int jmax_;
  GridSpec grid_;
  std::vector<double> radius_;        // |xi| per lattice index
  std::vector<double> radius_prime_;  // |xi'| per lattice index
  std::vector<double> last_axis_;     // |xi_n| per lattice index
};

inline FilterBank make_filter_bank(const DyadicProfile& profile, int jmin, int jmax, const GridSpec& grid) {
  return FilterBank(profile, jmin, jmax, grid);
}

// max over `radii` of |sum_j phi_j(r) - 1|.
double partition_residual(const FilterBank& bank, std::span<const double> radii);
// Same over `samples` log-spaced radii in [2^jmin, 2^jmax].
double partition_residual(const FilterBank& bank, int samples);
// max |sum_m split_symbol(m, .) - 1| over a log-polar sample of the region
// 2^jmin <= max(|xi'|, |xi_n|) <= 2^jmax.
double split_partition_residual(const FilterBank& bank, int samples);
// max over window and radii of |zeta_{m-1} + phi_m - zeta_m|.
double telescoping_residual(const FilterBank& bank, int samples);

}  // namespace besovheat
