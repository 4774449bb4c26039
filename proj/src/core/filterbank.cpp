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

#include "core/filterbank.hpp"

#include <cmath>
#include <sstream>

#include "core/error.hpp"

namespace besovheat {

FilterBank::FilterBank(DyadicProfile profile, int jmin, int jmax, GridSpec grid)
    : profile_(profile), jmin_(jmin), jmax_(jmax), grid_(grid) {
  grid_.validate();
  require(grid_.dim >= 1, ErrorCode::InvalidArgument, "filter bank needs a grid of dimension >= 1");
  require(jmax_ >= jmin_, ErrorCode::InvalidArgument, "filter bank window is empty (jmax < jmin)");
  if (std::ldexp(1.0, jmax_ + 1) > grid_.nyquist() * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "window out of band: 2^(jmax+1) = " << std::ldexp(1.0, jmax_ + 1) << " exceeds the Nyquist frequency "
       << grid_.nyquist() << " of the grid (N=" << grid_.points << ", L=" << grid_.length << ")";
    throw Error(ErrorCode::OutOfBand, os.str());
  }
  if (std::ldexp(1.0, jmin_ + 1) <= grid_.fundamental() * (1.0 - 1e-12) &&
      std::ldexp(1.0, jmax_ + 1) <= grid_.fundamental()) {
    throw Error(ErrorCode::OutOfBand, "window out of band: every block lies below the fundamental frequency");
  }

  const std::size_t n = grid_.size();
  radius_.resize(n);
  radius_prime_.resize(n);
  last_axis_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto idx = grid_.unravel(i);
    double r2 = 0.0;
    double rp2 = 0.0;
    for (int a = 0; a < grid_.dim; ++a) {
      const double k = grid_.wavenumber(idx[a]);
      r2 += k * k;
      if (a + 1 < grid_.dim) rp2 += k * k;
    }
    radius_[i] = std::sqrt(r2);
    radius_prime_[i] = std::sqrt(rp2);
    last_axis_[i] = std::abs(grid_.wavenumber(idx[grid_.dim - 1]));
  }
}

std::size_t FilterBank::modes_below_window() const {
  const double cut = std::ldexp(1.0, jmin_ - 1);
  std::size_t count = 0;
  for (double r : radius_)
    if (r > 0.0 && r <= cut) ++count;
  return count;
}

double FilterBank::split_symbol(int m, double radial_prime, double xi_n) const {
  return profile_.phi_m(m, radial_prime) * profile_.zeta_m(m - 1, xi_n) +
         profile_.zeta_m(m, radial_prime) * profile_.phi_m(m, xi_n);
}

void FilterBank::check_field(const Field& f) const {
  require(f.grid.same_lattice(grid_), ErrorCode::GridMismatch, "field grid does not match the filter bank grid");
}

Field FilterBank::multiply(const Field& hat, const std::function<double(std::size_t)>& m) const {
  Field out = hat;
  for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] *= m(i);
  return to_physical(out);
}

Field FilterBank::lp_block(const Field& f, int j) const {
  check_field(f);
  require(contains(j), ErrorCode::InvalidArgument, "block index outside the filter bank window");
  const Field hat = to_frequency(f);
  return multiply(hat, [&](std::size_t i) { return profile_.phi_m(j, radius_[i]); });
}

std::vector<Field> FilterBank::lp_blocks(const Field& f) const {
  check_field(f);
  const Field hat = to_frequency(f);
  std::vector<Field> out;
  out.reserve(size());
  for (int j = jmin_; j <= jmax_; ++j)
    out.push_back(multiply(hat, [&](std::size_t i) { return profile_.phi_m(j, radius_[i]); }));
  return out;
}

Field FilterBank::low_pass(const Field& f, int m) const {
  check_field(f);
  const Field hat = to_frequency(f);
  return multiply(hat, [&](std::size_t i) { return profile_.zeta_m(m, radius_[i]); });
}

Field FilterBank::high_leftover(const Field& f) const {
  check_field(f);
  const Field hat = to_frequency(f);
  return multiply(hat, [&](std::size_t i) { return 1.0 - profile_.zeta_m(jmax_, radius_[i]); });
}

Field FilterBank::low_leftover(const Field& f, bool drop_mean) const {
  check_field(f);
  const Field hat = to_frequency(f);
  return multiply(hat, [&](std::size_t i) {
    if (drop_mean && radius_[i] == 0.0) return 0.0;
    return profile_.zeta_m(jmin_ - 1, radius_[i]);
  });
}

Field FilterBank::split_block(const Field& f, int m) const {
  check_field(f);
  require(grid_.dim >= 2, ErrorCode::InvalidArgument, "separated-variable blocks need dimension >= 2");
  const Field hat = to_frequency(f);
  return multiply(hat, [&](std::size_t i) { return split_symbol(m, radius_prime_[i], last_axis_[i]); });
}

double partition_residual(const FilterBank& bank, std::span<const double> radii) {
  double worst = 0.0;
  for (double r : radii) {
    double sum = 0.0;
    for (int j = bank.jmin(); j <= bank.jmax(); ++j) sum += bank.profile().phi_m(j, r);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

namespace {

std::vector<double> log_spaced(double lo, double hi, int samples) {
  std::vector<double> r(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double u = samples == 1 ? 0.0 : static_cast<double>(i) / (samples - 1);
    r[i] = lo * std::pow(hi / lo, u);
  }
  r.front() = lo;
  r.back() = hi;
  return r;
}

}  // namespace

double partition_residual(const FilterBank& bank, int samples) {
  require(samples >= 100, ErrorCode::InvalidArgument, "partition_residual needs at least 100 samples");
  const auto radii = log_spaced(std::ldexp(1.0, bank.jmin()), std::ldexp(1.0, bank.jmax()), samples);
  return partition_residual(bank, radii);
}

double split_partition_residual(const FilterBank& bank, int samples) {
  require(samples >= 100, ErrorCode::InvalidArgument, "split_partition_residual needs at least 100 samples");
  const double lo = std::ldexp(1.0, bank.jmin());
  const double hi = std::ldexp(1.0, bank.jmax());
  const auto radii = log_spaced(lo, hi, samples);
  const int angles = 33;
  double worst = 0.0;
  for (double r : radii) {
    for (int a = 0; a < angles; ++a) {
      // (|xi'|, |xi_n|) on the boundary of the square max(.,.) = r, both edges.
      const double u = static_cast<double>(a) / (angles - 1);
      const double pts[2][2] = {{r, u * r}, {u * r, r}};
      for (const auto& p : pts) {
        double sum = 0.0;
        for (int m = bank.jmin(); m <= bank.jmax(); ++m) sum += bank.split_symbol(m, p[0], p[1]);
        worst = std::max(worst, std::abs(sum - 1.0));
      }
    }
  }
  return worst;
}

double telescoping_residual(const FilterBank& bank, int samples) {
  const auto radii = log_spaced(std::ldexp(1.0, bank.jmin() - 2), std::ldexp(1.0, bank.jmax() + 2), samples);
  const auto& p = bank.profile();
  double worst = 0.0;
  for (int m = bank.jmin(); m <= bank.jmax(); ++m)
    for (double r : radii) worst = std::max(worst, std::abs(p.zeta_m(m - 1, r) + p.phi_m(m, r) - p.zeta_m(m, r)));
  return worst;
}

}  // namespace besovheat
