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

#include "core/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "core/error.hpp"
#include "core/fft.hpp"

namespace besovheat {

GridSpec GridSpec::periodic(int dim, int points, double length) {
  GridSpec g;
  g.dim = dim;
  g.points = points;
  g.length = length;
  g.validate();
  return g;
}

GridSpec GridSpec::halfspace(int dim, int points, double length) {
  GridSpec g = periodic(dim, points, length);
  require(dim >= 1, ErrorCode::InvalidArgument, "halfspace grid needs dim >= 1");
  g.origin[dim - 1] = -0.5 * length + 0.5 * g.spacing();
  return g;
}

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(points);
  return n;
}

double GridSpec::cell_volume() const { return std::pow(spacing(), dim); }
double GridSpec::fundamental() const { return 2.0 * std::numbers::pi / length; }
double GridSpec::nyquist() const { return std::numbers::pi * points / length; }

double GridSpec::wavenumber(int k) const {
  const int signed_k = k < points / 2 ? k : k - points;
  return fundamental() * signed_k;
}

std::array<int, 3> GridSpec::unravel(std::size_t flat) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = dim - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % points);
    flat /= points;
  }
  return idx;
}

Point GridSpec::position(std::size_t flat) const {
  const auto idx = unravel(flat);
  Point x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) x[a] = coordinate(a, idx[a]);
  return x;
}

GridSpec GridSpec::boundary() const {
  require(dim >= 1, ErrorCode::InvalidArgument, "boundary of a zero-dimensional grid");
  GridSpec b = *this;
  b.dim = dim - 1;
  b.origin = {0.0, 0.0, 0.0};
  for (int a = 0; a + 1 < dim; ++a) b.origin[a] = origin[a];
  return b;
}

GridSpec GridSpec::scaled(double factor) const {
  GridSpec g = *this;
  g.length *= factor;
  for (auto& o : g.origin) o *= factor;
  return g;
}

void GridSpec::validate() const {
  require(dim >= 0 && dim <= 3, ErrorCode::InvalidArgument, "grid dimension must be in {0,1,2,3}");
  require(length > 0.0 && std::isfinite(length), ErrorCode::InvalidArgument, "grid length must be positive");
  if (dim == 0) return;
  const bool pow2 = points >= 16 && (points & (points - 1)) == 0;
  std::ostringstream os;
  os << "grid points per axis must be a power of two >= 16 (got " << points << ")";
  require(pow2, ErrorCode::InvalidArgument, os.str());
}

bool GridSpec::same_lattice(const GridSpec& o) const {
  if (dim != o.dim || (dim > 0 && points != o.points)) return false;
  if (dim == 0) return true;
  return std::abs(length - o.length) <= 1e-12 * length;
}

void TimeGrid::validate() const {
  require(points >= 2, ErrorCode::InvalidArgument, "time grid needs at least two points");
  require(horizon > 0.0 && std::isfinite(horizon), ErrorCode::InvalidArgument, "time horizon must be positive");
}

Field Field::zeros(const GridSpec& grid) {
  grid.validate();
  return Field{grid, std::vector<cplx>(grid.size()), Domain::Physical};
}

Field Field::sample(const GridSpec& grid, const std::function<double(const Point&)>& fn) {
  Field f = zeros(grid);
  for (std::size_t i = 0; i < f.samples.size(); ++i) f.samples[i] = fn(grid.position(i));
  return f;
}

void require_same_grid(const Field& a, const Field& b) {
  require(a.grid.same_lattice(b.grid) && a.domain == b.domain, ErrorCode::GridMismatch,
          "fields live on different grids or domains");
}

Field& Field::operator+=(const Field& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] += o.samples[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] -= o.samples[i];
  return *this;
}

Field& Field::operator*=(double a) {
  for (auto& v : samples) v *= a;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double a, Field f) { return f *= a; }

Field to_frequency(const Field& f) {
  if (f.domain == Domain::Frequency) return f;
  Field out = f;
  const auto dims = f.grid.dims();
  fft::transform(out.samples, dims, fft::Direction::Forward);
  out.domain = Domain::Frequency;
  return out;
}

Field to_physical(const Field& f) {
  if (f.domain == Domain::Physical) return f;
  Field out = f;
  const auto dims = f.grid.dims();
  fft::transform(out.samples, dims, fft::Direction::Inverse);
  out.domain = Domain::Physical;
  return out;
}

Field apply_multiplier(const Field& f, const std::function<cplx(const Point& xi)>& m) {
  Field hat = to_frequency(f);
  const auto& g = hat.grid;
  for (std::size_t i = 0; i < hat.samples.size(); ++i) {
    const auto idx = g.unravel(i);
    Point xi{0.0, 0.0, 0.0};
    for (int a = 0; a < g.dim; ++a) xi[a] = g.wavenumber(idx[a]);
    hat.samples[i] *= m(xi);
  }
  return to_physical(hat);
}

HalfField HalfField::zeros(const GridSpec& grid) {
  grid.validate();
  require(grid.dim >= 1, ErrorCode::InvalidArgument, "half field needs dim >= 1");
  HalfField h{grid, {}};
  h.samples.assign(h.columns() * h.rows(), cplx{});
  return h;
}

std::size_t HalfField::columns() const {
  std::size_t c = 1;
  for (int a = 0; a + 1 < grid.dim; ++a) c *= static_cast<std::size_t>(grid.points);
  return c;
}

double max_abs(std::span<const cplx> v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

double l2_norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

std::string describe_warnings(unsigned flags) {
  std::string out;
  auto add = [&](const char* s) {
    if (!out.empty()) out += '|';
    out += s;
  };
  if (flags & kWarnLowLeftover) add("low_leftover");
  if (flags & kWarnHighLeftover) add("high_leftover");
  if (flags & kWarnValidityRange) add("validity_range");
  if (flags & kWarnTimeLowLeftover) add("time_low_leftover");
  if (flags & kWarnTimeHighLeftover) add("time_high_leftover");
  return out;
}

}  // namespace besovheat
