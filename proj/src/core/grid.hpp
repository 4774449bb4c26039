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

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace besovheat {

using cplx = std::complex<double>;
using Point = std::array<double, 3>;

// Periodic torus [origin, origin + L)^dim sampled with N points per axis.
// dim == 0 denotes a single point (the boundary of a half-line).
struct GridSpec {
  int dim = 1;
  int points = 16;
  double length = 6.283185307179586;
  Point origin{0.0, 0.0, 0.0};

  static GridSpec periodic(int dim, int points, double length);
  // Torus whose last axis is offset by half a cell so that x_n = 0 falls between
  // samples: x_n = -L/2 + (i + 1/2) h. Rows i >= N/2 are the half-space x_n > 0.
  static GridSpec halfspace(int dim, int points, double length);

  std::size_t size() const;
  double spacing() const { return length / points; }
  double cell_volume() const;
  double fundamental() const;
  double nyquist() const;
  // Signed wavenumber (angular) of lattice index k along one axis.
  double wavenumber(int k) const;
  // Coordinate of sample i along `axis`.
  double coordinate(int axis, int i) const { return origin[axis] + i * spacing(); }
  std::array<int, 3> unravel(std::size_t flat) const;
  Point position(std::size_t flat) const;
  // The (dim-1)-dimensional grid of the x' variables.
  GridSpec boundary() const;
  // Same lattice scaled by `factor` in physical size.
  GridSpec scaled(double factor) const;
  std::vector<int> dims() const { return std::vector<int>(static_cast<std::size_t>(dim), points); }

  void validate() const;
  bool same_lattice(const GridSpec& other) const;
};

// Uniform time grid t_i = i T / (Nt - 1), i = 0..Nt-1.
struct TimeGrid {
  double horizon = 1.0;
  int points = 2;

  double step() const { return horizon / (points - 1); }
  double at(int i) const { return i * step(); }
  void validate() const;
};

enum class Domain { Physical, Frequency };

struct Field {
  GridSpec grid;
  std::vector<cplx> samples;
  Domain domain = Domain::Physical;

  static Field zeros(const GridSpec& grid);
  static Field sample(const GridSpec& grid, const std::function<double(const Point&)>& fn);

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double a);
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double a, Field f);

Field to_frequency(const Field& f);
Field to_physical(const Field& f);
void require_same_grid(const Field& a, const Field& b);

// Multiply the DFT of a physical-domain field by m(xi) (xi given per axis).
Field apply_multiplier(const Field& f, const std::function<cplx(const Point& xi)>& m);

// Samples of the half-space x_n > 0 of a halfspace() torus grid.
// Layout: [x' flat index][x_n row], rows ordered by increasing x_n.
struct HalfField {
  GridSpec grid;  // the full torus grid (GridSpec::halfspace)
  std::vector<cplx> samples;

  static HalfField zeros(const GridSpec& grid);
  int rows() const { return grid.points / 2; }
  std::size_t columns() const;
  double eta(int row) const { return (row + 0.5) * grid.spacing(); }
  cplx& at(std::size_t column, int row) { return samples[column * rows() + row]; }
  const cplx& at(std::size_t column, int row) const { return samples[column * rows() + row]; }
};

template <class Slice>
struct TimeSeries {
  TimeGrid time;
  std::vector<Slice> slices;
};

using SpaceTimeField = TimeSeries<Field>;
using TimeField = TimeSeries<Field>;  // on a boundary grid
using HalfSpaceTimeField = TimeSeries<HalfField>;

double max_abs(std::span<const cplx> v);
double l2_norm(std::span<const cplx> v);

}  // namespace besovheat
