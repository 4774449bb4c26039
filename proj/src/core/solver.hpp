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

#include <optional>
#include <span>
#include <vector>

#include "core/grid.hpp"
#include "core/kernels.hpp"

namespace besovheat {

// Half-space heat problem  d_t u - Lap u = f  in x_n > 0, with u = h (Dirichlet) or
// d_n u = h (Neumann) on x_n = 0 and u(0) = u0. Empty containers mean zero data.
struct IbvpData {
  KernelKind bc = KernelKind::Dirichlet;
  GridSpec grid;         // GridSpec::halfspace
  TimeGrid time;
  HalfField u0;          // empty samples: zero initial datum
  HalfSpaceTimeField f;  // empty slices: no forcing
  TimeField h;           // slices on grid.boundary(); h(t_0) is the right limit at t = 0

  void validate() const;
};

struct SolverOptions {
  int grading_levels = 8;  // geometric levels (ratio 2) resolving the kernel near r = 0
  int nodes_per_panel = 16;
  std::optional<double> residual_threshold;
};

struct SolutionBundle {
  HalfSpaceTimeField u;
  HalfSpaceTimeField u1;
  HalfSpaceTimeField u2;
  HalfSpaceTimeField u3;
  // Interior residual |d_t u - Lap u - f| by centered differences, rows at least two cells
  // from x_n = 0 and from the top of the half box; one entry per interior time step.
  std::vector<double> residual_l2;
  std::vector<double> residual_max;
  bool residual_flagged = false;
};

Field extend_odd(const HalfField& u);
Field extend_even(const HalfField& u);

// Spectral propagation on the torus with Duhamel forcing, f linear in time between nodes.
// `forcing` may be empty (no slices).
SpaceTimeField whole_space_heat(const Field& v0, const SpaceTimeField& forcing, const TimeGrid& time);

// Values of a boundary potential on arbitrary eta layers: samples[time][column * eta.size() + e].
struct EtaLayers {
  GridSpec boundary;
  std::vector<double> eta;
  TimeGrid time;
  std::vector<std::vector<cplx>> samples;
};

// Half-line heat kernels in (t, xi', eta) and their eta-derivatives of order 0..2.
double corrector_kernel(KernelKind bc, int eta_derivative, double r, double xi_sq, double eta);

// u2 = G_bc *_(t,x') h, or its eta-derivative of order `eta_derivative`, at the given layers.
EtaLayers boundary_corrector(KernelKind bc, const TimeField& h, std::span<const double> eta, const TimeGrid& time,
                             int eta_derivative = 0, const SolverOptions& opts = {});
// Same on the rows of a half-space grid.
HalfSpaceTimeField boundary_corrector(KernelKind bc, const TimeField& h, const GridSpec& grid, const TimeGrid& time,
                                      int eta_derivative = 0, const SolverOptions& opts = {});

// eta_i = eta_min * ratio^i up to eta_max.
std::vector<double> graded_eta_grid(double eta_min, double eta_max, double ratio = 1.15);

SolutionBundle solve_halfspace_heat(const IbvpData& data, const SolverOptions& opts = {});

// Value (order 0) or normal derivative (order 1) at x_n = 0 of a torus field, by spectral
// evaluation along the last axis.
Field spectral_trace(const Field& full, int derivative);
// One-sided boundary values from the first half-space rows: linear extrapolation of u and
// the second-order derivative stencil (-2 u_0 + 3 u_1 - u_2) / h.
Field extrapolated_trace(const HalfField& u);
Field extrapolated_flux(const HalfField& u);

}  // namespace besovheat
