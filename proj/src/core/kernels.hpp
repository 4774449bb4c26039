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
#include <cmath>
#include <optional>
#include <string>

#include "core/filterbank.hpp"
#include "core/grid.hpp"
#include "core/profile.hpp"

namespace besovheat {

enum class KernelKind { Dirichlet, Neumann, Oblique, GreenD, GreenN };

std::string to_string(KernelKind kind);
KernelKind parse_kernel_kind(const std::string& name);

// Dyadically localized boundary potential Psi_{kind,k,j}(t, x', eta) on R^{n-1}_{x'}.
struct KernelSpec {
  KernelKind kind = KernelKind::Dirichlet;
  int dim = 2;  // n; the x' variable has dim - 1 components
  int k = 0;    // temporal block index
  int j = 0;    // spatial block index
  double eta = 1.0;
  std::optional<int> m;  // eta-smoothing block index
  // Oblique direction (b', b_n) with b_n stored at index dim - 1.
  std::array<double, 3> b{0.0, 1.0, 1.0};

  void validate() const;
};

// Numerical resolution of the rescaled quadrature. Lengths are in the rescaled
// variable y' = 2^j x', so the same options resolve every (k, j) alike.
struct QuadratureOptions {
  int nodes_per_octave = 64;
  double box = 32.0;          // L1 integration over |y'_i| <= box (disk of radius box when dim == 3)
  double step = 1.0 / 16.0;   // sample spacing in y'
  double richardson_tol = 1e-6;
  double tail_tol = 0.05;
  bool check_richardson = true;
};

struct KernelL1Result {
  double value = 0.0;
  double richardson_error = 0.0;  // relative change when the node count doubles
  double tail_estimate = 0.0;     // relative change when the box doubles
};

// sqrt(i tau + |xi'|^2), principal branch.
cplx principal_root(double tau, double xi_prime_sq);

// Fourier multiplier of the potential at (tau, xi'); xi' uses the first dim-1 entries.
cplx symbol(const KernelSpec& spec, double tau, const Point& xi_prime);

// eta-profile of the smoothed kernel: (phi_m *_eta [e^{-w theta} 1_{theta > 0}])(eta),
// through its Fourier representation (1/2pi) int phi_m^(rho) e^{i eta rho} / (w + i rho) d rho.
cplx smoothed_eta_profile(const DyadicProfile& profile, int m, double eta, cplx w, int nodes_per_octave = 64);
// Same quantity by direct quadrature of int_0^inf phi_m(eta - theta) e^{-w theta} d theta.
cplx smoothed_eta_profile_direct(const DyadicProfile& profile, int m, double eta, cplx w, int nodes_per_panel = 32);
// Physical-space 1-D block phi(x) = (1/pi) int_{1/2}^{2} phi^(r) cos(x r) dr.
double phi_physical(const DyadicProfile& profile, double x);

// Pointwise value Psi_{kind,k,j}(t, x', eta); applies the eta-smoothing when spec.m is set.
double kernel_value(const KernelSpec& spec, double t, const Point& x_prime, const QuadratureOptions& opts = {});

// Psi_{kind,k,j}(t_i, x', eta) on a periodic x' grid of dimension dim - 1; samples use the
// periodic image of x' closest to the origin.
SpaceTimeField eval_kernel_block(const KernelSpec& spec, const TimeGrid& time, const GridSpec& xgrid,
                                 const FilterBank& bank, const QuadratureOptions& opts = {});

// || Psi_{kind,k,j}(t, ., eta) ||_{L1(x')} with node-doubling and box-doubling checks.
KernelL1Result kernel_l1_norm(const KernelSpec& spec, double t, const QuadratureOptions& opts = {});
// || (phi_m *_eta Psi_{kind,k,j})(t, ., eta) ||_{L1(x')}; spec.m must be set.
KernelL1Result eta_smoothed_l1(const KernelSpec& spec, double t, const QuadratureOptions& opts = {});

enum class Regime { TimeDominated, SpaceDominated };
inline Regime regime_of(int k, int j) { return k >= 2 * j ? Regime::TimeDominated : Regime::SpaceDominated; }
std::string to_string(Regime r);

inline double bracket(double x) { return std::sqrt(1.0 + x * x); }

// Bound shape for ||Psi_{kind,k,j}(t, ., eta)||_{L1} with unit constant, evaluated with the
// formula of `regime` (normally regime_of(k, j)). `polynomial` adds the (1 + X^{n+2}) factor.
double orthogonality_envelope(KernelKind kind, int dim, int k, int j, double t, double eta, Regime regime,
                              bool polynomial = true);
// Bound shape for the eta-smoothed kernel, decay order N in eta.
double smoothed_envelope(KernelKind kind, int k, int j, int m, double t, double eta, Regime regime, int order);

}  // namespace besovheat
