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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/kernels.hpp"
#include "core/report.hpp"
#include "core/solver.hpp"
#include "core/spaces.hpp"

namespace besovheat {

// ---------------------------------------------------------------------------------------
// Kernel almost-orthogonality sweeps.

struct OrthoSweepSpec {
  KernelKind kind = KernelKind::Dirichlet;
  int dim = 2;
  std::vector<int> ks{4, 6, 8};
  std::vector<int> js{0, 1, 2};
  std::vector<double> t_units{0.0, 1.0, 2.0};  // t = t_unit * 2^-k
  std::vector<int> eta_levels{1, 2, 3, 4, 5};  // eta = 2^-l
  bool polynomial = true;                      // envelope with the (1 + X^{n+2}) factor
  double slope_tolerance = 0.25;
  QuadratureOptions quadrature;
};

// Rows (k, j, t, eta) with measured = ||Psi_{k,j}(t, ., eta)||_L1 and the regime envelope.
// Slopes: worst |d log2(ratio) / d coordinate| per regime and swept parameter, with
// coordinates k, j, log2 <2^k t> and log2 eta.
SweepReport ortho_sweep(const OrthoSweepSpec& spec);

// log2 of ||Psi_N|| / ||Psi_D|| at t = 0, eta = 2^{-k/2}, regressed against k (target -1/2).
SweepReport neumann_dirichlet_scaling(int dim, const std::vector<int>& ks, int j, double tolerance,
                                      const QuadratureOptions& quadrature = {});

struct SmoothedSweepSpec {
  KernelKind kind = KernelKind::Dirichlet;
  int dim = 2;
  std::vector<int> ks{6, 8};  // even
  int j = 0;
  int m_span = 3;             // m in k/2 - span .. k/2 + span
  double t_unit = 0.0;        // t = t_unit * 2^-k
  // eta = 2^{-k/2 + i/2} for i in [eta_lo, eta_hi], step eta_step; the row value is the sup.
  int eta_lo = -14;
  int eta_hi = 6;
  int eta_step = 2;
  double slope_tolerance = 0.25;
  QuadratureOptions quadrature{32, 32.0, 1.0 / 16.0, 1e-6, 0.05, false};
};

// Rows (k, m): measured = sup over eta of the eta-smoothed L1 norm, envelope = the bound at its
// eta-supremum 2^k 2^{-|k/2-m|} 2^k / <2^k t>^2. Slope of log2 measured against -|k/2 - m| per k.
SweepReport smoothed_sweep(const SmoothedSweepSpec& spec);

// ---------------------------------------------------------------------------------------
// Maximal regularity and trace estimates.

// Grids, windows and exponents shared by the space-time estimates (n = 2 or 3).
struct EstimateSetup {
  KernelKind bc = KernelKind::Dirichlet;
  GridSpec grid;  // GridSpec::halfspace
  TimeGrid time;
  int padded_time = 2048;
  int jmin = -2;
  int jmax = 2;
  int kmin = -3;
  int kmax = 4;
  double s = 0.0;
  double p = 2.0;
  SolverOptions solver;

  // Boundary-data time regularity 1 - 1/2p (Dirichlet) or 1/2 - 1/2p (Neumann).
  double time_exponent() const;
  // Boundary-data space regularity s + 2 - 1/p (Dirichlet) or s + 1 - 1/p (Neumann).
  double space_exponent() const;
  // Parabolic dilation: lengths / lambda, times / lambda^2, windows shifted to match.
  EstimateSetup dilated(double lambda) const;
  void validate() const;

  static EstimateSetup standard(KernelKind bc);
};

// A smooth space-time bump on the boundary: amplitude * chi((t - t0)/tw) * g(x'), with
// chi(u) = exp(-1/(1-u^2)) on |u| < 1 and g a Gaussian-windowed cosine centred at x0.
struct BoundaryBump {
  double amplitude = 1.0;
  double t_center = 2.5;
  double t_width = 1.0;
  double x_center = 8.0;  // first x' component; further components use x_center too
  double x_width = 1.5;
  double frequency = 3.0;
  double phase = 0.0;
};

double smooth_bump(double u);
double smooth_bump_derivative(double u, int order);

// Samples of sum of bumps on setup.grid.boundary() x setup.time, projected onto
// band_lo <= |xi'| <= band_hi.
TimeField boundary_datum(const EstimateSetup& setup, const std::vector<BoundaryBump>& bumps, double band_lo,
                         double band_hi);
std::vector<std::vector<BoundaryBump>> random_bump_family(std::uint64_t seed, int members, const EstimateSetup& setup);
// Shift by whole time steps (zero filled).
TimeField translate_in_time(const TimeField& h, int steps);

struct MaxregSides {
  double dt_norm = 0.0;     // ||d_t u||_{L1(B^s_{p,1}(R^n_+))}
  double hessian_norm = 0.0;  // sum_{a<=b} ||d_a d_b u||_{L1(B^s_{p,1}(R^n_+))}
  double rhs_time = 0.0;    // ||h||_{F^{s_t}_{1,1}(R; B^s_{p,1}(R^{n-1}))}
  double rhs_space = 0.0;   // ||h||_{L1(R_+; B^{s'}_{p,1}(R^{n-1}))}
  unsigned warnings = 0;

  double lhs() const { return dt_norm + hessian_norm; }
  double rhs() const { return rhs_time + rhs_space; }
};

// Solves with u0 = 0, f = 0 and boundary datum h, then evaluates both sides.
MaxregSides maxreg_sides(const EstimateSetup& setup, const TimeField& h);

struct MaxregMember {
  std::vector<double> params;
  EstimateSetup setup;
  TimeField h;
};

// Same samples on the dilated grids (exact parabolic dilation of the datum).
std::vector<MaxregMember> maxreg_dilation_family(const EstimateSetup& base, const TimeField& h,
                                                 const std::vector<double>& lambdas);
std::vector<MaxregMember> maxreg_translation_family(const EstimateSetup& base, const TimeField& h,
                                                    const std::vector<int>& steps);
std::vector<MaxregMember> maxreg_random_family(const EstimateSetup& base, std::uint64_t seed, int members,
                                               double band_lo, double band_hi);

// Rows: measured = LHS, envelope = RHS. With `invariance_tolerance` set, the spread
// max/min - 1 of the ratios is checked against it; otherwise max/min must stay below
// `spread_bound`.
SweepReport maxreg_ratio(const std::vector<std::string>& param_names, const std::vector<MaxregMember>& family,
                         std::optional<double> invariance_tolerance = std::nullopt, double spread_bound = 50.0);

// Manufactured u(t, x', eta) = a(t) b(x') c(eta) with smooth bumps, evaluated analytically.
struct SeparableSolution {
  double t_center = 2.5;
  double t_width = 1.5;
  double x_center = 8.0;
  double x_width = 1.5;
  double frequency = 2.0;
  double eta_width = 1.0;  // c(eta) = exp(-eta^2 / (2 w^2)) cos(eta / w)
  double amplitude = 1.0;

  SeparableSolution dilated(double lambda) const;  // u(lambda^2 t, lambda x', lambda eta)
  double a(double t, int order = 0) const;
  double b(double x, int order = 0) const;  // product over x' components for n = 3
  double c(double eta, int order = 0) const;
};

// Seeded members with a(0) = 0, centred in the box of `setup`.
std::vector<SeparableSolution> random_separable_family(std::uint64_t seed, int members, const EstimateSetup& setup);

struct TraceSides {
  double lhs = 0.0;  // sup over eta layers of the two boundary-type norms
  double rhs = 0.0;  // ||d_t u|| + ||grad^2 u|| in L1(B^s_{p,1}(R^n_+))
  unsigned warnings = 0;
};

// Value trace (derivative = false, exponents 1 - 1/2p and s + 2 - 1/p) or normal-derivative
// trace (derivative = true, exponents 1/2 - 1/2p and s + 1 - 1/p); setup.bc is not used.
// Throws Precondition when u(0) does not vanish.
TraceSides trace_sides(const EstimateSetup& setup, const SeparableSolution& u, bool derivative, int eta_layers = 6);
// Rows: measured = LHS, envelope = RHS. With `invariance_tolerance` set, the spread
// max/min - 1 of the ratios is checked against it; otherwise every non-degenerate ratio must
// be finite.
SweepReport trace_check(const std::vector<std::string>& param_names, const std::vector<std::vector<double>>& params,
                        const std::vector<EstimateSetup>& setups, const std::vector<SeparableSolution>& family,
                        bool derivative, std::optional<double> invariance_tolerance = std::nullopt);

// ---------------------------------------------------------------------------------------
// Homogeneity exponents and the elementary integral bound.

enum class ScalingNorm { TimeTriebel, Lebesgue };
std::string to_string(ScalingNorm n);

struct ScalingSetup {
  KernelKind bc = KernelKind::Dirichlet;
  GridSpec boundary = GridSpec::periodic(1, 512, 64.0);
  TimeGrid time{20.0, 1025};
  int padded_time = 2048;
  int jmin = -4;
  int jmax = 3;
  int kmin = -3;
  int kmax = 6;
  double s = 0.0;
  double p = 2.0;
  ScalingNorm norm = ScalingNorm::Lebesgue;
  double tolerance = 0.05;
};

using SpaceTimeFunction = std::function<double(double t, const Point& x)>;

// Default datum: second derivative of a Gaussian in t times a Mexican hat in x', both with
// vanishing low moments so the truncated windows capture the norms.
SpaceTimeFunction default_scaling_datum(const ScalingSetup& setup);

// Norm of h_lambda(t, x') = h(lambda^2 t, lambda (x' - c) + c) on a fixed grid, regressed
// in log2 against log2 lambda; target s - n/p. Neumann data carry an extra factor lambda, being
// the normal derivative of the dilated solution.
SweepReport scaling_exponents(const ScalingSetup& setup, const SpaceTimeFunction& datum,
                              const std::vector<double>& lambdas);

// int_{|x| <= a} (1 + x^2)^{-N/2} dx against a / (1 + a^2)^{1/2}.
double lemma_b_integral(int N, double a);
double lemma_b_closed_form(int N, double a);  // N = 2, 3, 4; NaN otherwise
SweepReport lemma_b_bound(int N, const std::vector<double>& a_values);

}  // namespace besovheat
