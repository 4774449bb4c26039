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

#include "core/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "core/error.hpp"
#include "core/quadrature.hpp"

namespace besovheat {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// Gauss panels on consecutive edges; each panel is split so that a phase of
// `frequency * width` stays below nodes / 2 radians per piece.
QuadratureRule oscillatory_rule(const std::vector<double>& edges, int nodes, double frequency) {
  QuadratureRule rule;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i];
    const double b = edges[i + 1];
    const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(frequency) * (b - a) / (0.5 * nodes))));
    for (int p = 0; p < pieces; ++p)
      rule.append(gauss_legendre(nodes, a + (b - a) * p / pieces, a + (b - a) * (p + 1) / pieces));
  }
  return rule;
}

// Nodes on +-[1/2, 2] split at +-1, `nodes` per octave.
QuadratureRule annulus_line_rule(int nodes, double frequency) {
  QuadratureRule rule = oscillatory_rule({-2.0, -1.0, -0.5}, nodes, frequency);
  rule.append(oscillatory_rule({0.5, 1.0, 2.0}, nodes, frequency));
  return rule;
}

// Nodes covering [-2, 2] in half-unit panels, for the Cartesian rule on the disk |zeta'| <= 2.
QuadratureRule square_axis_rule(int nodes, double frequency) {
  return oscillatory_rule({-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0}, std::max(8, nodes / 2), frequency);
}

void check_root(cplx w) {
  // Re w >= |w| cos(pi/4) for the principal root of a number with nonnegative real part.
  if (w.real() < std::abs(w) * std::numbers::sqrt2 / 2.0 * (1.0 - 1e-12))
    throw Error(ErrorCode::Domain, "principal root left the sector |arg w| <= pi/4");
}

// Precomputed rho-quadrature for the smoothed eta-profile: E(w) = sum_q c_q / (w + i rho_q).
class EtaFourierProfile {
 public:
  EtaFourierProfile(const DyadicProfile& profile, int m, double eta, int nodes) {
    const double scale = std::ldexp(1.0, m);
    const QuadratureRule r = annulus_line_rule(nodes, scale * eta);
    rho_.resize(r.size());
    coef_.resize(r.size());
    for (std::size_t q = 0; q < r.size(); ++q) {
      rho_[q] = scale * r.nodes[q];
      coef_[q] = scale * r.weights[q] * profile.phi(std::abs(r.nodes[q])) / (2.0 * kPi) *
                 std::polar(1.0, eta * rho_[q]);
    }
  }

  cplx operator()(cplx w) const {
    cplx s{};
    for (std::size_t q = 0; q < rho_.size(); ++q) s += coef_[q] / (w + kI * rho_[q]);
    return s;
  }

 private:
  std::vector<double> rho_;
  std::vector<cplx> coef_;
};

// Multiplier without its eta-profile factor.
cplx symbol_prefactor(const KernelSpec& spec, double tau, const Point& xi, cplx w) {
  switch (spec.kind) {
    case KernelKind::Dirichlet:
      return kI * tau;
    case KernelKind::Neumann:
      return -kI * tau / w;
    case KernelKind::GreenD:
      return 1.0;
    case KernelKind::GreenN:
      return -1.0 / w;
    case KernelKind::Oblique: {
      double bx = 0.0;
      for (int a = 0; a + 1 < spec.dim; ++a) bx += spec.b[a] * xi[a];
      return kI * tau / (kI * bx - spec.b[spec.dim - 1] * w);
    }
  }
  return 0.0;
}

// Psi in the rescaled variables tau = 2^k sigma, xi' = 2^j zeta', y' = 2^j x':
//   Psi(t, y' / 2^j) = sum_zeta A(zeta) e^{i y'.zeta}
// with the whole constant c 2^k 2^{j(n-1)} folded into the amplitudes A.
class RescaledKernel {
 public:
  RescaledKernel(const KernelSpec& spec, double t, int nodes, double ymax, const DyadicProfile& profile = {})
      : spec_(spec) {
    std::optional<EtaFourierProfile> smoothing;
    if (spec.m) smoothing.emplace(profile, *spec.m, spec.eta, nodes);

    const double two_k = std::ldexp(1.0, spec.k);
    const double two_j = std::ldexp(1.0, spec.j);
    const QuadratureRule sigma = annulus_line_rule(nodes, two_k * std::abs(t));
    std::vector<cplx> time_weight(sigma.size());
    for (std::size_t q = 0; q < sigma.size(); ++q)
      time_weight[q] = sigma.weights[q] * profile.phi(std::abs(sigma.nodes[q])) * std::polar(1.0, two_k * t * sigma.nodes[q]);

    const int nx = spec.dim - 1;
    const double c = std::pow(2.0 * kPi, -spec.dim) * two_k * std::pow(two_j, nx);

    auto amplitude = [&](double z1, double z2) -> cplx {
      const Point xi{two_j * z1, two_j * z2, 0.0};
      const double xi2 = xi[0] * xi[0] + xi[1] * xi[1];
      cplx s{};
      for (std::size_t q = 0; q < sigma.size(); ++q) {
        const double tau = two_k * sigma.nodes[q];
        const cplx w = principal_root(tau, xi2);
        check_root(w);
        const cplx profile_eta = smoothing ? (*smoothing)(w) : std::exp(-w * spec_.eta);
        s += time_weight[q] * symbol_prefactor(spec_, tau, xi, w) * profile_eta;
      }
      return c * s;
    };

    if (nx == 1) {
      axis1_ = annulus_line_rule(nodes, ymax);
      amp_.resize(axis1_.size());
      for (std::size_t a = 0; a < axis1_.size(); ++a)
        amp_[a] = axis1_.weights[a] * profile.phi(std::abs(axis1_.nodes[a])) * amplitude(axis1_.nodes[a], 0.0);
    } else {
      axis1_ = square_axis_rule(nodes, ymax);
      axis2_ = axis1_;
      const std::size_t n1 = axis1_.size();
      amp_.assign(n1 * n1, cplx{});
      for (std::size_t a = 0; a < n1; ++a)
        for (std::size_t b = 0; b < n1; ++b) {
          const double r = std::hypot(axis1_.nodes[a], axis2_.nodes[b]);
          const double weight = profile.phi(r);
          if (weight == 0.0) continue;
          amp_[a * n1 + b] = axis1_.weights[a] * axis2_.weights[b] * weight * amplitude(axis1_.nodes[a], axis2_.nodes[b]);
        }
    }
  }

  // Values on the tensor grid y1 x y2 (y2 ignored for n = 2), last axis fastest.
  std::vector<double> tensor(const std::vector<double>& y1, const std::vector<double>& y2) const {
    if (spec_.dim == 2) {
      std::vector<double> out(y1.size());
      for (std::size_t i = 0; i < y1.size(); ++i) {
        cplx s{};
        for (std::size_t a = 0; a < amp_.size(); ++a) s += amp_[a] * std::polar(1.0, y1[i] * axis1_.nodes[a]);
        out[i] = s.real();
      }
      return out;
    }
    const std::size_t n1 = axis1_.size();
    const std::size_t n2 = axis2_.size();
    std::vector<cplx> e1(y1.size() * n1);
    for (std::size_t i = 0; i < y1.size(); ++i)
      for (std::size_t a = 0; a < n1; ++a) e1[i * n1 + a] = std::polar(1.0, y1[i] * axis1_.nodes[a]);
    // partial[i2][a] = sum_b A[a][b] e^{i y2 zeta_b}
    std::vector<cplx> partial(y2.size() * n1);
    std::vector<cplx> e2(n2);
    for (std::size_t i = 0; i < y2.size(); ++i) {
      for (std::size_t b = 0; b < n2; ++b) e2[b] = std::polar(1.0, y2[i] * axis2_.nodes[b]);
      for (std::size_t a = 0; a < n1; ++a) {
        cplx s{};
        const cplx* row = amp_.data() + a * n2;
        for (std::size_t b = 0; b < n2; ++b) s += row[b] * e2[b];
        partial[i * n1 + a] = s;
      }
    }
    std::vector<double> out(y1.size() * y2.size());
    for (std::size_t i = 0; i < y1.size(); ++i)
      for (std::size_t l = 0; l < y2.size(); ++l) {
        cplx s{};
        for (std::size_t a = 0; a < n1; ++a) s += e1[i * n1 + a] * partial[l * n1 + a];
        out[i * y2.size() + l] = s.real();
      }
    return out;
  }

 private:
  KernelSpec spec_;
  QuadratureRule axis1_;
  QuadratureRule axis2_;
  std::vector<cplx> amp_;
};

std::vector<double> symmetric_samples(double box, double step) {
  const int half = static_cast<int>(std::ceil(box / step - 1e-9));
  std::vector<double> y(static_cast<std::size_t>(2 * half + 1));
  for (int i = -half; i <= half; ++i) y[static_cast<std::size_t>(i + half)] = i * step;
  return y;
}

// int |f| over the samples, exact for the piecewise-linear interpolant (sign changes included).
double abs_integral_1d(const std::vector<double>& f, double step) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const double a = f[i];
    const double b = f[i + 1];
    if ((a >= 0.0) == (b >= 0.0))
      s += 0.5 * (std::abs(a) + std::abs(b));
    else
      s += 0.5 * (a * a + b * b) / (std::abs(a) + std::abs(b));
  }
  return s * step;
}

// L1 over |y'| <= box in rescaled variables, converted back to x'.
double l1_once(const KernelSpec& spec, double t, int nodes, double box, double step) {
  const auto y = symmetric_samples(box, step);
  const double ymax = spec.dim == 2 ? box : box * std::numbers::sqrt2;
  const RescaledKernel kernel(spec, t, nodes, ymax);
  const double jacobian = std::pow(2.0, -spec.j * (spec.dim - 1));
  if (spec.dim == 2) return jacobian * abs_integral_1d(kernel.tensor(y, {}), step);
  const auto v = kernel.tensor(y, y);
  double s = 0.0;
  for (std::size_t a = 0; a < y.size(); ++a)
    for (std::size_t b = 0; b < y.size(); ++b)
      if (y[a] * y[a] + y[b] * y[b] <= box * box) s += std::abs(v[a * y.size() + b]);
  return jacobian * s * step * step;
}

KernelL1Result l1_with_checks(const KernelSpec& spec, double t, const QuadratureOptions& opts) {
  require(opts.nodes_per_octave >= 4 && opts.box > 0.0 && opts.step > 0.0 && opts.step < opts.box,
          ErrorCode::InvalidArgument, "invalid kernel quadrature options");
  KernelL1Result r;
  r.value = l1_once(spec, t, opts.nodes_per_octave, opts.box, opts.step);
  if (opts.check_richardson) {
    const double fine = l1_once(spec, t, 2 * opts.nodes_per_octave, opts.box, opts.step);
    r.richardson_error = fine == 0.0 ? 0.0 : std::abs(fine - r.value) / std::abs(fine);
    if (r.richardson_error > opts.richardson_tol) {
      std::ostringstream os;
      os << "kernel quadrature did not converge: node doubling changed the L1 norm by " << r.richardson_error;
      throw Error(ErrorCode::Convergence, os.str());
    }
  }
  const double wide = l1_once(spec, t, opts.nodes_per_octave, 2.0 * opts.box, opts.step);
  r.tail_estimate = wide == 0.0 ? 0.0 : std::abs(wide - r.value) / std::abs(wide);
  if (r.tail_estimate > opts.tail_tol) {
    std::ostringstream os;
    os << "kernel L1 tail too large: doubling the box changed the norm by " << 100.0 * r.tail_estimate << "%";
    throw Error(ErrorCode::Convergence, os.str());
  }
  return r;
}

}  // namespace

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Dirichlet: return "dirichlet";
    case KernelKind::Neumann: return "neumann";
    case KernelKind::Oblique: return "oblique";
    case KernelKind::GreenD: return "green_d";
    case KernelKind::GreenN: return "green_n";
  }
  return "unknown";
}

KernelKind parse_kernel_kind(const std::string& name) {
  for (auto k : {KernelKind::Dirichlet, KernelKind::Neumann, KernelKind::Oblique, KernelKind::GreenD,
                 KernelKind::GreenN})
    if (to_string(k) == name) return k;
  throw Error(ErrorCode::InvalidArgument, "unknown kernel kind '" + name + "'");
}

std::string to_string(Regime r) { return r == Regime::TimeDominated ? "time" : "space"; }

void KernelSpec::validate() const {
  require(dim == 2 || dim == 3, ErrorCode::InvalidArgument, "kernels support n = 2 or n = 3");
  require(eta > 0.0 && std::isfinite(eta), ErrorCode::Domain, "kernel evaluation requires eta > 0");
  if (kind == KernelKind::Oblique)
    require(b[dim - 1] > 0.0, ErrorCode::Domain, "oblique kernel requires b_n > 0");
}

cplx principal_root(double tau, double xi_prime_sq) { return std::sqrt(cplx{xi_prime_sq, tau}); }

cplx symbol(const KernelSpec& spec, double tau, const Point& xi_prime) {
  spec.validate();
  double xi2 = 0.0;
  for (int a = 0; a + 1 < spec.dim; ++a) xi2 += xi_prime[a] * xi_prime[a];
  const cplx w = principal_root(tau, xi2);
  return symbol_prefactor(spec, tau, xi_prime, w) * std::exp(-w * spec.eta);
}

cplx smoothed_eta_profile(const DyadicProfile& profile, int m, double eta, cplx w, int nodes_per_octave) {
  return EtaFourierProfile(profile, m, eta, nodes_per_octave)(w);
}

double phi_physical(const DyadicProfile& profile, double x) {
  const QuadratureRule r = oscillatory_rule({0.5, 1.0, 2.0}, 32, std::abs(x));
  double s = 0.0;
  for (std::size_t q = 0; q < r.size(); ++q) s += r.weights[q] * profile.phi(r.nodes[q]) * std::cos(x * r.nodes[q]);
  return s / kPi;
}

cplx smoothed_eta_profile_direct(const DyadicProfile& profile, int m, double eta, cplx w, int nodes_per_panel) {
  require(w.real() > 0.0, ErrorCode::Domain, "direct eta convolution needs Re w > 0");
  // phi decays faster than any power; beyond 512 units of 2^-m it is below double precision relevance.
  const double scale = std::ldexp(1.0, -m);
  const double reach = 512.0 * scale;
  const double lo = std::max(0.0, eta - reach);
  const double hi = std::min(eta + reach, 40.0 / w.real());
  if (hi <= lo) return 0.0;
  const double width = std::min(scale, 1.0 / std::abs(w));
  const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
  cplx s{};
  for (int p = 0; p < panels; ++p) {
    const QuadratureRule r = gauss_legendre(nodes_per_panel, lo + (hi - lo) * p / panels, lo + (hi - lo) * (p + 1) / panels);
    for (std::size_t q = 0; q < r.size(); ++q) {
      const double theta = r.nodes[q];
      s += r.weights[q] * phi_physical(profile, (eta - theta) / scale) / scale * std::exp(-w * theta);
    }
  }
  return s;
}

double kernel_value(const KernelSpec& spec, double t, const Point& x_prime, const QuadratureOptions& opts) {
  spec.validate();
  const double two_j = std::ldexp(1.0, spec.j);
  const std::vector<double> y1{two_j * x_prime[0]};
  const std::vector<double> y2{two_j * x_prime[1]};
  const double ymax = std::max(std::abs(y1[0]), std::abs(y2[0]));
  const RescaledKernel kernel(spec, t, opts.nodes_per_octave, ymax);
  return kernel.tensor(y1, y2).front();
}

SpaceTimeField eval_kernel_block(const KernelSpec& spec, const TimeGrid& time, const GridSpec& xgrid,
                                 const FilterBank& bank, const QuadratureOptions& opts) {
  spec.validate();
  time.validate();
  require(xgrid.dim == spec.dim - 1, ErrorCode::GridMismatch, "x' grid must have dimension n - 1");
  require(bank.contains(spec.j), ErrorCode::InvalidArgument, "spatial block index outside the filter bank window");
  const double two_j = std::ldexp(1.0, spec.j);
  std::vector<std::vector<double>> axes(2);
  double ymax = 0.0;
  for (int a = 0; a < xgrid.dim; ++a) {
    for (int i = 0; i < xgrid.points; ++i) {
      double x = xgrid.coordinate(a, i);
      x -= xgrid.length * std::round(x / xgrid.length);
      axes[a].push_back(two_j * x);
      ymax = std::max(ymax, std::abs(two_j * x));
    }
  }
  if (xgrid.dim == 1) axes[1] = {0.0};
  ymax *= std::sqrt(static_cast<double>(xgrid.dim));

  SpaceTimeField out;
  out.time = time;
  for (int i = 0; i < time.points; ++i) {
    const RescaledKernel kernel(spec, time.at(i), opts.nodes_per_octave, ymax);
    const auto v = kernel.tensor(axes[0], axes[1]);
    Field f = Field::zeros(xgrid);
    for (std::size_t q = 0; q < f.samples.size(); ++q) f.samples[q] = v[q];
    out.slices.push_back(std::move(f));
  }
  return out;
}

KernelL1Result kernel_l1_norm(const KernelSpec& spec, double t, const QuadratureOptions& opts) {
  spec.validate();
  KernelSpec plain = spec;
  plain.m.reset();
  return l1_with_checks(plain, t, opts);
}

KernelL1Result eta_smoothed_l1(const KernelSpec& spec, double t, const QuadratureOptions& opts) {
  spec.validate();
  require(spec.m.has_value(), ErrorCode::InvalidArgument, "eta-smoothed norm needs the smoothing index m");
  return l1_with_checks(spec, t, opts);
}

namespace {

double prefactor(KernelKind kind, int k) {
  switch (kind) {
    case KernelKind::Dirichlet: return std::ldexp(1.0, k);
    case KernelKind::Neumann: return std::pow(2.0, 0.5 * k);
    default: throw Error(ErrorCode::InvalidArgument, "envelopes are defined for Dirichlet and Neumann kernels only");
  }
}

double time_factor(int k, double t) {
  const double b = bracket(std::ldexp(t, k));
  return std::ldexp(1.0, k) / (b * b);
}

}  // namespace

double orthogonality_envelope(KernelKind kind, int dim, int k, int j, double t, double eta, Regime regime,
                              bool polynomial) {
  const double x = regime == Regime::TimeDominated ? std::pow(2.0, 0.5 * k) * eta : std::ldexp(eta, j);
  const double poly = polynomial ? 1.0 + std::pow(x, dim + 2) : 1.0;
  return prefactor(kind, k) * poly * std::exp(-0.5 * x) * time_factor(k, t);
}

double smoothed_envelope(KernelKind kind, int k, int j, int m, double t, double eta, Regime regime, int order) {
  double gap;
  double x;
  if (regime == Regime::TimeDominated) {
    gap = std::abs(0.5 * k - m);
    x = std::pow(2.0, std::min(0.5 * k, static_cast<double>(m))) * eta;
  } else {
    gap = std::abs(static_cast<double>(j - m));
    x = std::ldexp(eta, j);
  }
  return prefactor(kind, k) * std::pow(2.0, -gap) / std::pow(bracket(x), order) * time_factor(k, t);
}

}  // namespace besovheat
