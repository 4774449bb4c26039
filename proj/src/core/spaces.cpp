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

#include "core/spaces.hpp"

#include <cmath>
#include <sstream>

#include "core/error.hpp"
#include "core/fft.hpp"

namespace besovheat {
namespace {

void check_exponent(double v, const char* name) {
  std::ostringstream os;
  os << name << " must lie in [1, inf] (got " << v << ")";
  require(v >= 1.0 && !std::isnan(v), ErrorCode::InvalidArgument, os.str());
}

std::pair<int, int> resolve_window(const std::optional<std::pair<int, int>>& w, const FilterBank& bank) {
  if (!w) return {bank.jmin(), bank.jmax()};
  require(w->first <= w->second && bank.contains(w->first) && bank.contains(w->second), ErrorCode::InvalidArgument,
          "norm window must lie inside the filter bank window");
  return *w;
}

// Combine per-scale values a_j (already weighted by 2^{sj}) in l^sigma.
double lsigma(const std::vector<double>& a, double sigma) {
  if (std::isinf(sigma)) {
    double m = 0.0;
    for (double v : a) m = std::max(m, v);
    return m;
  }
  double sum = 0.0;
  for (double v : a) sum += std::pow(v, sigma);
  return std::pow(sum, 1.0 / sigma);
}

unsigned leftover_flags(double low, double high, double threshold, unsigned low_flag, unsigned high_flag) {
  unsigned w = 0;
  if (low > threshold) w |= low_flag;
  if (high > threshold) w |= high_flag;
  return w;
}

}  // namespace

void NormParams::validate() const {
  check_exponent(p, "p");
  check_exponent(sigma, "sigma");
  require(std::isfinite(s), ErrorCode::InvalidArgument, "s must be finite");
}

void TimeNormParams::validate() const {
  check_exponent(p, "time p");
  check_exponent(sigma, "time sigma");
  require(std::isfinite(s), ErrorCode::InvalidArgument, "time s must be finite");
}

double lp_norm(const Field& f, double p) {
  require(f.domain == Domain::Physical, ErrorCode::InvalidArgument, "lp_norm expects a physical-domain field");
  if (std::isinf(p)) return max_abs(f.samples);
  double sum = 0.0;
  if (p == 2.0) {
    for (const auto& v : f.samples) sum += std::norm(v);
  } else if (p == 1.0) {
    for (const auto& v : f.samples) sum += std::abs(v);
  } else {
    for (const auto& v : f.samples) sum += std::pow(std::abs(v), p);
  }
  return std::pow(sum * f.grid.cell_volume(), 1.0 / p);
}

NormResult besov_norm(const Field& f, const NormParams& params, const FilterBank& bank) {
  params.validate();
  const auto [lo, hi] = resolve_window(params.window, bank);
  const auto blocks = bank.lp_blocks(f);
  std::vector<double> weighted;
  weighted.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int j = lo; j <= hi; ++j)
    weighted.push_back(std::pow(2.0, params.s * j) * lp_norm(blocks[j - bank.jmin()], params.p));

  NormResult r;
  r.value = lsigma(weighted, params.sigma);
  if (!params.homogeneous) r.value += lp_norm(bank.low_pass(f, lo - 1), params.p);

  const double total = lp_norm(f, params.p);
  if (total > 0.0) {
    r.low_leftover = params.homogeneous ? lp_norm(bank.low_leftover(f, true), params.p) / total : 0.0;
    r.high_leftover = lp_norm(bank.high_leftover(f), params.p) / total;
    r.warnings = leftover_flags(r.low_leftover, r.high_leftover, params.leftover_threshold, kWarnLowLeftover,
                                kWarnHighLeftover);
  }
  return r;
}

NormResult triebel_norm(const Field& f, const NormParams& params, const FilterBank& bank) {
  params.validate();
  require(!std::isinf(params.p), ErrorCode::InvalidArgument, "Triebel-Lizorkin norms require p < inf");
  const auto [lo, hi] = resolve_window(params.window, bank);
  const auto blocks = bank.lp_blocks(f);
  const std::size_t n = f.samples.size();
  std::vector<double> pointwise(n, 0.0);
  for (int j = lo; j <= hi; ++j) {
    const double w = std::pow(2.0, params.s * j);
    const auto& b = blocks[j - bank.jmin()].samples;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = w * std::abs(b[i]);
      if (std::isinf(params.sigma))
        pointwise[i] = std::max(pointwise[i], a);
      else
        pointwise[i] += std::pow(a, params.sigma);
    }
  }
  double sum = 0.0;
  for (double v : pointwise) {
    const double g = std::isinf(params.sigma) ? v : std::pow(v, 1.0 / params.sigma);
    sum += std::pow(g, params.p);
  }
  NormResult r;
  r.value = std::pow(sum * f.grid.cell_volume(), 1.0 / params.p);
  if (!params.homogeneous) r.value += lp_norm(bank.low_pass(f, lo - 1), params.p);

  const double total = lp_norm(f, params.p);
  if (total > 0.0) {
    r.low_leftover = params.homogeneous ? lp_norm(bank.low_leftover(f, true), params.p) / total : 0.0;
    r.high_leftover = lp_norm(bank.high_leftover(f), params.p) / total;
    r.warnings = leftover_flags(r.low_leftover, r.high_leftover, params.leftover_threshold, kWarnLowLeftover,
                                kWarnHighLeftover);
  }
  return r;
}

FilterBank make_time_bank(const DyadicProfile& profile, const TimeGrid& time, int padded_points, int kmin,
                          int kmax) {
  time.validate();
  require(padded_points >= time.points, ErrorCode::InvalidArgument, "time padding shorter than the time grid");
  return FilterBank(profile, kmin, kmax, GridSpec::periodic(1, padded_points, padded_points * time.step()));
}

namespace {

Field slice_field(const GridSpec& grid, const cplx* row) {
  Field f{grid, std::vector<cplx>(row, row + grid.size()), Domain::Physical};
  return f;
}

double time_lp(const std::vector<double>& per_time, double p, double dt) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : per_time) m = std::max(m, v);
    return m;
  }
  double sum = 0.0;
  for (double v : per_time) sum += std::pow(v, p);
  return std::pow(sum * dt, 1.0 / p);
}

}  // namespace

NormResult bochner_tl_norm(const TimeField& h, const TimeNormParams& tparams, const SpatialNorm& spatial_norm,
                           const FilterBank& tbank) {
  tparams.validate();
  h.time.validate();
  require(static_cast<int>(h.slices.size()) == h.time.points, ErrorCode::InvalidArgument,
          "time field has the wrong number of slices");
  const GridSpec& tg = tbank.grid();
  require(tg.dim == 1 && tg.points >= h.time.points, ErrorCode::GridMismatch,
          "time bank must be one-dimensional and at least as long as the time grid");
  const double dt = h.time.step();
  require(std::abs(tg.spacing() - dt) <= 1e-9 * dt, ErrorCode::GridMismatch,
          "time bank spacing differs from the time-grid step");
  const auto [lo, hi] = resolve_window(
      tparams.window ? tparams.window : std::optional<std::pair<int, int>>{}, tbank);

  const GridSpec space = h.slices.front().grid;
  const int stride = static_cast<int>(space.size());
  const int padded = tg.points;
  std::vector<cplx> hat(static_cast<std::size_t>(padded) * stride);
  for (int i = 0; i < h.time.points; ++i) {
    require(h.slices[i].grid.same_lattice(space), ErrorCode::GridMismatch, "time slices on different grids");
    std::copy(h.slices[i].samples.begin(), h.slices[i].samples.end(), hat.begin() + static_cast<std::ptrdiff_t>(i) * stride);
  }
  fft::transform_leading(hat, padded, stride, fft::Direction::Forward);

  const auto& prof = tbank.profile();
  auto filtered = [&](const std::function<double(double)>& m) {
    std::vector<cplx> out = hat;
    for (int r = 0; r < padded; ++r) {
      const double mult = m(std::abs(tg.wavenumber(r)));
      for (int c = 0; c < stride; ++c) out[static_cast<std::size_t>(r) * stride + c] *= mult;
    }
    fft::transform_leading(out, padded, stride, fft::Direction::Inverse);
    return out;
  };
  auto norms_per_time = [&](const std::vector<cplx>& data) {
    std::vector<double> v(static_cast<std::size_t>(padded));
    for (int r = 0; r < padded; ++r) v[r] = spatial_norm(slice_field(space, data.data() + static_cast<std::size_t>(r) * stride));
    return v;
  };

  std::vector<double> acc(static_cast<std::size_t>(padded), 0.0);
  for (int k = lo; k <= hi; ++k) {
    const auto block = filtered([&](double tau) { return prof.phi_m(k, tau); });
    const auto nk = norms_per_time(block);
    const double w = std::pow(2.0, tparams.s * k);
    for (int r = 0; r < padded; ++r) {
      if (std::isinf(tparams.sigma))
        acc[r] = std::max(acc[r], w * nk[r]);
      else
        acc[r] += std::pow(w * nk[r], tparams.sigma);
    }
  }
  if (!std::isinf(tparams.sigma))
    for (double& v : acc) v = std::pow(v, 1.0 / tparams.sigma);

  NormResult res;
  res.value = time_lp(acc, tparams.p, dt);

  std::vector<double> base(static_cast<std::size_t>(padded), 0.0);
  for (int i = 0; i < h.time.points; ++i) base[i] = spatial_norm(h.slices[i]);
  const double total = time_lp(base, tparams.p, dt);
  if (total > 0.0) {
    const auto low = filtered([&](double tau) { return tau == 0.0 ? 0.0 : prof.zeta_m(lo - 1, tau); });
    const auto high = filtered([&](double tau) { return 1.0 - prof.zeta_m(hi, tau); });
    res.low_leftover = time_lp(norms_per_time(low), tparams.p, dt) / total;
    res.high_leftover = time_lp(norms_per_time(high), tparams.p, dt) / total;
    res.warnings = leftover_flags(res.low_leftover, res.high_leftover, tparams.leftover_threshold,
                                  kWarnTimeLowLeftover, kWarnTimeHighLeftover);
  }
  return res;
}

double bochner_lebesgue_norm(const TimeField& h, double p, const SpatialNorm& spatial_norm) {
  check_exponent(p, "p");
  h.time.validate();
  const int n = h.time.points;
  require(static_cast<int>(h.slices.size()) == n, ErrorCode::InvalidArgument, "time field has the wrong number of slices");
  const double dt = h.time.step();
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& s : h.slices) m = std::max(m, spatial_norm(s));
    return m;
  }
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    sum += w * std::pow(spatial_norm(h.slices[i]), p);
  }
  return std::pow(sum * dt, 1.0 / p);
}

bool in_extension_range(double s, double p) {
  const double inv = std::isinf(p) ? 0.0 : 1.0 / p;
  return s > -1.0 + inv && s < inv;
}

Field extend_zero(const HalfField& f) {
  Field out = Field::zeros(f.grid);
  const int n = f.grid.points;
  const int rows = f.rows();
  for (std::size_t c = 0; c < f.columns(); ++c)
    for (int r = 0; r < rows; ++r) out.samples[c * n + rows + r] = f.at(c, r);
  return out;
}

HalfField restrict_half(const Field& f) {
  require(f.domain == Domain::Physical, ErrorCode::InvalidArgument, "restrict expects a physical-domain field");
  HalfField out = HalfField::zeros(f.grid);
  const int n = f.grid.points;
  const int rows = out.rows();
  for (std::size_t c = 0; c < out.columns(); ++c)
    for (int r = 0; r < rows; ++r) out.at(c, r) = f.samples[c * n + rows + r];
  return out;
}

NormResult halfspace_norm(const HalfField& f, const NormParams& params, const FilterBank& bank,
                          bool allow_out_of_range) {
  const bool inside = in_extension_range(params.s, params.p);
  if (!inside && !allow_out_of_range) {
    std::ostringstream os;
    os << "half-space norm with s = " << params.s << ", p = " << params.p
       << " is outside -1 + 1/p < s < 1/p; pass the override to obtain an upper bound";
    throw Error(ErrorCode::Domain, os.str());
  }
  NormResult r = besov_norm(extend_zero(f), params, bank);
  if (!inside) r.warnings |= kWarnValidityRange;
  return r;
}

}  // namespace besovheat
