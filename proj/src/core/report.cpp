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

#include "core/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"

namespace besovheat {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorCode::InvalidArgument, "regression needs two or more points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  require(sxx > 0.0, ErrorCode::InvalidArgument, "regression abscissae are all equal");
  return sxy / sxx;
}

SweepRow& SweepReport::add(std::vector<double> params, double measured, double envelope, std::string regime,
                           std::vector<double> extras) {
  SweepRow row;
  row.params = std::move(params);
  row.measured = measured;
  row.envelope = envelope;
  row.ratio = envelope > 0.0 ? measured / envelope : std::numeric_limits<double>::quiet_NaN();
  row.extras = std::move(extras);
  row.regime = std::move(regime);
  rows.push_back(std::move(row));
  return rows.back();
}

void SweepReport::add_slope(std::string name, double value, double target, double tolerance) {
  SlopeResult s{std::move(name), value, target, tolerance, std::abs(value - target) <= tolerance};
  if (!s.pass) pass = false;
  slopes.push_back(std::move(s));
}

namespace {

bool usable(const SweepRow& r, const std::string& regime) {
  if (!regime.empty() && r.regime != regime) return false;
  if (r.flags.find("failed") != std::string::npos || r.flags.find("degenerate") != std::string::npos) return false;
  return std::isfinite(r.ratio) && r.ratio > 0.0;
}

}  // namespace

double SweepReport::max_ratio(const std::string& regime) const {
  double m = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : rows)
    if (usable(r, regime)) m = std::isnan(m) ? r.ratio : std::max(m, r.ratio);
  return m;
}

double SweepReport::min_ratio(const std::string& regime) const {
  double m = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : rows)
    if (usable(r, regime)) m = std::isnan(m) ? r.ratio : std::min(m, r.ratio);
  return m;
}

bool SweepReport::any_failed() const {
  return std::any_of(rows.begin(), rows.end(),
                     [](const SweepRow& r) { return r.flags.find("failed") != std::string::npos; });
}

std::string SweepReport::to_csv() const {
  std::ostringstream os;
  for (const auto& n : param_names) os << n << ',';
  os << "measured,envelope,ratio";
  for (const auto& n : extra_names) os << ',' << n;
  os << ",regime,flags\n";
  for (const auto& r : rows) {
    for (double v : r.params) os << format_double(v) << ',';
    os << format_double(r.measured) << ',' << format_double(r.envelope) << ',' << format_double(r.ratio);
    for (double v : r.extras) os << ',' << format_double(v);
    os << ',' << r.regime << ',' << r.flags << '\n';
  }
  return os.str();
}

std::string SweepReport::summary_json() const {
  using nlohmann::ordered_json;
  auto num = [](double v) -> ordered_json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  ordered_json j;
  j["schema"] = 1;
  j["estimate"] = estimate;
  std::set<std::string> regimes;
  for (const auto& r : rows) regimes.insert(r.regime);
  j["regime"] = regimes.size() == 1 ? *regimes.begin() : std::string("mixed");
  j["max_ratio"] = num(max_ratio());
  ordered_json sl = ordered_json::object();
  for (const auto& s : slopes)
    sl[s.name] = {{"value", num(s.value)}, {"target", s.target}, {"tolerance", s.tolerance}, {"pass", s.pass}};
  j["slopes"] = sl;
  j["pass"] = pass && !any_failed();
  ordered_json per = ordered_json::array();
  for (const auto& name : regimes) {
    std::size_t count = 0;
    for (const auto& r : rows) count += r.regime == name;
    per.push_back({{"regime", name}, {"max_ratio", num(max_ratio(name))}, {"min_ratio", num(min_ratio(name))},
                   {"rows", count}});
  }
  j["regimes"] = per;
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : metadata) meta[k] = v;
  j["metadata"] = meta;
  return j.dump(2);
}

}  // namespace besovheat
