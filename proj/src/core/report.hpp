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

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace besovheat {

struct SweepRow {
  std::vector<double> params;  // aligned with SweepReport::param_names
  double measured = 0.0;
  double envelope = 0.0;
  double ratio = 0.0;
  std::vector<double> extras;  // aligned with SweepReport::extra_names
  std::string regime;
  std::string flags;  // '|'-separated; "failed" marks a row whose measurement threw
};

struct SlopeResult {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Tabular record of measured quantities against bound shapes.
struct SweepReport {
  std::string estimate;
  std::vector<std::string> param_names;
  std::vector<std::string> extra_names;
  std::vector<SweepRow> rows;
  std::vector<SlopeResult> slopes;
  std::map<std::string, std::string> metadata;
  bool pass = true;

  // Adds a row; ratio = measured / envelope (NaN when the envelope is not positive).
  SweepRow& add(std::vector<double> params, double measured, double envelope, std::string regime = "",
                std::vector<double> extras = {});
  void add_slope(std::string name, double value, double target, double tolerance);

  // max / min of the finite positive ratios of the non-failed rows (optionally one regime).
  double max_ratio(const std::string& regime = "") const;
  double min_ratio(const std::string& regime = "") const;
  bool any_failed() const;

  // Header: params..., measured, envelope, ratio, extras..., regime, flags. Numbers use %.17e.
  std::string to_csv() const;
  // {"schema":1, "estimate", "regime", "max_ratio", "slopes", "pass", "regimes", "metadata"}.
  std::string summary_json() const;
};

std::string format_double(double v);

// Least-squares slope of y against x.
double regression_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace besovheat
