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

#include <functional>
#include <vector>

namespace besovheat {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  void append(const QuadratureRule& other);
};

// n-point Gauss-Legendre rule on [a, b] (Newton iteration on P_n).
QuadratureRule gauss_legendre(int n, double a, double b);

// Composite rule: `per_panel` Gauss points on each panel [edges[i], edges[i+1]].
QuadratureRule composite_gauss(const std::vector<double>& edges, int per_panel);

// Gauss points per dyadic octave over the annulus 1/2 <= |x| <= 2 (positive half only).
QuadratureRule dyadic_annulus_rule(int nodes_per_octave);

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f);

}  // namespace besovheat
