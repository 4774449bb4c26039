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

#include "core/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "core/error.hpp"

namespace besovheat {
namespace {

// Reference rule on [-1, 1], cached per order.
const QuadratureRule& reference_rule(int n) {
  static std::mutex mutex;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  QuadratureRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 1; i <= half; ++i) {
    double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    r.nodes[i - 1] = -z;
    r.nodes[n - i] = z;
    r.weights[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    r.weights[n - i] = r.weights[i - 1];
  }
  return cache.emplace(n, std::move(r)).first->second;
}

}  // namespace

void QuadratureRule::append(const QuadratureRule& other) {
  nodes.insert(nodes.end(), other.nodes.begin(), other.nodes.end());
  weights.insert(weights.end(), other.weights.begin(), other.weights.end());
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  require(n >= 1, ErrorCode::InvalidArgument, "Gauss-Legendre order must be positive");
  const QuadratureRule& ref = reference_rule(n);
  QuadratureRule r;
  r.nodes.resize(ref.nodes.size());
  r.weights.resize(ref.weights.size());
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
    r.nodes[i] = mid + half * ref.nodes[i];
    r.weights[i] = half * ref.weights[i];
  }
  return r;
}

QuadratureRule composite_gauss(const std::vector<double>& edges, int per_panel) {
  QuadratureRule r;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) r.append(gauss_legendre(per_panel, edges[i], edges[i + 1]));
  return r;
}

QuadratureRule dyadic_annulus_rule(int nodes_per_octave) {
  return composite_gauss({0.5, 1.0, 2.0}, nodes_per_octave);
}

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * f(rule.nodes[i]);
  return s;
}

}  // namespace besovheat
