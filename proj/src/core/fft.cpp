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

#include "core/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "core/error.hpp"

namespace besovheat::fft {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex g_plan_mutex;

struct PlanKey {
  std::vector<int> dims;
  int howmany;
  int stride;
  int sign;
  bool operator<(const PlanKey& o) const {
    return std::tie(dims, howmany, stride, sign) < std::tie(o.dims, o.howmany, o.stride, o.sign);
  }
};

struct PlanCache {
  std::map<PlanKey, fftw_plan> plans;
  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

fftw_plan get_plan(const PlanKey& key) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& plans = cache().plans;
  if (auto it = plans.find(key); it != plans.end()) return it->second;

  std::size_t total = 1;
  for (int d : key.dims) total *= static_cast<std::size_t>(d);
  total *= static_cast<std::size_t>(key.howmany);
  std::vector<cplx> scratch(std::max<std::size_t>(total, 1));
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_plan plan = nullptr;
  if (key.howmany == 1) {
    plan = fftw_plan_dft(static_cast<int>(key.dims.size()), key.dims.data(), buf, buf, key.sign, flags);
  } else {
    // Transform along the leading axis; `stride` interleaved columns.
    plan = fftw_plan_many_dft(1, key.dims.data(), key.howmany, buf, nullptr, key.stride, 1, buf, nullptr,
                              key.stride, 1, key.sign, flags);
  }
  require(plan != nullptr, ErrorCode::InvalidArgument, "fftw could not create a plan");
  plans.emplace(key, plan);
  return plan;
}

void scale(std::span<cplx> data, double factor) {
  for (auto& v : data) v *= factor;
}

}  // namespace

void transform(std::span<cplx> data, std::span<const int> dims, Direction dir) {
  if (dims.empty()) return;  // zero-dimensional: a single point
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, [](std::size_t a, int d) { return a * d; });
  require(data.size() == total, ErrorCode::InvalidArgument, "fft: data size does not match dimensions");
  const int sign = dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan plan = get_plan({std::vector<int>(dims.begin(), dims.end()), 1, 1, sign});
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
  if (dir == Direction::Inverse) scale(data, 1.0 / static_cast<double>(total));
}

void transform_leading(std::span<cplx> data, int length, int stride, Direction dir) {
  require(data.size() == static_cast<std::size_t>(length) * stride, ErrorCode::InvalidArgument,
          "fft: batched data size mismatch");
  const int sign = dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan plan = get_plan({{length}, stride, stride, sign});
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
  if (dir == Direction::Inverse) scale(data, 1.0 / static_cast<double>(length));
}

}  // namespace besovheat::fft
