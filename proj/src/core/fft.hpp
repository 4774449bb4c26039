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

#include <complex>
#include <span>
#include <vector>

namespace besovheat::fft {

using cplx = std::complex<double>;

enum class Direction { Forward, Inverse };

// Unnormalized multi-dimensional DFT over a row-major array (last axis fastest).
// Forward uses exp(-i k x); Inverse uses exp(+i k x) and divides by the total size.
void transform(std::span<cplx> data, std::span<const int> dims, Direction dir);

// Batched 1-D transform along the leading axis of a [length][stride] array.
void transform_leading(std::span<cplx> data, int length, int stride, Direction dir);

}  // namespace besovheat::fft
