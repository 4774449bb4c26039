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

#include <stdexcept>
#include <string>

namespace besovheat {

enum class ErrorCode {
  InvalidArgument = 1,
  OutOfBand,
  GridMismatch,
  Domain,
  Convergence,
  Precondition,
  Io,
  Config,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

// Non-fatal conditions attached to computed quantities.
enum Warning : unsigned {
  kWarnNone = 0,
  kWarnLowLeftover = 1u << 0,    // leftover low-pass block carries > threshold of the norm
  kWarnHighLeftover = 1u << 1,   // leftover high-pass block carries > threshold of the norm
  kWarnValidityRange = 1u << 2,  // half-space norm evaluated outside -1+1/p < s < 1/p
  kWarnTimeLowLeftover = 1u << 3,
  kWarnTimeHighLeftover = 1u << 4,
};

std::string describe_warnings(unsigned flags);

}  // namespace besovheat
