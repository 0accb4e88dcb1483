// Copyright 2026 The Duelbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DUELBENCH_COMMON_HPP_
#define DUELBENCH_COMMON_HPP_

#include <stdexcept>
#include <string>

namespace duelbench {

/// Numerical tolerances shared by the whole toolkit. Stated once, used
/// everywhere; reports embed them so results are reproducible.
struct Tolerances {
  /// Absolute tolerance on feasibility residuals (primal and dual).
  static constexpr double kFeas = 1e-9;
  /// Relative tolerance on the primal/dual objective gap, scaled by 1+|obj|.
  static constexpr double kGap = 1e-7;
  /// Mixed-strategy weights above this count as support.
  static constexpr double kSupport = 1e-10;
  /// Slack allowed on game values and minimax guarantees.
  static constexpr double kValue = 1e-8;
};

/// An enumeration limit was hit. The message names the cap so callers can
/// decide whether to raise it or switch to a non-enumerating code path.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The pivoting loop could not make progress within its iteration budget.
class NumericalBreakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance file or report request.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Library version, git-describe style.
const char* version_string();

}  // namespace duelbench

#endif  // DUELBENCH_COMMON_HPP_
