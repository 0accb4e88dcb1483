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
//
// Thresholded (0-1) views of a duel. Any valuation is a layered mixture of
// its own 0-1 threshold views, which reduces welfare-ratio bounds for
// arbitrary values to bounds for indicator values.

#ifndef DUELBENCH_TRIGGER_HPP_
#define DUELBENCH_TRIGGER_HPP_

#include <vector>

#include "duelbench/duel.hpp"

namespace duelbench {

/// The 0-1 view of an instance at threshold alpha: a value triggers iff it
/// is at least alpha. Raising alpha never turns a 0 into a 1.
class TriggerView {
 public:
  TriggerView(const DuelInstance& g, double alpha);

  double alpha() const { return alpha_; }
  const DuelInstance& instance() const { return game_; }
  bool triggered(int strategy, int request) const {
    return game_.value(strategy, request) >= alpha_;
  }

  /// sum_w p_w [v_w(s) >= alpha], in [0, 1].
  double pseudo_welfare_pure(int strategy) const;
  double pseudo_welfare(const MixedStrategy& x) const;

 private:
  const DuelInstance& game_;
  double alpha_;
};

/// Sorted distinct entries of the value table.
std::vector<double> distinct_values(const DuelInstance& g);

/// Pseudo-welfare ratio of the given worst-welfare minimax strategy to the
/// given welfare-optimal pure strategy at threshold alpha, with the
/// convention that a zero denominator reads as 1. Both reference strategies
/// are picked under the original values, not the thresholded ones.
double poc_alpha_with(const DuelInstance& g, const MixedStrategy& worst_minimax,
                      int opt_strategy, double alpha);

/// Same, computing the worst-welfare minimax strategy and optimum first.
double poc_alpha(const DuelInstance& g, double alpha);

/// min over thresholds of poc_alpha. The trigger view is piecewise constant
/// in alpha and only changes at value breakpoints, so scanning the distinct
/// values is the exact minimum over all alpha >= 0; it lower-bounds the
/// welfare ratio of the game.
double zero_one_bound(const DuelInstance& g);
double zero_one_bound_with(const DuelInstance& g,
                           const MixedStrategy& worst_minimax, int opt_strategy);

struct LayerDecomposition {
  double direct = 0.0;   ///< SW(x)
  double layered = 0.0;  ///< sum over layers of width * pseudo-welfare
  bool equal = false;    ///< within 1e-10
};

/// Rebuilds SW(x) as the exact finite layer sum
///   sum_j (u_j - u_{j-1}) * pseudo_welfare(x, u_j)
/// over the sorted distinct values u_j (u_0 = 0).
LayerDecomposition layer_decomposition_check(const DuelInstance& g,
                                             const MixedStrategy& x);

}  // namespace duelbench

#endif  // DUELBENCH_TRIGGER_HPP_
