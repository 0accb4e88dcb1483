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

#ifndef DUELBENCH_MINIMAX_HPP_
#define DUELBENCH_MINIMAX_HPP_

#include <utility>
#include <vector>

#include "duelbench/duel.hpp"
#include "duelbench/instances.hpp"
#include "duelbench/lp.hpp"

namespace duelbench {

/// The strategies guaranteeing payoff >= 0 against every pure opponent.
/// Because both players share the catalog and the payoff is antisymmetric,
/// the game value is 0 and this set is exactly the minimax set — and it is
/// never empty.
class MinimaxPolytope {
 public:
  explicit MinimaxPolytope(const DuelInstance& g);

  const DuelInstance& instance() const { return game_; }
  const std::vector<double>& payoff() const { return payoff_; }
  double payoff_at(int s, int t) const {
    return payoff_[static_cast<size_t>(s) * m_ + t];
  }
  int size() const { return m_; }

  /// min_t utility(x, t): the guarantee a strategy achieves.
  double guarantee(const MixedStrategy& x) const;

  /// LP optimizing expected pure-strategy score over the polytope.
  lp::LinearProgram objective_lp(const std::vector<double>& score,
                                 lp::Sense sense) const;

 private:
  const DuelInstance& game_;
  int m_;
  std::vector<double> payoff_;
};

/// Value of the symmetric matrix game; 0 within 1e-8 for every duel.
double game_value(const DuelInstance& g);

struct MinimaxResult {
  double value = 0.0;      ///< welfare (or cost) of the optimizer
  MixedStrategy strategy;  ///< an optimizer; ties broken by the pivot order
  double guarantee = 0.0;  ///< min over pure opponents of utility(x, t)
};

MinimaxResult worst_minimax_welfare(const DuelInstance& g);
MinimaxResult best_minimax_welfare(const DuelInstance& g);
/// Cost model: the *highest*-cost minimax strategy.
MinimaxResult worst_minimax_cost(const DuelInstance& g);

/// worst minimax welfare / best pure welfare, in [0, 1].
double price_of_competition(const DuelInstance& g);
/// worst minimax cost / best pure cost, >= 1.
double price_of_competition_cost(const DuelInstance& g);

/// Position marginals q[page][pos] of a distribution over permutations;
/// rows and columns sum to one.
struct MarginalMatrix {
  int n = 0;
  std::vector<double> q;  // q[page * n + pos]

  double at(int page, int pos) const {
    return q[static_cast<size_t>(page) * n + pos];
  }
  /// Worst row/column-sum deviation from 1 and entry negativity.
  double stochasticity_residual() const;
};

enum class MarginalObjective { kWorstWelfare, kBestWelfare };

struct MarginalResult {
  double value = 0.0;
  MarginalMatrix marginals;
};

/// Ranking-duel minimax in marginal form: n^2 position-probability
/// variables instead of n! permutation weights. The guarantee against every
/// permutation is folded in by dualizing the opponent's inner assignment
/// problem, so the whole thing stays one LP. Needs a strictly decreasing
/// valuation so that value comparisons reduce to rank comparisons.
MarginalResult ranking_minimax_marginal(const RankingSpec& spec,
                                        MarginalObjective objective);

struct BirkhoffTerm {
  double weight = 0.0;
  std::vector<int> position_of_page;  // page -> 0-based position
};

/// Writes a doubly stochastic matrix as a convex combination of permutation
/// matrices (at most n^2 - 2n + 2 of them). Permutations are extracted
/// greedily by maximum-bottleneck perfect matching on the support; residual
/// entries below 1e-10 are zeroed.
std::vector<BirkhoffTerm> birkhoff_decompose(const MarginalMatrix& q,
                                             double tol = 1e-7);

}  // namespace duelbench

#endif  // DUELBENCH_MINIMAX_HPP_
