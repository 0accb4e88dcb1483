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
// Executable checkers for the structural facts that hold on every minimax
// strategy of a ranking duel. Each checker evaluates one inequality on one
// strategy; the regression runner sweeps them across solver-produced
// minimax strategies. A violation on a certified-minimax strategy falsifies
// either the solver or the checker, so it is a hard failure.

#ifndef DUELBENCH_STRUCTURE_HPP_
#define DUELBENCH_STRUCTURE_HPP_

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "duelbench/instances.hpp"

namespace duelbench::structure {

inline constexpr double kSlackTol = 1e-8;

enum class Outcome { kHolds, kViolated, kVacuous };

struct CheckResult {
  Outcome outcome = Outcome::kVacuous;
  double slack = 0.0;  ///< inequality LHS minus RHS; negative means violated

  bool ok() const { return outcome != Outcome::kViolated; }
};

/// Order statistics of one page pair under a strategy.
struct PairOrderStats {
  double pr_ab = 0.0;  ///< Pr[a ranked before b]
  double pr_ba = 0.0;
  std::vector<double> marginal_a;  ///< position marginals of a (0-based)
  std::vector<double> marginal_b;
  std::vector<int> support_ab;  ///< support permutations with a before b
  std::vector<int> support_ba;
};

PairOrderStats pair_order_stats(const RankingDuel& duel, const MixedStrategy& x,
                                int a, int b);

/// Swap inequality. For a support permutation ranking b at i and a at j > i
/// (with p_a >= p_b), the interval mass of b must dominate that of a by the
/// ratio p_a / p_b:
///   Pr[i < pi(b) <= j] + Pr[i <= pi(b) < j]
///     >= (p_a / p_b) (Pr[i < pi(a) <= j] + Pr[i <= pi(a) < j]).
/// Vacuous when p_b = 0 or when pi_ba does not place b before a.
CheckResult check_swap_inequality(const RankingDuel& duel,
                                  const MixedStrategy& x, int a, int b,
                                  int pi_ba);

/// Greedy disjoint-interval selection over the support permutations that
/// rank b before a: repeatedly keep the one with the rightmost a and drop
/// everything overlapping its [rank(b), rank(a)] interval.
struct IntervalCover {
  std::vector<int> selected;                    ///< catalog indices
  std::vector<std::pair<int, int>> intervals;   ///< [rank(b), rank(a)]
};

IntervalCover interval_cover(const RankingDuel& duel, const MixedStrategy& x,
                             int a, int b);

/// 2 when pi_prime ranks c strictly inside the [rank(b), rank(a)] interval
/// of pi, 1 on an endpoint, 0 outside.
int interval_hits(const RankingDuel& duel, int pi_prime, int c, int pi, int a,
                  int b);

/// Pair-order inequality: Pr[a before b] >= (p_a / (2 p_b) - 1) Pr[b before a].
CheckResult check_pair_order(const RankingDuel& duel, const MixedStrategy& x,
                             int a, int b);

/// Pair contribution lower bounds:
///   h_ab >= max{p_b, p_a - 2 p_b + 2 p_b^2 / p_a}.
CheckResult check_h_bounds(const RankingDuel& duel, const MixedStrategy& x,
                           int a, int b);

struct QuarterCheck {
  bool holds = false;
  double worst_slack = std::numeric_limits<double>::infinity();
  /// The swap-to-a-triggered-position responses must not beat x.
  double worst_response_utility = 0.0;
  int k = 0;
};

/// At threshold alpha with k triggered positions and q_w the probability
/// that page w lands on a triggered position:
///   p_i (1 - q_i)^2 <= sum_w 2 p_w q_w / k      for the k heaviest pages,
/// and the explicit swap responses x'_i satisfy utility(x, x'_i) >= 0.
QuarterCheck check_quarter_inequalities(const RankingDuel& duel,
                                        const MixedStrategy& x, double alpha);

struct LemmaTally {
  int pass = 0;
  int fail = 0;
  int vacuous = 0;
  double worst_slack = std::numeric_limits<double>::infinity();

  void add(const CheckResult& r);
};

struct StructureReport {
  std::uint64_t seed = 0;
  int instances = 0;
  LemmaTally swap;
  LemmaTally pair_order;
  LemmaTally h_bounds;
  LemmaTally quarter;
  int interval_checks = 0;
  int interval_failures = 0;
  bool all_pass = false;
};

/// Solves `instances` random ranking duels (sizes n_min..n_max, seeded) to
/// worst-welfare minimax strategies and runs every checker on each.
StructureReport run_regression(std::uint64_t seed, int instances, int n_min,
                               int n_max, int threads = 0);

}  // namespace duelbench::structure

#endif  // DUELBENCH_STRUCTURE_HPP_
