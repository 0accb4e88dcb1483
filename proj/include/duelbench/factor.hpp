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
// The factor-revealing pipeline. For every k it builds a small LP over
// subset probabilities p_1 >= ... >= p_k and pair contributions h_ab whose
// optimum lower-bounds the welfare ratio of every linear ranking duel with
// n >= k pages. The dual program certifies that optimum; the published
// k = 10 dual table is re-checked here in exact rational arithmetic.

#ifndef DUELBENCH_FACTOR_HPP_
#define DUELBENCH_FACTOR_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "duelbench/instances.hpp"
#include "duelbench/lp.hpp"

namespace duelbench::factor {

/// Divisors of the two slanted h lower bounds: h >= (p_a - p_b) / 1.208 and
/// h >= (2 p_a - p_b) / 3.2. Fixed constants of the LP family, not tuning
/// knobs.
inline constexpr double kDiffBoundDivisor = 1.208;
inline constexpr double kTwoToOneBoundDivisor = 3.2;

struct ZibaeqResult {
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
  bool equal = false;
};

/// Exact double-counting identity used by the subset-aggregation step:
///   sum_{i=0}^{k-1} C(a-1,i) * C(n-a,k-i-1) * (k-i-1)  ==  (n-a) * C(n-2,k-2).
/// Both sides are computed independently in exact integer arithmetic.
ZibaeqResult zibaeq_identity(int n, int a, int k);

/// h[a*n+b] for page pairs a < b:
///   p_a Pr[a before b] + p_b Pr[b before a].
std::vector<double> pairwise_h(const RankingDuel& duel, const MixedStrategy& x);

/// True iff max{p_b, p_a - 2 p_b + 2 p_b^2 / p_a} dominates the four-piece
/// linear relaxation of itself, for 0 <= p_b <= p_a <= 1.
bool check_khat(double p_a, double p_b);

/// The primal lower-bound LP at subset size k: minimize sum of h_ab subject
/// to the normalization sum_a p_a (k-a) = 1 and the four h lower bounds per
/// pair. Row order: normalization first, then (beta, gamma, lambda, rho)
/// blocks per pair (a, b) in lexicographic order; variables are p_1..p_k
/// then h_ab in the same pair order.
lp::RationalLp build_lp4_exact(int k);
lp::LinearProgram build_lp4(int k);

/// Its dual: maximize theta subject to one constraint per p_a and a
/// unit-capacity constraint per pair. Variable order: theta, then
/// (beta, gamma, lambda, rho) per pair.
lp::LinearProgram build_dual_lp5(int k);

/// Optimal objective of the lower-bound LP; solved in dual form (the dual
/// has k + C(k,2) rows instead of 4 C(k,2) + 1, and its slack basis is
/// feasible outright). Equals the primal optimum by strong duality.
double alpha_k(int k);

/// Direct primal solve, for cross-checks.
lp::Solution solve_lp4_primal(int k);

/// The published k = 10 dual table as an exact certificate for the primal
/// LP (row multipliers in the row order of build_lp4_exact).
lp::RationalCertificate paper_certificate();

struct PaperCertificateReport {
  bool feasible = false;
  bool bound_matches = false;
  Rational max_violation;
  std::string worst_constraint;
  Rational claimed_bound;
  Rational dual_objective;
};

/// Re-checks the published table against the k = 10 dual in exact rational
/// arithmetic. Residuals are reported as found; the table values are never
/// adjusted.
PaperCertificateReport verify_paper_certificate();

struct AggregationCheck {
  double min_subset_ratio = 0.0;
  double global_ratio = 0.0;
  bool implication_holds = false;  ///< global >= min subset ratio
};

/// For every k-subset of pages, the ratio of its pair contributions to its
/// positional optimum; the global welfare ratio must dominate the worst
/// subset. Needs the f(i) = n - i valuation and C(n,k) <= 1e5.
AggregationCheck aggregation_check(const RankingDuel& duel,
                                   const MixedStrategy& x, int k);

}  // namespace duelbench::factor

#endif  // DUELBENCH_FACTOR_HPP_
