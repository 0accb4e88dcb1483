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

#ifndef DUELBENCH_INSTANCES_HPP_
#define DUELBENCH_INSTANCES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "duelbench/duel.hpp"
#include "duelbench/random.hpp"

namespace duelbench {

/// Position valuation for ranking duels, either an explicit per-rank vector
/// or the linear family f(i) = c*(n - i) + d with c, d >= 0.
struct RankingValuation {
  static RankingValuation linear(double c, double d);
  static RankingValuation explicit_values(std::vector<double> values);

  /// Materializes f by 0-based rank for a given n.
  std::vector<double> by_rank(int n) const;

  bool is_linear = false;
  double c = 1.0;
  double d = 0.0;
  std::vector<double> values;
};

/// Pages, their request probabilities sorted descending (the constructor
/// sorts and records the permutation it applied), and a valuation.
class RankingSpec {
 public:
  RankingSpec(std::vector<double> probabilities, RankingValuation valuation,
              Mode mode = Mode::kWelfare);

  int n() const { return static_cast<int>(p_.size()); }
  const std::vector<double>& probabilities() const { return p_; }
  /// sort_order()[i] is the original index of the page now called i.
  const std::vector<int>& sort_order() const { return sort_order_; }
  const RankingValuation& valuation() const { return valuation_; }
  const std::vector<double>& f() const { return f_; }
  Mode mode() const { return mode_; }

  bool strictly_decreasing_f() const;
  bool strictly_increasing_f() const;

 private:
  std::vector<double> p_;
  std::vector<int> sort_order_;
  RankingValuation valuation_;
  std::vector<double> f_;  // by 0-based rank
  Mode mode_;
};

/// A ranking duel with its full permutation catalog. Each pure strategy is
/// stored as the page order: order[pos] = page, both 0-based; rank of a page
/// is its position plus one.
struct RankingDuel {
  RankingSpec spec;
  DuelInstance game;
  std::vector<std::vector<int>> catalog;  // lexicographic page orders

  int rank_of(int strategy, int page) const;  // 1-based rank
};

inline constexpr int kDefaultRankingCap = 8;

/// Builds the explicit ranking duel; refuses n above the cap (n! strategies).
RankingDuel ranking_duel(const RankingSpec& spec, int cap = kDefaultRankingCap);

/// q[page*n + i] = Pr[rank of page == i+1] under x.
std::vector<double> position_marginals(const RankingDuel& duel,
                                       const MixedStrategy& x);

/// Pr[page a ranked before page b] under x.
double pr_before(const RankingDuel& duel, const MixedStrategy& x, int a, int b);

// ---------------------------------------------------------------------------
// Trees
// ---------------------------------------------------------------------------

/// A binary tree; leaves carry request labels in the compression duel, and
/// every node carries a key in the binary-search duel. Root depth is 1, so
/// a child of the root has depth 2.
struct LeafTree {
  struct Node {
    int left = -1;
    int right = -1;
    int label = -1;  // request/key, 0-based; -1 on unlabeled internals
  };
  std::vector<Node> nodes;
  int root = -1;

  int depth_of_label(int label) const;
  /// Depth per label 0..n-1; throws if a label is missing.
  std::vector<int> depths(int n) const;
  bool full_binary() const;
  /// Nested-parenthesis form with 1-based labels, e.g. "((1,2),(3,4))".
  std::string to_string() const;
};

/// All binary search trees over keys 0..n-1 (in-order sorted). Refuses when
/// the Catalan count exceeds 1e6 trees (n <= 13).
std::vector<LeafTree> enumerate_bsts(int n);

/// All full binary trees with n labeled leaves: every ordered shape times
/// every assignment of the n requests to the leaf slots. Mirrored duplicates
/// are kept; they value every request identically anyway. Refuses above 1e6
/// strategies (n <= 7).
std::vector<LeafTree> enumerate_leaf_trees(int n);

std::uint64_t catalan_number(int n);

/// The four-request compression construction: uniform requests, value 1 at
/// depth <= 2, epsilon/16 at depth 3, 0 deeper.
struct CompressionDuel {
  double epsilon;
  DuelInstance game;
  std::vector<LeafTree> catalog;
  LeafTree opt_tree;    // one leaf each at depths 2 and 3, two at depth 4
  LeafTree xstar_tree;  // all four leaves at depth 3
  int opt_index;
  int xstar_index;
};

CompressionDuel compression_duel_epsilon(double epsilon);

/// The binary-search construction at scale: n = 3 * 2^k keys with
/// k = ceil(lg(1/beta)) + 2, a heavy first key, and a three-block tree as
/// the designated guarantee strategy. Pure strategies (all BSTs over n keys)
/// are never enumerated; checks are sampled.
class BstDuel {
 public:
  BstDuel(double beta, double epsilon = 1e-9);

  int k() const { return k_; }
  long long n() const { return n_; }
  double beta() const { return beta_; }
  double epsilon() const { return epsilon_; }
  double probability(long long key) const;
  double value_of_depth(int d) const;

  const LeafTree& xstar() const { return xstar_; }
  const std::vector<int>& xstar_depths() const { return xstar_depths_; }

  double sw_xstar() const;
  /// Root the heaviest key: social welfare at least p_1.
  double sw_opt_lower_bound() const { return probability(0); }
  double poc_bound() const { return 5.0 / static_cast<double>(n_); }

  /// Aggregate utility of xstar against a tree given by its depth vector.
  double utility_xstar_vs(const std::vector<int>& depths) const;

  /// Depth vector of a uniformly random BST over the n keys.
  std::vector<int> sample_bst_depths(Rng& rng) const;

 private:
  int k_;
  long long n_;
  double beta_;
  double epsilon_;
  LeafTree xstar_;
  std::vector<int> xstar_depths_;
  std::vector<long double> catalan_;  // 0..n, long double to cover n = 48
};

/// The three-page ranking example whose half-half mix of (a,c,b) and
/// (b,c,a) guarantees a draw against every permutation.
struct AppendixExample {
  RankingDuel duel;
  MixedStrategy xstar;
};

AppendixExample appendix_example();

/// Three near-uniform pages where the welfare-optimal order loses 0.65 of
/// the time to a rotation.
RankingDuel footnote_example();

}  // namespace duelbench

#endif  // DUELBENCH_INSTANCES_HPP_
