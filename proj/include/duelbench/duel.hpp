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

#ifndef DUELBENCH_DUEL_HPP_
#define DUELBENCH_DUEL_HPP_

#include <string>
#include <utility>
#include <vector>

#include "duelbench/common.hpp"

namespace duelbench {

enum class Mode { kWelfare, kCost };

/// A finite two-player duel: a request distribution, a shared catalog of
/// pure strategies, and a value table. Both players pick a pure strategy;
/// when request w lands, the one whose strategy values w higher wins (in
/// cost mode, the one whose strategy costs less). Immutable once built.
class DuelInstance {
 public:
  /// values is row-major, one row per pure strategy, one column per request.
  /// The probability vector is renormalized when its sum is within 1e-9 of
  /// one and rejected otherwise.
  DuelInstance(std::vector<double> probabilities, int num_strategies,
               std::vector<double> values, Mode mode,
               std::vector<std::string> labels = {});

  int num_requests() const { return n_; }
  int num_strategies() const { return m_; }
  Mode mode() const { return mode_; }
  double probability(int request) const { return p_[request]; }
  const std::vector<double>& probabilities() const { return p_; }
  double value(int strategy, int request) const {
    return values_[static_cast<size_t>(strategy) * n_ + request];
  }
  /// Optional human-readable label per pure strategy (may be empty).
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<double> p_;
  std::vector<double> values_;
  Mode mode_;
  std::vector<std::string> labels_;
};

/// A probability distribution over the pure-strategy catalog.
class MixedStrategy {
 public:
  explicit MixedStrategy(std::vector<double> weights);
  static MixedStrategy point_mass(int strategy, int num_strategies);

  int size() const { return static_cast<int>(weights_.size()); }
  double weight(int strategy) const { return weights_[strategy]; }
  const std::vector<double>& weights() const { return weights_; }

  /// Strategies with weight above the support cutoff.
  std::vector<int> support(double cutoff = Tolerances::kSupport) const;

 private:
  std::vector<double> weights_;
};

/// Win-minus-loss probability on a single request:
///   sum_{s,t} x_s y_t sign(V[s][w] - V[t][w]),
/// with the comparison reversed in cost mode. Always in [-1, 1], and ties
/// contribute zero. Antisymmetric in (x, y) down to the last bit: terms are
/// accumulated over unordered strategy pairs so swapping the players negates
/// every term without reordering the sum.
double utility_omega(const DuelInstance& g, const MixedStrategy& x,
                     const MixedStrategy& y, int request);

/// Probability-weighted aggregate of utility_omega over all requests.
double utility(const DuelInstance& g, const MixedStrategy& x,
               const MixedStrategy& y);

/// Aggregate utility of mixed x against pure strategy t.
double utility_vs_pure(const DuelInstance& g, const MixedStrategy& x, int t);

/// The m-by-m pure-versus-pure payoff matrix, antisymmetric by construction.
std::vector<double> payoff_matrix(const DuelInstance& g);

/// Expected user value of x under the request distribution. Rejects cost
/// instances; use social_cost there.
double social_welfare(const DuelInstance& g, const MixedStrategy& x);
double social_welfare_pure(const DuelInstance& g, int strategy);

double social_cost(const DuelInstance& g, const MixedStrategy& x);
double social_cost_pure(const DuelInstance& g, int strategy);

/// Best pure strategy for the user: the welfare maximizer, or in cost mode
/// the cost minimizer (via optimal_cost).
std::pair<double, int> optimal_welfare(const DuelInstance& g);
std::pair<double, int> optimal_cost(const DuelInstance& g);

}  // namespace duelbench

#endif  // DUELBENCH_DUEL_HPP_
