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

#include "duelbench/trigger.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "duelbench/minimax.hpp"

namespace duelbench {

TriggerView::TriggerView(const DuelInstance& g, double alpha)
    : game_(g), alpha_(alpha) {
  if (!(alpha >= 0.0)) {
    throw std::invalid_argument("trigger threshold must be nonnegative");
  }
  if (g.mode() != Mode::kWelfare) {
    throw std::invalid_argument("trigger views are defined on welfare instances");
  }
}

double TriggerView::pseudo_welfare_pure(int strategy) const {
  double total = 0.0;
  for (int w = 0; w < game_.num_requests(); ++w) {
    if (triggered(strategy, w)) total += game_.probability(w);
  }
  return total;
}

double TriggerView::pseudo_welfare(const MixedStrategy& x) const {
  double total = 0.0;
  for (int s = 0; s < game_.num_strategies(); ++s) {
    if (x.weight(s) == 0.0) continue;
    total += x.weight(s) * pseudo_welfare_pure(s);
  }
  return total;
}

std::vector<double> distinct_values(const DuelInstance& g) {
  std::vector<double> vals;
  vals.reserve(static_cast<size_t>(g.num_strategies()) * g.num_requests());
  for (int s = 0; s < g.num_strategies(); ++s) {
    for (int w = 0; w < g.num_requests(); ++w) vals.push_back(g.value(s, w));
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

double poc_alpha_with(const DuelInstance& g, const MixedStrategy& worst_minimax,
                      int opt_strategy, double alpha) {
  TriggerView view(g, alpha);
  double denom = view.pseudo_welfare_pure(opt_strategy);
  if (denom == 0.0) return 1.0;
  return view.pseudo_welfare(worst_minimax) / denom;
}

double poc_alpha(const DuelInstance& g, double alpha) {
  MinimaxResult worst = worst_minimax_welfare(g);
  int opt = optimal_welfare(g).second;
  return poc_alpha_with(g, worst.strategy, opt, alpha);
}

double zero_one_bound_with(const DuelInstance& g,
                           const MixedStrategy& worst_minimax,
                           int opt_strategy) {
  double bound = 1.0;  // alpha = 0 and alpha beyond the largest value
  for (double v : distinct_values(g)) {
    if (v <= 0.0) continue;  // the zero level triggers everywhere
    bound = std::min(bound, poc_alpha_with(g, worst_minimax, opt_strategy, v));
  }
  return bound;
}

double zero_one_bound(const DuelInstance& g) {
  MinimaxResult worst = worst_minimax_welfare(g);
  int opt = optimal_welfare(g).second;
  return zero_one_bound_with(g, worst.strategy, opt);
}

LayerDecomposition layer_decomposition_check(const DuelInstance& g,
                                             const MixedStrategy& x) {
  LayerDecomposition out;
  out.direct = social_welfare(g, x);
  double prev = 0.0;
  double total = 0.0;
  for (double v : distinct_values(g)) {
    if (v <= 0.0) continue;
    TriggerView view(g, v);
    total += (v - prev) * view.pseudo_welfare(x);
    prev = v;
  }
  out.layered = total;
  out.equal = std::abs(out.direct - out.layered) <= 1e-10;
  return out;
}

}  // namespace duelbench
