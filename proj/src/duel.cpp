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

#include "duelbench/duel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace duelbench {

namespace {

double sign_of(double a, double b) {
  if (a > b) return 1.0;
  if (a < b) return -1.0;
  return 0.0;
}

}  // namespace

DuelInstance::DuelInstance(std::vector<double> probabilities,
                           int num_strategies, std::vector<double> values,
                           Mode mode, std::vector<std::string> labels)
    : n_(static_cast<int>(probabilities.size())),
      m_(num_strategies),
      p_(std::move(probabilities)),
      values_(std::move(values)),
      mode_(mode),
      labels_(std::move(labels)) {
  if (n_ < 1 || m_ < 1) {
    throw std::invalid_argument("an instance needs at least one request and one strategy");
  }
  if (values_.size() != static_cast<size_t>(m_) * n_) {
    throw std::invalid_argument("value table shape does not match (strategies x requests)");
  }
  if (!labels_.empty() && labels_.size() != static_cast<size_t>(m_)) {
    throw std::invalid_argument("label count does not match the strategy catalog");
  }
  double sum = 0.0;
  for (double p : p_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("request probabilities must be nonnegative and finite");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("request probabilities must sum to 1 within 1e-9");
  }
  if (sum != 1.0) {
    for (double& p : p_) p /= sum;
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("values must be finite and nonnegative");
    }
  }
}

MixedStrategy::MixedStrategy(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw std::invalid_argument("a mixed strategy needs at least one weight");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= -Tolerances::kSupport) || !std::isfinite(w)) {
      throw std::invalid_argument("mixed-strategy weights must be nonnegative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("mixed-strategy weights must sum to 1");
  }
  for (double& w : weights_) {
    if (w < 0.0) w = 0.0;  // clip solver dust
    w /= sum;
  }
}

MixedStrategy MixedStrategy::point_mass(int strategy, int num_strategies) {
  std::vector<double> w(num_strategies, 0.0);
  w.at(strategy) = 1.0;
  return MixedStrategy(std::move(w));
}

std::vector<int> MixedStrategy::support(double cutoff) const {
  std::vector<int> out;
  for (int s = 0; s < size(); ++s) {
    if (weights_[s] > cutoff) out.push_back(s);
  }
  return out;
}

namespace {

// Accumulates sum over unordered support pairs of
//   sign_w(s, t) * (x_s y_t - x_t y_s),
// which makes utility(x, y) == -utility(y, x) bit for bit.
template <typename SignFn>
double pair_sum(const MixedStrategy& x, const MixedStrategy& y, SignFn sign) {
  std::vector<int> sup;
  for (int s = 0; s < x.size(); ++s) {
    if (x.weight(s) != 0.0 || y.weight(s) != 0.0) sup.push_back(s);
  }
  double total = 0.0;
  for (size_t a = 0; a < sup.size(); ++a) {
    for (size_t b = a + 1; b < sup.size(); ++b) {
      int s = sup[a], t = sup[b];
      double sg = sign(s, t);
      if (sg == 0.0) continue;
      total += sg * (x.weight(s) * y.weight(t) - x.weight(t) * y.weight(s));
    }
  }
  return total;
}

void check_shapes(const DuelInstance& g, const MixedStrategy& x,
                  const MixedStrategy& y) {
  if (x.size() != g.num_strategies() || y.size() != g.num_strategies()) {
    throw std::invalid_argument("strategy size does not match the catalog");
  }
}

}  // namespace

double utility_omega(const DuelInstance& g, const MixedStrategy& x,
                     const MixedStrategy& y, int request) {
  check_shapes(g, x, y);
  if (request < 0 || request >= g.num_requests()) {
    throw std::invalid_argument("request index out of range");
  }
  const double orient = g.mode() == Mode::kCost ? -1.0 : 1.0;
  return pair_sum(x, y, [&](int s, int t) {
    return orient * sign_of(g.value(s, request), g.value(t, request));
  });
}

double utility(const DuelInstance& g, const MixedStrategy& x,
               const MixedStrategy& y) {
  check_shapes(g, x, y);
  const double orient = g.mode() == Mode::kCost ? -1.0 : 1.0;
  return pair_sum(x, y, [&](int s, int t) {
    double agg = 0.0;
    for (int w = 0; w < g.num_requests(); ++w) {
      agg += g.probability(w) * sign_of(g.value(s, w), g.value(t, w));
    }
    return orient * agg;
  });
}

double utility_vs_pure(const DuelInstance& g, const MixedStrategy& x, int t) {
  if (x.size() != g.num_strategies()) {
    throw std::invalid_argument("strategy size does not match the catalog");
  }
  const double orient = g.mode() == Mode::kCost ? -1.0 : 1.0;
  double total = 0.0;
  for (int s = 0; s < g.num_strategies(); ++s) {
    if (x.weight(s) == 0.0) continue;
    double agg = 0.0;
    for (int w = 0; w < g.num_requests(); ++w) {
      agg += g.probability(w) * sign_of(g.value(s, w), g.value(t, w));
    }
    total += orient * x.weight(s) * agg;
  }
  return total;
}

std::vector<double> payoff_matrix(const DuelInstance& g) {
  const int m = g.num_strategies();
  const double orient = g.mode() == Mode::kCost ? -1.0 : 1.0;
  std::vector<double> u(static_cast<size_t>(m) * m, 0.0);
  for (int s = 0; s < m; ++s) {
    for (int t = s + 1; t < m; ++t) {
      double agg = 0.0;
      for (int w = 0; w < g.num_requests(); ++w) {
        agg += g.probability(w) * sign_of(g.value(s, w), g.value(t, w));
      }
      agg *= orient;
      u[static_cast<size_t>(s) * m + t] = agg;
      u[static_cast<size_t>(t) * m + s] = -agg;
    }
  }
  return u;
}

double social_welfare_pure(const DuelInstance& g, int strategy) {
  if (g.mode() != Mode::kWelfare) {
    throw std::invalid_argument("social_welfare called on a cost instance");
  }
  double sw = 0.0;
  for (int w = 0; w < g.num_requests(); ++w) {
    sw += g.probability(w) * g.value(strategy, w);
  }
  return sw;
}

double social_welfare(const DuelInstance& g, const MixedStrategy& x) {
  if (g.mode() != Mode::kWelfare) {
    throw std::invalid_argument("social_welfare called on a cost instance");
  }
  double total = 0.0;
  for (int s = 0; s < g.num_strategies(); ++s) {
    if (x.weight(s) == 0.0) continue;
    double sw = 0.0;
    for (int w = 0; w < g.num_requests(); ++w) {
      sw += g.probability(w) * g.value(s, w);
    }
    total += x.weight(s) * sw;
  }
  return total;
}

double social_cost_pure(const DuelInstance& g, int strategy) {
  if (g.mode() != Mode::kCost) {
    throw std::invalid_argument("social_cost called on a welfare instance");
  }
  double sc = 0.0;
  for (int w = 0; w < g.num_requests(); ++w) {
    sc += g.probability(w) * g.value(strategy, w);
  }
  return sc;
}

double social_cost(const DuelInstance& g, const MixedStrategy& x) {
  if (g.mode() != Mode::kCost) {
    throw std::invalid_argument("social_cost called on a welfare instance");
  }
  double total = 0.0;
  for (int s = 0; s < g.num_strategies(); ++s) {
    if (x.weight(s) == 0.0) continue;
    total += x.weight(s) * social_cost_pure(g, s);
  }
  return total;
}

std::pair<double, int> optimal_welfare(const DuelInstance& g) {
  if (g.mode() != Mode::kWelfare) {
    throw std::invalid_argument("optimal_welfare called on a cost instance");
  }
  double best = -1.0;
  int arg = 0;
  for (int s = 0; s < g.num_strategies(); ++s) {
    double sw = social_welfare_pure(g, s);
    if (sw > best) {
      best = sw;
      arg = s;
    }
  }
  return {best, arg};
}

std::pair<double, int> optimal_cost(const DuelInstance& g) {
  if (g.mode() != Mode::kCost) {
    throw std::invalid_argument("optimal_cost called on a welfare instance");
  }
  double best = std::numeric_limits<double>::infinity();
  int arg = 0;
  for (int s = 0; s < g.num_strategies(); ++s) {
    double sc = social_cost_pure(g, s);
    if (sc < best) {
      best = sc;
      arg = s;
    }
  }
  return {best, arg};
}

}  // namespace duelbench
