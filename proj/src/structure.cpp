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

#include "duelbench/structure.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "duelbench/minimax.hpp"
#include "duelbench/parallel.hpp"
#include "duelbench/random.hpp"

namespace duelbench::structure {

namespace {

// Lexicographic index of a page order among all n! orders.
int lex_index(const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  int factorial = 1;
  for (int i = 2; i < n; ++i) factorial *= i;  // (n-1)!
  int index = 0;
  int fact = factorial;
  for (int i = 0; i < n - 1; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) {
      if (order[j] < order[i]) ++smaller;
    }
    index += smaller * fact;
    if (n - 1 - i > 1) fact /= n - 1 - i;
  }
  return index;
}

void require_pair(const RankingDuel& duel, int a, int b) {
  const int n = duel.spec.n();
  if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
    throw std::invalid_argument("page pair out of range");
  }
  if (duel.spec.probabilities()[a] < duel.spec.probabilities()[b]) {
    throw std::invalid_argument("pair checks expect p_a >= p_b");
  }
}

}  // namespace

PairOrderStats pair_order_stats(const RankingDuel& duel, const MixedStrategy& x,
                                int a, int b) {
  const int n = duel.spec.n();
  PairOrderStats stats;
  stats.marginal_a.assign(n, 0.0);
  stats.marginal_b.assign(n, 0.0);
  for (int s : x.support()) {
    int ra = duel.rank_of(s, a);
    int rb = duel.rank_of(s, b);
    stats.marginal_a[ra - 1] += x.weight(s);
    stats.marginal_b[rb - 1] += x.weight(s);
    if (ra < rb) {
      stats.pr_ab += x.weight(s);
      stats.support_ab.push_back(s);
    } else {
      stats.pr_ba += x.weight(s);
      stats.support_ba.push_back(s);
    }
  }
  return stats;
}

CheckResult check_swap_inequality(const RankingDuel& duel,
                                  const MixedStrategy& x, int a, int b,
                                  int pi_ba) {
  require_pair(duel, a, b);
  const std::vector<double>& p = duel.spec.probabilities();
  if (p[b] <= 0.0) return {Outcome::kVacuous, 0.0};
  if (x.weight(pi_ba) <= Tolerances::kSupport) return {Outcome::kVacuous, 0.0};
  const int i = duel.rank_of(pi_ba, b);
  const int j = duel.rank_of(pi_ba, a);
  if (i >= j) {
    throw std::invalid_argument("pi_ba must rank b before a");
  }
  double lhs = 0.0, rhs_mass = 0.0;
  for (int s : x.support()) {
    double w = x.weight(s);
    int rb = duel.rank_of(s, b);
    int ra = duel.rank_of(s, a);
    if (rb > i && rb <= j) lhs += w;
    if (rb >= i && rb < j) lhs += w;
    if (ra > i && ra <= j) rhs_mass += w;
    if (ra >= i && ra < j) rhs_mass += w;
  }
  double slack = lhs - (p[a] / p[b]) * rhs_mass;
  return {slack >= -kSlackTol ? Outcome::kHolds : Outcome::kViolated, slack};
}

IntervalCover interval_cover(const RankingDuel& duel, const MixedStrategy& x,
                             int a, int b) {
  require_pair(duel, a, b);
  PairOrderStats stats = pair_order_stats(duel, x, a, b);
  std::vector<int> pool = stats.support_ba;
  IntervalCover cover;
  while (!pool.empty()) {
    int pick = pool.front();
    for (int s : pool) {
      if (duel.rank_of(s, a) > duel.rank_of(pick, a)) pick = s;
    }
    int lo = duel.rank_of(pick, b);
    int hi = duel.rank_of(pick, a);
    cover.selected.push_back(pick);
    cover.intervals.push_back({lo, hi});
    std::vector<int> next;
    for (int s : pool) {
      int slo = duel.rank_of(s, b);
      int shi = duel.rank_of(s, a);
      if (shi < lo || slo > hi) next.push_back(s);
    }
    pool.swap(next);
  }
  return cover;
}

int interval_hits(const RankingDuel& duel, int pi_prime, int c, int pi, int a,
                  int b) {
  int lo = duel.rank_of(pi, b);
  int hi = duel.rank_of(pi, a);
  if (lo > hi) std::swap(lo, hi);
  int pos = duel.rank_of(pi_prime, c);
  if (pos > lo && pos < hi) return 2;
  if (pos == lo || pos == hi) return 1;
  return 0;
}

CheckResult check_pair_order(const RankingDuel& duel, const MixedStrategy& x,
                             int a, int b) {
  require_pair(duel, a, b);
  const std::vector<double>& p = duel.spec.probabilities();
  if (p[b] <= 0.0) return {Outcome::kVacuous, 0.0};
  PairOrderStats stats = pair_order_stats(duel, x, a, b);
  double rhs = (p[a] / (2.0 * p[b]) - 1.0) * stats.pr_ba;
  double slack = stats.pr_ab - rhs;
  return {slack >= -kSlackTol ? Outcome::kHolds : Outcome::kViolated, slack};
}

CheckResult check_h_bounds(const RankingDuel& duel, const MixedStrategy& x,
                           int a, int b) {
  require_pair(duel, a, b);
  const std::vector<double>& p = duel.spec.probabilities();
  if (p[a] <= 0.0) return {Outcome::kVacuous, 0.0};
  PairOrderStats stats = pair_order_stats(duel, x, a, b);
  double h = p[a] * stats.pr_ab + p[b] * stats.pr_ba;
  double bound =
      std::max(p[b], p[a] - 2.0 * p[b] + 2.0 * p[b] * p[b] / p[a]);
  double slack = h - bound;
  return {slack >= -kSlackTol ? Outcome::kHolds : Outcome::kViolated, slack};
}

QuarterCheck check_quarter_inequalities(const RankingDuel& duel,
                                        const MixedStrategy& x, double alpha) {
  const int n = duel.spec.n();
  const std::vector<double>& p = duel.spec.probabilities();
  const std::vector<double>& f = duel.spec.f();
  std::vector<char> hot(n, 0);
  int k = 0;
  for (int pos = 0; pos < n; ++pos) {
    if (f[pos] >= alpha) {
      hot[pos] = 1;
      ++k;
    }
  }
  if (k == 0) {
    throw std::invalid_argument("threshold leaves no triggered position");
  }

  std::vector<double> q(n, 0.0);
  for (int s : x.support()) {
    for (int w = 0; w < n; ++w) {
      if (hot[duel.rank_of(s, w) - 1]) q[w] += x.weight(s);
    }
  }
  double swap_budget = 0.0;
  for (int w = 0; w < n; ++w) swap_budget += 2.0 * p[w] * q[w];

  QuarterCheck out;
  out.k = k;
  out.holds = true;
  for (int i = 0; i < k && i < n; ++i) {
    double slack = swap_budget / k - p[i] * (1.0 - q[i]) * (1.0 - q[i]);
    out.worst_slack = std::min(out.worst_slack, slack);
    if (slack < -kSlackTol) out.holds = false;
  }

  // The explicit responses: keep triggered draws, otherwise swap page i
  // onto a uniformly random triggered position.
  const int m = duel.game.num_strategies();
  out.worst_response_utility = 2.0;
  for (int i = 0; i < k && i < n; ++i) {
    std::vector<double> weights(m, 0.0);
    for (int s : x.support()) {
      double w = x.weight(s);
      const std::vector<int>& order = duel.catalog[s];
      int pos_i = duel.rank_of(s, i) - 1;
      if (hot[pos_i]) {
        weights[s] += w;
        continue;
      }
      for (int pos = 0; pos < n; ++pos) {
        if (!hot[pos]) continue;
        std::vector<int> swapped = order;
        std::swap(swapped[pos_i], swapped[pos]);
        weights[lex_index(swapped)] += w / k;
      }
    }
    MixedStrategy response(std::move(weights));
    double u = utility(duel.game, x, response);
    out.worst_response_utility = std::min(out.worst_response_utility, u);
    if (u < -kSlackTol) out.holds = false;
  }
  return out;
}

void LemmaTally::add(const CheckResult& r) {
  switch (r.outcome) {
    case Outcome::kVacuous: ++vacuous; return;
    case Outcome::kHolds: ++pass; break;
    case Outcome::kViolated: ++fail; break;
  }
  worst_slack = std::min(worst_slack, r.slack);
}

namespace {

struct InstanceOutcome {
  LemmaTally swap, pair_order, h_bounds, quarter;
  int interval_checks = 0;
  int interval_failures = 0;
  bool solver_ok = true;
};

InstanceOutcome run_one(std::uint64_t seed, int index, int n_min, int n_max) {
  Rng rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1));
  const int n = rng.uniform_int(n_min, n_max);
  std::vector<double> p(n);
  double sum = 0.0;
  for (double& v : p) {
    v = rng.uniform(0.02, 1.0);
    sum += v;
  }
  for (double& v : p) v /= sum;

  InstanceOutcome out;

  RankingSpec spec(p, RankingValuation::linear(1.0, 0.0));
  RankingDuel duel = ranking_duel(spec);
  MinimaxResult worst = worst_minimax_welfare(duel.game);
  if (worst.guarantee < -Tolerances::kValue) {
    out.solver_ok = false;
    return out;
  }
  const MixedStrategy& x = worst.strategy;

  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      out.pair_order.add(check_pair_order(duel, x, a, b));
      out.h_bounds.add(check_h_bounds(duel, x, a, b));

      PairOrderStats stats = pair_order_stats(duel, x, a, b);
      if (stats.support_ba.empty()) {
        out.swap.add({Outcome::kVacuous, 0.0});
      } else {
        for (int s : stats.support_ba) {
          out.swap.add(check_swap_inequality(duel, x, a, b, s));
        }
      }

      IntervalCover cover = interval_cover(duel, x, a, b);
      ++out.interval_checks;
      bool cover_ok = true;
      for (size_t u = 0; u < cover.intervals.size() && cover_ok; ++u) {
        for (size_t v = u + 1; v < cover.intervals.size(); ++v) {
          auto [ulo, uhi] = cover.intervals[u];
          auto [vlo, vhi] = cover.intervals[v];
          if (!(uhi < vlo || vhi < ulo)) {
            cover_ok = false;
            break;
          }
        }
      }
      for (int s : stats.support_ba) {
        int covered = 0;
        int ra = duel.rank_of(s, a);
        for (auto [lo, hi] : cover.intervals) {
          if (ra >= lo && ra <= hi) ++covered;
        }
        if (covered != 1) cover_ok = false;
      }
      for (int s : x.support()) {
        int hits = 0;
        for (int sel : cover.selected) hits += interval_hits(duel, s, b, sel, a, b);
        if (hits > 2) cover_ok = false;
      }
      if (!cover_ok) ++out.interval_failures;
    }
  }

  // 0-1 position values exercise the threshold inequalities.
  std::vector<double> f01(n, 0.0);
  int ones = rng.uniform_int(1, n);
  for (int i = 0; i < ones; ++i) f01[i] = 1.0;
  for (int i = n - 1; i > 0; --i) {
    std::swap(f01[i], f01[rng.uniform_int(0, i)]);
  }
  RankingSpec spec01(p, RankingValuation::explicit_values(f01));
  RankingDuel duel01 = ranking_duel(spec01);
  MinimaxResult worst01 = worst_minimax_welfare(duel01.game);
  if (worst01.guarantee < -Tolerances::kValue) {
    out.solver_ok = false;
    return out;
  }
  QuarterCheck qc = check_quarter_inequalities(duel01, worst01.strategy, 1.0);
  CheckResult as_result{qc.holds ? Outcome::kHolds : Outcome::kViolated,
                        std::min(qc.worst_slack, qc.worst_response_utility)};
  out.quarter.add(as_result);
  return out;
}

void merge(LemmaTally& into, const LemmaTally& from) {
  into.pass += from.pass;
  into.fail += from.fail;
  into.vacuous += from.vacuous;
  into.worst_slack = std::min(into.worst_slack, from.worst_slack);
}

}  // namespace

StructureReport run_regression(std::uint64_t seed, int instances, int n_min,
                               int n_max, int threads) {
  if (instances < 1 || n_min < 2 || n_max < n_min) {
    throw std::invalid_argument("bad regression parameters");
  }
  std::vector<InstanceOutcome> outcomes(instances);
  parallel_for(instances, [&](int i) {
    outcomes[i] = run_one(seed, i, n_min, n_max);
  }, threads);

  StructureReport report;
  report.seed = seed;
  report.instances = instances;
  bool solver_ok = true;
  for (const InstanceOutcome& o : outcomes) {
    merge(report.swap, o.swap);
    merge(report.pair_order, o.pair_order);
    merge(report.h_bounds, o.h_bounds);
    merge(report.quarter, o.quarter);
    report.interval_checks += o.interval_checks;
    report.interval_failures += o.interval_failures;
    solver_ok = solver_ok && o.solver_ok;
  }
  report.all_pass = solver_ok && report.swap.fail == 0 &&
                    report.pair_order.fail == 0 && report.h_bounds.fail == 0 &&
                    report.quarter.fail == 0 && report.interval_failures == 0;
  return report;
}

}  // namespace duelbench::structure
