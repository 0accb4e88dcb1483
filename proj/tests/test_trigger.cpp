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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "duelbench/minimax.hpp"
#include "duelbench/random.hpp"
#include "duelbench/trigger.hpp"

using namespace duelbench;

namespace {

RankingDuel random_ranking(Rng& rng, int n_max) {
  int n = rng.uniform_int(2, n_max);
  std::vector<double> p(n);
  double sum = 0.0;
  for (double& v : p) {
    v = rng.uniform(0.05, 1.0);
    sum += v;
  }
  for (double& v : p) v /= sum;
  std::vector<double> f(n);
  for (double& v : f) v = rng.uniform(0.0, 1.0);
  f[rng.uniform_int(0, n - 1)] = 1.0;
  return ranking_duel(RankingSpec(p, RankingValuation::explicit_values(f)));
}

}  // namespace

TEST_CASE("pseudo-welfare at the threshold extremes") {
  AppendixExample ex = appendix_example();
  // Everything triggers at zero.
  TriggerView at_zero(ex.duel.game, 0.0);
  CHECK(at_zero.pseudo_welfare(ex.xstar) == doctest::Approx(1.0));
  // Nothing triggers beyond the largest value.
  TriggerView beyond(ex.duel.game, 99.0);
  CHECK(beyond.pseudo_welfare(ex.xstar) == 0.0);

  TriggerView negatives_rejected(ex.duel.game, 1.0);
  CHECK_THROWS_AS(TriggerView(ex.duel.game, -0.5), std::invalid_argument);
}

TEST_CASE("the deep caterpillar keeps one triggered leaf at threshold one") {
  CompressionDuel duel = compression_duel_epsilon(0.5);
  TriggerView view(duel.game, 1.0);
  CHECK(view.pseudo_welfare_pure(duel.opt_index) == doctest::Approx(0.25));
  CHECK(view.pseudo_welfare_pure(duel.xstar_index) == 0.0);
}

TEST_CASE("threshold ratio on the compression construction") {
  CompressionDuel duel = compression_duel_epsilon(0.01);
  CHECK(poc_alpha(duel.game, 1.0) == doctest::Approx(0.0));
  CHECK(poc_alpha(duel.game, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("threshold ratio against a brute-force recomputation") {
  Rng rng(47);
  for (int trial = 0; trial < 6; ++trial) {
    RankingDuel duel = random_ranking(rng, 5);
    MinimaxResult worst = worst_minimax_welfare(duel.game);
    int opt = optimal_welfare(duel.game).second;
    for (double alpha : distinct_values(duel.game)) {
      if (alpha <= 0.0) continue;
      double fast = poc_alpha_with(duel.game, worst.strategy, opt, alpha);
      // Recompute both pseudo-welfares from the raw catalog.
      double numer = 0.0;
      for (int s = 0; s < duel.game.num_strategies(); ++s) {
        if (worst.strategy.weight(s) == 0.0) continue;
        double pw = 0.0;
        for (int w = 0; w < duel.game.num_requests(); ++w) {
          if (duel.game.value(s, w) >= alpha) pw += duel.game.probability(w);
        }
        numer += worst.strategy.weight(s) * pw;
      }
      double denom = 0.0;
      for (int w = 0; w < duel.game.num_requests(); ++w) {
        if (duel.game.value(opt, w) >= alpha) denom += duel.game.probability(w);
      }
      double slow = denom == 0.0 ? 1.0 : numer / denom;
      CHECK(fast == doctest::Approx(slow).epsilon(1e-12));
      CHECK(fast >= 0.0);
      CHECK(fast <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("a 0-1 valued game is its own threshold scan") {
  Rng rng(53);
  for (int trial = 0; trial < 5; ++trial) {
    int n = rng.uniform_int(2, 5);
    std::vector<double> p(n);
    double sum = 0.0;
    for (double& v : p) {
      v = rng.uniform(0.05, 1.0);
      sum += v;
    }
    for (double& v : p) v /= sum;
    std::vector<double> f(n, 0.0);
    int ones = rng.uniform_int(1, n);
    for (int i = 0; i < ones; ++i) f[i] = 1.0;
    RankingDuel duel = ranking_duel(RankingSpec(p, RankingValuation::explicit_values(f)));
    double poc = price_of_competition(duel.game);
    double bound = zero_one_bound(duel.game);
    CHECK(bound == doctest::Approx(poc).epsilon(1e-9));
  }
}

TEST_CASE("the scan lower-bounds the exact ratio") {
  CompressionDuel comp = compression_duel_epsilon(0.1);
  double poc = price_of_competition(comp.game);
  double bound = zero_one_bound(comp.game);
  CHECK(bound <= poc + 1e-9);
  CHECK(poc <= 0.1 + 1e-9);

  Rng rng(59);
  for (int trial = 0; trial < 15; ++trial) {
    RankingDuel duel = random_ranking(rng, 5);
    auto [opt_value, opt_index] = optimal_welfare(duel.game);
    MinimaxResult worst = worst_minimax_welfare(duel.game);
    double poc_r = worst.value / opt_value;
    double bound_r = zero_one_bound_with(duel.game, worst.strategy, opt_index);
    CHECK(bound_r <= poc_r + 1e-9);
  }
}

TEST_CASE("layer decomposition rebuilds the welfare exactly") {
  SUBCASE("constant values collapse to one layer") {
    DuelInstance g({0.5, 0.5}, 2, {1.5, 1.5, 1.5, 1.5}, Mode::kWelfare);
    LayerDecomposition check =
        layer_decomposition_check(g, MixedStrategy::point_mass(0, 2));
    CHECK(check.direct == doctest::Approx(1.5));
    CHECK(check.layered == doctest::Approx(1.5));
    CHECK(check.equal);
  }

  SUBCASE("three-page example") {
    AppendixExample ex = appendix_example();
    LayerDecomposition check = layer_decomposition_check(ex.duel.game, ex.xstar);
    CHECK(check.direct == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(check.equal);
  }

  SUBCASE("random instances and strategies") {
    Rng rng(61);
    for (int trial = 0; trial < 10; ++trial) {
      RankingDuel duel = random_ranking(rng, 5);
      std::vector<double> w(duel.game.num_strategies());
      double sum = 0.0;
      for (double& v : w) {
        v = rng.uniform(0.0, 1.0);
        sum += v;
      }
      for (double& v : w) v /= sum;
      LayerDecomposition check =
          layer_decomposition_check(duel.game, MixedStrategy(w));
      CHECK(check.equal);
      CHECK(std::abs(check.direct - check.layered) <= 1e-10);
    }
  }
}
