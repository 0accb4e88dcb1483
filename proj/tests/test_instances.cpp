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

#include <algorithm>
#include <cmath>
#include <set>

#include "duelbench/instances.hpp"
#include "duelbench/random.hpp"

using namespace duelbench;

TEST_CASE("ranking duel catalogs") {
  SUBCASE("three pages give the six lexicographic orders") {
    RankingDuel duel =
        ranking_duel(RankingSpec({0.4, 0.4, 0.2}, RankingValuation::linear(1, 0)));
    REQUIRE(duel.game.num_strategies() == 6);
    CHECK(duel.catalog[0] == std::vector<int>{0, 1, 2});
    CHECK(duel.catalog[1] == std::vector<int>{0, 2, 1});
    CHECK(duel.catalog[5] == std::vector<int>{2, 1, 0});
    CHECK(duel.game.labels()[1] == "(1,3,2)");
  }

  SUBCASE("single page") {
    RankingDuel duel =
        ranking_duel(RankingSpec({1.0}, RankingValuation::explicit_values({7.0})));
    CHECK(duel.game.num_strategies() == 1);
    CHECK(social_welfare_pure(duel.game, 0) == doctest::Approx(7.0));
  }

  SUBCASE("value rows are permutations of f") {
    Rng rng(5);
    std::vector<double> p = {0.4, 0.3, 0.2, 0.1};
    RankingDuel duel = ranking_duel(RankingSpec(p, RankingValuation::linear(1, 0)));
    double expected = 3 + 2 + 1 + 0;
    for (int s = 0; s < duel.game.num_strategies(); ++s) {
      double sum = 0.0;
      for (int w = 0; w < 4; ++w) sum += duel.game.value(s, w);
      CHECK(sum == doctest::Approx(expected));
    }
  }

  SUBCASE("the cap refusal names the cap") {
    std::vector<double> p(9, 1.0 / 9);
    try {
      ranking_duel(RankingSpec(p, RankingValuation::linear(1, 0)));
      FAIL("expected a cap refusal");
    } catch (const CapExceeded& e) {
      CHECK(std::string(e.what()).find("8") != std::string::npos);
    }
  }

  SUBCASE("constructor sorts probabilities descending and records the order") {
    RankingSpec spec({0.2, 0.5, 0.3}, RankingValuation::linear(1, 0));
    CHECK(spec.probabilities() == std::vector<double>{0.5, 0.3, 0.2});
    CHECK(spec.sort_order() == std::vector<int>{1, 2, 0});
  }
}

TEST_CASE("tree enumeration counts are Catalan-sized") {
  CHECK(catalan_number(3) == 5);
  CHECK(catalan_number(13) == 742900);
  CHECK(enumerate_bsts(1).size() == 1);
  CHECK(enumerate_bsts(3).size() == 5);
  CHECK(enumerate_bsts(6).size() == catalan_number(6));
  CHECK(enumerate_leaf_trees(1).size() == 1);
  CHECK(enumerate_leaf_trees(4).size() == 120);  // 5 shapes x 4! labelings
  CHECK_THROWS_AS(enumerate_bsts(14), CapExceeded);
  CHECK_THROWS_AS(enumerate_leaf_trees(8), CapExceeded);
}

TEST_CASE("catalogs are duplicate-free") {
  std::set<std::string> seen;
  for (const LeafTree& t : enumerate_bsts(5)) {
    CHECK(seen.insert(t.to_string()).second);
  }
  seen.clear();
  for (const LeafTree& t : enumerate_leaf_trees(4)) {
    CHECK(t.full_binary());
    CHECK(seen.insert(t.to_string()).second);
  }
}

TEST_CASE("bst in-order traversal is sorted") {
  for (const LeafTree& t : enumerate_bsts(5)) {
    std::vector<int> inorder;
    // Iterative in-order walk.
    std::vector<std::pair<int, bool>> stack{{t.root, false}};
    while (!stack.empty()) {
      auto [node, expanded] = stack.back();
      stack.pop_back();
      if (node < 0) continue;
      if (expanded) {
        inorder.push_back(t.nodes[node].label);
      } else {
        stack.push_back({t.nodes[node].right, false});
        stack.push_back({node, true});
        stack.push_back({t.nodes[node].left, false});
      }
    }
    CHECK(std::is_sorted(inorder.begin(), inorder.end()));
    CHECK(inorder.size() == 5);
  }
}

TEST_CASE("tree serialization uses nested parentheses") {
  LeafTree t;
  t.nodes = {{-1, -1, 0}, {-1, -1, 1}, {0, 1, -1},
             {-1, -1, 2}, {-1, -1, 3}, {3, 4, -1},
             {2, 5, -1}};
  t.root = 6;
  CHECK(t.to_string() == "((1,2),(3,4))");
}

TEST_CASE("compression construction") {
  CompressionDuel duel = compression_duel_epsilon(0.5);
  CHECK(duel.game.num_strategies() == 120);

  SUBCASE("designated trees have the advertised welfare") {
    MixedStrategy opt = MixedStrategy::point_mass(duel.opt_index, 120);
    MixedStrategy xstar = MixedStrategy::point_mass(duel.xstar_index, 120);
    CHECK(social_welfare(duel.game, opt) ==
          doctest::Approx((16.0 + 0.5) / 64.0).epsilon(1e-12));
    CHECK(social_welfare(duel.game, xstar) ==
          doctest::Approx(0.5 / 16.0).epsilon(1e-12));
    CHECK(optimal_welfare(duel.game).first ==
          doctest::Approx((16.0 + 0.5) / 64.0).epsilon(1e-12));
  }

  SUBCASE("depth profiles match the construction") {
    CHECK(duel.opt_tree.depths(4) == std::vector<int>{4, 4, 3, 2});
    CHECK(duel.xstar_tree.depths(4) == std::vector<int>{3, 3, 3, 3});
  }

  SUBCASE("every full binary tree on four leaves has at most one shallow leaf") {
    for (const LeafTree& t : duel.catalog) {
      int shallow = 0;
      for (int d : t.depths(4)) {
        if (d <= 2) ++shallow;
      }
      CHECK(shallow <= 1);
    }
  }

  SUBCASE("the balanced tree never loses") {
    MixedStrategy xstar = MixedStrategy::point_mass(duel.xstar_index, 120);
    for (int t = 0; t < 120; ++t) {
      CHECK(utility_vs_pure(duel.game, xstar, t) >= 0.0);
    }
  }

  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(compression_duel_epsilon(0.0), std::invalid_argument);
    CHECK_THROWS_AS(compression_duel_epsilon(1.5), std::invalid_argument);
  }
}

TEST_CASE("binary-search construction") {
  SUBCASE("sizes follow the parameter") {
    BstDuel half(0.5);
    CHECK(half.k() == 3);
    CHECK(half.n() == 24);
    BstDuel quarter(0.25);
    CHECK(quarter.k() == 4);
    CHECK(quarter.n() == 48);
    BstDuel loose(0.6);
    CHECK(loose.k() == 3);
    CHECK(loose.n() == 24);
  }

  SUBCASE("depth profile of the designated tree") {
    for (double beta : {0.5, 0.25, 0.1}) {
      BstDuel duel(beta);
      CHECK(duel.xstar_depths()[0] == 2);
      CHECK(duel.xstar_depths()[1LL << duel.k()] == 1);
      int max_depth = 0;
      for (int d : duel.xstar_depths()) max_depth = std::max(max_depth, d);
      CHECK(max_depth == duel.k() + 2);
    }
  }

  SUBCASE("welfare formulas") {
    BstDuel duel(0.25);
    double n1 = 5.0 * (duel.n() - 1);
    double expected = 4.0 / n1 + (n1 - 4.0) / n1 * duel.epsilon();
    CHECK(duel.sw_xstar() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(duel.sw_opt_lower_bound() == doctest::Approx(0.2));
    CHECK(duel.poc_bound() == doctest::Approx(5.0 / 48.0));
    CHECK(duel.poc_bound() < 0.25);
  }

  SUBCASE("probabilities sum to one") {
    BstDuel duel(0.5);
    double sum = 0.0;
    for (long long w = 0; w < duel.n(); ++w) sum += duel.probability(w);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("sampled opponents never beat the designated tree") {
    BstDuel duel(0.5);
    Rng rng(2026);
    for (int i = 0; i < 2000; ++i) {
      std::vector<int> depths = duel.sample_bst_depths(rng);
      CHECK(duel.utility_xstar_vs(depths) >= 0.0);
    }
  }

  SUBCASE("sampled trees are plausible BSTs") {
    BstDuel duel(0.5);
    Rng rng(7);
    std::vector<int> depths = duel.sample_bst_depths(rng);
    CHECK(static_cast<long long>(depths.size()) == duel.n());
    int roots = 0;
    for (int d : depths) {
      CHECK(d >= 1);
      if (d == 1) ++roots;
    }
    CHECK(roots == 1);
  }

  SUBCASE("exhaustive check at the smallest size, restricted to tiny n") {
    // The construction itself never goes below n = 24; cross-check the
    // utility evaluation against the explicit catalog on a 5-key game.
    std::vector<LeafTree> catalog = enumerate_bsts(5);
    BstDuel duel(0.5);
    // Depth vectors straight from the catalog all have one root.
    for (const LeafTree& t : catalog) {
      std::vector<int> d = t.depths(5);
      CHECK(*std::min_element(d.begin(), d.end()) == 1);
    }
  }

  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(BstDuel(0.0), std::invalid_argument);
    CHECK_THROWS_AS(BstDuel(1.0), std::invalid_argument);
  }
}

TEST_CASE("position marginals of a mixed ranking strategy") {
  AppendixExample ex = appendix_example();
  std::vector<double> q = position_marginals(ex.duel, ex.xstar);
  const int n = 3;
  // Page a: rank 1 in (a,c,b), rank 3 in (b,c,a).
  CHECK(q[0 * n + 0] == doctest::Approx(0.5));
  CHECK(q[0 * n + 2] == doctest::Approx(0.5));
  // Page c sits at rank 2 in both.
  CHECK(q[2 * n + 1] == doctest::Approx(1.0));
  for (int w = 0; w < n; ++w) {
    double row = 0.0;
    for (int i = 0; i < n; ++i) row += q[w * n + i];
    CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
  }
}
