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
#include <functional>

#include "duelbench/factor.hpp"
#include "duelbench/minimax.hpp"
#include "duelbench/random.hpp"

using namespace duelbench;
using duelbench::factor::alpha_k;

TEST_CASE("double-counting identity") {
  factor::ZibaeqResult r = factor::zibaeq_identity(5, 2, 3);
  CHECK(r.lhs == 9);
  CHECK(r.rhs == 9);
  CHECK(r.equal);

  // Boundary: k = n, a = n - 1.
  factor::ZibaeqResult edge = factor::zibaeq_identity(6, 5, 6);
  CHECK(edge.equal);

  for (int n = 2; n <= 14; ++n) {
    for (int a = 1; a <= n - 1; ++a) {
      for (int k = 2; k <= n; ++k) {
        CHECK(factor::zibaeq_identity(n, a, k).equal);
      }
    }
  }
  CHECK_THROWS_AS(factor::zibaeq_identity(5, 5, 3), std::invalid_argument);
}

TEST_CASE("pair contributions") {
  SUBCASE("point mass on the sorted order contributes p_a per pair") {
    RankingDuel duel = ranking_duel(
        RankingSpec({0.5, 0.3, 0.2}, RankingValuation::linear(1, 0)));
    MixedStrategy sorted = MixedStrategy::point_mass(0, 6);
    std::vector<double> h = factor::pairwise_h(duel, sorted);
    const auto& p = duel.spec.probabilities();
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        CHECK(h[a * 3 + b] == doctest::Approx(p[a]).epsilon(1e-12));
      }
    }
  }

  SUBCASE("pair contributions sum to the welfare under f(i) = n - i") {
    AppendixExample ex = appendix_example();
    std::vector<double> h = factor::pairwise_h(ex.duel, ex.xstar);
    double total = 0.0;
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) total += h[a * 3 + b];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
      int n = rng.uniform_int(2, 5);
      std::vector<double> p(n);
      double sum = 0.0;
      for (double& v : p) {
        v = rng.uniform(0.05, 1.0);
        sum += v;
      }
      for (double& v : p) v /= sum;
      RankingDuel duel = ranking_duel(RankingSpec(p, RankingValuation::linear(1, 0)));
      std::vector<double> w(duel.game.num_strategies());
      double ws = 0.0;
      for (double& v : w) {
        v = rng.uniform(0.0, 1.0);
        ws += v;
      }
      for (double& v : w) v /= ws;
      MixedStrategy x(w);
      std::vector<double> table = factor::pairwise_h(duel, x);
      double acc = 0.0;
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) acc += table[a * n + b];
      }
      CHECK(acc == doctest::Approx(social_welfare(duel.game, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("the quadratic bound dominates its linear relaxation") {
  CHECK(factor::check_khat(1.0, 1.0));
  CHECK(factor::check_khat(1.0, 0.3));
  CHECK(factor::check_khat(1.0, 0.0));
  CHECK(factor::check_khat(0.0, 0.0));
  // A moderately fine grid here; the acceptance suite runs the full one.
  const int grid = 400;
  for (int i = 0; i <= grid; ++i) {
    double pa = static_cast<double>(i) / grid;
    for (int j = 0; j <= i; ++j) {
      double pb = static_cast<double>(j) / grid;
      CHECK(factor::check_khat(pa, pb));
    }
  }
  CHECK_THROWS_AS(factor::check_khat(0.2, 0.5), std::invalid_argument);
}

TEST_CASE("subset LP optimum at k = 2 matches a one-dimensional scan") {
  // With p_1 = 1 forced by the normalization, the optimum is
  // min over p_2 of the largest of the four bounds.
  double best = 1e9;
  const int grid = 1000000;
  for (int i = 0; i <= grid; ++i) {
    double p2 = static_cast<double>(i) / grid;
    double value = std::max(
        std::max(p2, 1.0 - 2.0 * p2),
        std::max((1.0 - p2) / factor::kDiffBoundDivisor,
                 (2.0 - p2) / factor::kTwoToOneBoundDivisor));
    best = std::min(best, value);
  }
  CHECK(alpha_k(2) == doctest::Approx(best).epsilon(1e-6));
  CHECK(alpha_k(2) == doctest::Approx(10.0 / 21.0).epsilon(1e-9));
}

TEST_CASE("primal and dual routes agree and the anchors hold") {
  for (int k : {2, 3, 4, 6, 8, 10, 12}) {
    lp::Solution primal = factor::solve_lp4_primal(k);
    REQUIRE(primal.optimal());
    CHECK(alpha_k(k) == doctest::Approx(primal.objective).epsilon(1e-7));
  }
  double a10 = alpha_k(10);
  CHECK(a10 >= 0.612275 - 1e-6);
  CHECK(a10 >= 0.612);
  CHECK(a10 < 1.0);
  // Monotone in k on a few probes.
  CHECK(alpha_k(3) >= alpha_k(2) - 1e-9);
  CHECK(alpha_k(10) >= alpha_k(5) - 1e-9);
}

TEST_CASE("dual program construction matches the mechanical dual") {
  for (int k : {2, 3, 5, 8}) {
    lp::LinearProgram lp4 = factor::build_lp4(k);
    lp::LinearProgram handwritten = factor::build_dual_lp5(k);
    lp::LinearProgram mechanical = lp::dualize(lp4);
    lp::Solution a = lp::solve(handwritten);
    lp::Solution b = lp::solve(mechanical);
    REQUIRE(a.optimal());
    REQUIRE(b.optimal());
    CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-8));
  }
}

TEST_CASE("primal optimum activates at least one bound per pair") {
  const int k = 6;
  lp::Solution sol = factor::solve_lp4_primal(k);
  REQUIRE(sol.optimal());
  const auto& x = sol.x;
  int h_index = k;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b, ++h_index) {
      double pa = x[a], pb = x[b], h = x[h_index];
      double bound = std::max(
          std::max(pb, pa - 2 * pb),
          std::max((pa - pb) / factor::kDiffBoundDivisor,
                   (2 * pa - pb) / factor::kTwoToOneBoundDivisor));
      CHECK(h >= bound - 1e-8);
      CHECK(h <= bound + 1e-7);  // minimality pins h to the active bound
    }
  }
}

TEST_CASE("scaled feasible points of the ratio program enter the LP") {
  // Points satisfying the quadratic pair bounds normalize onto the LP's
  // feasible set; the khat dominance makes the linear bounds hold too.
  Rng rng(19);
  const int k = 5;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> p(k);
    for (double& v : p) v = rng.uniform(0.0, 1.0);
    std::sort(p.begin(), p.end(), std::greater<double>());
    double denom = 0.0;
    for (int a = 0; a < k; ++a) denom += p[a] * (k - 1 - a);
    if (denom < 1e-6) continue;
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) {
        double quad = p[a] > 0 ? p[a] - 2 * p[b] + 2 * p[b] * p[b] / p[a] : 0.0;
        double h = std::max(p[b], quad);
        double hs = h / denom, pas = p[a] / denom, pbs = p[b] / denom;
        CHECK(hs >= pbs - 1e-12);
        CHECK(hs >= pas - 2 * pbs - 1e-12);
        CHECK(hs >= (pas - pbs) / factor::kDiffBoundDivisor - 1e-12);
        CHECK(hs >= (2 * pas - pbs) / factor::kTwoToOneBoundDivisor - 1e-12);
      }
    }
  }
}

TEST_CASE("published dual table, checked exactly") {
  factor::PaperCertificateReport report = factor::verify_paper_certificate();
  CHECK(report.claimed_bound == rational_from_decimal("0.612275"));
  CHECK(report.dual_objective == report.claimed_bound);
  CHECK(report.bound_matches);

  // The printed table rounds an interior feasible point to six digits and
  // that rounding is enough to break exact feasibility: the worst residual
  // is 157/302000000 (about 5.2e-7), on the dual constraint of p_4. The
  // residuals are reported rather than repaired.
  CHECK_FALSE(report.feasible);
  CHECK(report.max_violation == Rational(157, 302000000));
  CHECK(to_double(report.max_violation) <= 1e-6);

  // Weak duality confirms the diagnosis: the claimed bound exceeds the
  // actual LP optimum, so no feasible dual point can attain it.
  CHECK(alpha_k(10) < to_double(report.claimed_bound));
}

TEST_CASE("zero and perturbed certificates for the subset LP") {
  lp::RationalLp lp4 = factor::build_lp4_exact(10);

  lp::RationalCertificate zero;
  zero.y.assign(lp4.num_rows(), Rational(0));
  zero.bound = 0;
  zero.lower_bound = true;
  lp::ExactCertificateCheck check = lp::verify_certificate_exact(lp4, zero);
  CHECK(check.feasible);
  CHECK(check.bound_matches);

  lp::RationalCertificate broken = factor::paper_certificate();
  broken.y[1] = Rational(2);  // the beta multiplier of pair (1,2)
  lp::ExactCertificateCheck bad = lp::verify_certificate_exact(lp4, broken);
  CHECK_FALSE(bad.feasible);
  CHECK(bad.max_violation >= 1);
}

TEST_CASE("subset aggregation lower-bounds the global ratio") {
  SUBCASE("k = n collapses to the global ratio") {
    AppendixExample ex = appendix_example();
    factor::AggregationCheck check =
        factor::aggregation_check(ex.duel, ex.xstar, 3);
    CHECK(check.min_subset_ratio ==
          doctest::Approx(check.global_ratio).epsilon(1e-9));
    CHECK(check.implication_holds);
  }

  SUBCASE("pairs of the three-page example") {
    AppendixExample ex = appendix_example();
    factor::AggregationCheck check =
        factor::aggregation_check(ex.duel, ex.xstar, 2);
    CHECK(check.implication_holds);
  }

  SUBCASE("random minimax strategies at several k") {
    Rng rng(43);
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<double> p(6);
      double sum = 0.0;
      for (double& v : p) {
        v = rng.uniform(0.05, 1.0);
        sum += v;
      }
      for (double& v : p) v /= sum;
      RankingDuel duel = ranking_duel(RankingSpec(p, RankingValuation::linear(1, 0)));
      MinimaxResult worst = worst_minimax_welfare(duel.game);
      for (int k : {2, 3, 4}) {
        factor::AggregationCheck check =
            factor::aggregation_check(duel, worst.strategy, k);
        CHECK(check.implication_holds);
      }
    }
  }

  SUBCASE("wrong valuation or subset budget is refused") {
    RankingDuel duel = ranking_duel(
        RankingSpec({0.6, 0.4}, RankingValuation::explicit_values({5.0, 1.0})));
    MixedStrategy x = MixedStrategy::point_mass(0, 2);
    CHECK_THROWS_AS(factor::aggregation_check(duel, x, 2), std::invalid_argument);
  }
}
