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

#include "duelbench/factor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace duelbench::factor {

namespace {

using lp::Entry;
using lp::LinearProgram;
using lp::RationalEntry;
using lp::RationalLp;
using lp::Relation;
using lp::Sense;
using lp::VarSign;

using uint128 = unsigned __int128;

std::uint64_t checked_u64(uint128 v, const char* what) {
  if (v > static_cast<uint128>(UINT64_MAX)) {
    throw std::overflow_error(std::string(what) + " exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(v);
}

uint128 binomial128(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  uint128 result = 1;
  for (int i = 1; i <= r; ++i) {
    result = result * static_cast<uint128>(n - r + i) / static_cast<uint128>(i);
  }
  return result;
}

}  // namespace

ZibaeqResult zibaeq_identity(int n, int a, int k) {
  if (a < 1 || a > n - 1 || k < 2 || k > n) {
    throw std::invalid_argument("zibaeq_identity needs 1 <= a <= n-1, 2 <= k <= n");
  }
  uint128 lhs = 0;
  for (int i = 0; i <= k - 1; ++i) {
    lhs += binomial128(a - 1, i) * binomial128(n - a, k - i - 1) *
           static_cast<uint128>(k - i - 1);
  }
  uint128 rhs = static_cast<uint128>(n - a) * binomial128(n - 2, k - 2);
  ZibaeqResult out;
  out.lhs = checked_u64(lhs, "zibaeq lhs");
  out.rhs = checked_u64(rhs, "zibaeq rhs");
  out.equal = lhs == rhs;
  return out;
}

std::vector<double> pairwise_h(const RankingDuel& duel, const MixedStrategy& x) {
  const int n = duel.spec.n();
  const std::vector<double>& p = duel.spec.probabilities();
  std::vector<double> h(static_cast<size_t>(n) * n, 0.0);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      double ab = pr_before(duel, x, a, b);
      double ba = pr_before(duel, x, b, a);
      h[static_cast<size_t>(a) * n + b] = p[a] * ab + p[b] * ba;
    }
  }
  return h;
}

bool check_khat(double p_a, double p_b) {
  if (!(0.0 <= p_b && p_b <= p_a && p_a <= 1.0)) {
    throw std::invalid_argument("check_khat needs 0 <= p_b <= p_a <= 1");
  }
  double quad = p_a > 0.0 ? p_a - 2.0 * p_b + 2.0 * p_b * p_b / p_a : 0.0;
  double lhs = std::max(p_b, quad);
  double rhs = std::max(std::max(p_b, p_a - 2.0 * p_b),
                        std::max((p_a - p_b) / kDiffBoundDivisor,
                                 (2.0 * p_a - p_b) / kTwoToOneBoundDivisor));
  return lhs >= rhs - 1e-12;
}

namespace {

int pair_count(int k) { return k * (k - 1) / 2; }

// Column of h_ab given 0-based pair (a, b), a < b, after the k p-columns.
int h_column(int k, int a, int b) {
  // pairs (0,1), (0,2), ..., (0,k-1), (1,2), ...
  int before = a * (2 * k - a - 1) / 2;
  return k + before + (b - a - 1);
}

}  // namespace

RationalLp build_lp4_exact(int k) {
  if (k < 2) throw std::invalid_argument("the LP family needs k >= 2");
  const Rational inv_diff(125, 151);  // 1 / 1.208
  const Rational inv_two_one(5, 16);  // 1 / 3.2
  const Rational two_inv_two_one(5, 8);

  RationalLp prog;
  prog.sense = Sense::kMinimize;
  const int pairs = pair_count(k);
  prog.objective.assign(k + pairs, Rational(0));
  prog.var_sign.assign(k + pairs, VarSign::kNonNegative);
  for (int c = k; c < k + pairs; ++c) prog.objective[c] = 1;
  for (int a = 1; a <= k; ++a) prog.var_names.push_back("p_" + std::to_string(a));
  for (int a = 1; a <= k; ++a) {
    for (int b = a + 1; b <= k; ++b) {
      prog.var_names.push_back("h_" + std::to_string(a) + "_" + std::to_string(b));
    }
  }

  // Normalization row: sum_a p_a (k - a) = 1 with a counted from 1.
  std::vector<RationalEntry> norm;
  for (int a = 0; a < k; ++a) {
    if (k - 1 - a > 0) norm.push_back({a, Rational(k - 1 - a)});
  }
  prog.rows.push_back(norm);
  prog.relation.push_back(Relation::kEqual);
  prog.rhs.push_back(1);

  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      const int h = h_column(k, a, b);
      // h >= p_b
      prog.rows.push_back({{h, Rational(1)}, {b, Rational(-1)}});
      prog.relation.push_back(Relation::kGreaterEqual);
      prog.rhs.push_back(0);
      // h >= p_a - 2 p_b
      prog.rows.push_back({{h, Rational(1)}, {a, Rational(-1)}, {b, Rational(2)}});
      prog.relation.push_back(Relation::kGreaterEqual);
      prog.rhs.push_back(0);
      // h >= (p_a - p_b) / 1.208
      prog.rows.push_back(
          {{h, Rational(1)}, {a, Rational(-inv_diff)}, {b, inv_diff}});
      prog.relation.push_back(Relation::kGreaterEqual);
      prog.rhs.push_back(0);
      // h >= (2 p_a - p_b) / 3.2
      prog.rows.push_back(
          {{h, Rational(1)}, {a, Rational(-two_inv_two_one)}, {b, inv_two_one}});
      prog.relation.push_back(Relation::kGreaterEqual);
      prog.rhs.push_back(0);
    }
  }
  return prog;
}

LinearProgram build_lp4(int k) { return lp::to_double_lp(build_lp4_exact(k)); }

LinearProgram build_dual_lp5(int k) {
  if (k < 2) throw std::invalid_argument("the LP family needs k >= 2");
  LinearProgram prog(Sense::kMaximize);
  const int theta = prog.add_variable(1.0, -lp::kInfinity, lp::kInfinity);
  const int pairs = pair_count(k);
  // Per pair: beta, gamma, lambda, rho.
  const int base = 1;
  auto var = [&](int a, int b, int which) {
    int before = a * (2 * k - a - 1) / 2;
    return base + 4 * (before + (b - a - 1)) + which;
  };
  for (int i = 0; i < 4 * pairs; ++i) prog.add_variable(0.0, 0.0, lp::kInfinity);

  const double inv_diff = 1.0 / kDiffBoundDivisor;
  const double inv_two_one = 1.0 / kTwoToOneBoundDivisor;

  // One row per p_a of the primal.
  for (int a = 0; a < k; ++a) {
    std::vector<Entry> row;
    if (k - 1 - a > 0) row.push_back({theta, static_cast<double>(k - 1 - a)});
    for (int i = 0; i < a; ++i) {
      row.push_back({var(i, a, 0), -1.0});
      row.push_back({var(i, a, 1), 2.0});
      row.push_back({var(i, a, 2), inv_diff});
      row.push_back({var(i, a, 3), inv_two_one});
    }
    for (int j = a + 1; j < k; ++j) {
      row.push_back({var(a, j, 1), -1.0});
      row.push_back({var(a, j, 2), -inv_diff});
      row.push_back({var(a, j, 3), -2.0 * inv_two_one});
    }
    prog.add_row(Relation::kLessEqual, 0.0, row);
  }
  // One unit-capacity row per h_ab of the primal.
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      prog.add_row(Relation::kLessEqual, 1.0,
                   {Entry{var(a, b, 0), 1.0}, Entry{var(a, b, 1), 1.0},
                    Entry{var(a, b, 2), 1.0}, Entry{var(a, b, 3), 1.0}});
    }
  }
  return prog;
}

double alpha_k(int k) {
  lp::Solution sol = lp::solve(build_dual_lp5(k));
  if (!sol.optimal()) {
    throw NumericalBreakdown("dual LP for alpha_k did not reach an optimum");
  }
  return sol.objective;
}

lp::Solution solve_lp4_primal(int k) { return lp::solve(build_lp4(k)); }

namespace {

struct TableEntry {
  int a;
  int b;
  const char* value;
};

// Published dual solution for k = 10. Unlisted multipliers are zero; the
// gamma block is entirely zero.
constexpr TableEntry kBeta[] = {
    {1, 2, "1"},        {1, 3, "1"},       {1, 4, "0.13026"},
    {2, 3, "1"},        {2, 4, "1"},       {2, 5, "1"},
    {2, 6, "0.0608937"},{3, 4, "1"},       {3, 5, "1"},
    {3, 6, "1"},        {3, 7, "0.667024"},{4, 5, "1"},
    {4, 6, "1"},        {4, 7, "0.946275"},{4, 8, "0.384898"},
    {5, 6, "1"},        {5, 7, "1"},       {5, 8, "1"},
    {5, 9, "0.577297"}, {6, 7, "1"},       {6, 8, "1"},
    {6, 9, "0.579201"}, {6, 10, "0.605612"},{7, 8, "1"},
    {7, 9, "1"},        {7, 10, "1"},      {8, 9, "1"},
    {8, 10, "1"},       {9, 10, "1"},
};
constexpr TableEntry kLambda[] = {
    {1, 5, "1"},  {1, 6, "1"},  {1, 7, "1"},  {1, 8, "1"},
    {1, 9, "1"},  {1, 10, "1"}, {2, 7, "1"},  {2, 8, "1"},
    {2, 9, "1"},  {2, 10, "1"}, {3, 10, "1"}, {4, 10, "0.725619"},
};
constexpr TableEntry kRho[] = {
    {1, 4, "0.86974"},   {2, 6, "0.939106"}, {3, 7, "0.332976"},
    {3, 8, "1"},         {3, 9, "1"},        {4, 7, "0.0537254"},
    {4, 8, "0.615102"},  {4, 9, "1"},        {4, 10, "0.274381"},
    {5, 9, "0.422703"},  {5, 10, "1"},       {6, 9, "0.420799"},
    {6, 10, "0.394388"},
};
constexpr const char* kTheta = "0.612275";
constexpr int kTableK = 10;

int row_of_pair(int k, int a0, int b0, int which) {
  int before = a0 * (2 * k - a0 - 1) / 2;
  return 1 + 4 * (before + (b0 - a0 - 1)) + which;
}

}  // namespace

lp::RationalCertificate paper_certificate() {
  const int k = kTableK;
  lp::RationalCertificate cert;
  cert.y.assign(1 + 4 * pair_count(k), Rational(0));
  cert.y[0] = rational_from_decimal(kTheta);
  for (const TableEntry& e : kBeta) {
    cert.y[row_of_pair(k, e.a - 1, e.b - 1, 0)] = rational_from_decimal(e.value);
  }
  for (const TableEntry& e : kLambda) {
    cert.y[row_of_pair(k, e.a - 1, e.b - 1, 2)] = rational_from_decimal(e.value);
  }
  for (const TableEntry& e : kRho) {
    cert.y[row_of_pair(k, e.a - 1, e.b - 1, 3)] = rational_from_decimal(e.value);
  }
  cert.bound = rational_from_decimal(kTheta);
  cert.lower_bound = true;
  return cert;
}

PaperCertificateReport verify_paper_certificate() {
  RationalLp lp4 = build_lp4_exact(kTableK);
  lp::RationalCertificate cert = paper_certificate();
  lp::ExactCertificateCheck check = lp::verify_certificate_exact(lp4, cert);
  PaperCertificateReport out;
  out.feasible = check.feasible;
  out.bound_matches = check.bound_matches;
  out.max_violation = check.max_violation;
  out.worst_constraint = check.worst_constraint;
  out.claimed_bound = cert.bound;
  out.dual_objective = check.dual_objective;
  return out;
}

AggregationCheck aggregation_check(const RankingDuel& duel,
                                   const MixedStrategy& x, int k) {
  const int n = duel.spec.n();
  if (k < 2 || k > n) throw std::invalid_argument("aggregation needs 2 <= k <= n");
  const std::vector<double>& f = duel.spec.f();
  for (int r = 0; r < n; ++r) {
    if (std::abs(f[r] - static_cast<double>(n - 1 - r)) > 1e-12) {
      throw std::invalid_argument("aggregation check needs the f(i) = n - i valuation");
    }
  }
  double subsets = 1.0;
  for (int i = 0; i < k; ++i) subsets = subsets * (n - i) / (i + 1);
  if (subsets > 1e5) {
    throw CapExceeded("aggregation check caps C(n,k) at 1e5 subsets");
  }

  std::vector<double> h = pairwise_h(duel, x);
  const std::vector<double>& p = duel.spec.probabilities();

  double min_ratio = std::numeric_limits<double>::infinity();
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    double num = 0.0, den = 0.0;
    for (int a = 0; a < k; ++a) {
      den += p[idx[a]] * (k - 1 - a);
      for (int b = a + 1; b < k; ++b) {
        num += h[static_cast<size_t>(idx[a]) * n + idx[b]];
      }
    }
    if (den > 1e-15) min_ratio = std::min(min_ratio, num / den);
    // next combination
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }

  double sw = social_welfare(duel.game, x);
  double opt = optimal_welfare(duel.game).first;
  AggregationCheck out;
  out.min_subset_ratio = min_ratio;
  out.global_ratio = sw / opt;
  out.implication_holds = out.global_ratio >= min_ratio - 1e-9;
  return out;
}

}  // namespace duelbench::factor
