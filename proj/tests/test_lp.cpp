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

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "duelbench/lp.hpp"
#include "duelbench/random.hpp"

using namespace duelbench;
using namespace duelbench::lp;

namespace {

// Brute-force optimum of max c'x s.t. Ax <= b, x >= 0 by enumerating basic
// feasible points of the slack form; the feasible region must be bounded.
double vertex_enumeration_optimum(const Eigen::MatrixXd& a,
                                  const Eigen::VectorXd& b,
                                  const Eigen::VectorXd& c) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  const int total = n + m;
  Eigen::MatrixXd full(m, total);
  full << a, Eigen::MatrixXd::Identity(m, m);
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> pick(m);
  // All size-m column subsets of the slack form.
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  for (;;) {
    Eigen::MatrixXd basis(m, m);
    for (int i = 0; i < m; ++i) basis.col(i) = full.col(idx[i]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
    if (lu.isInvertible()) {
      Eigen::VectorXd xb = lu.solve(b);
      if ((xb.array() >= -1e-9).all()) {
        double value = 0.0;
        for (int i = 0; i < m; ++i) {
          if (idx[i] < n) value += c[idx[i]] * xb[i];
        }
        best = std::max(best, value);
      }
    }
    int pos = m - 1;
    while (pos >= 0 && idx[pos] == total - m + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < m; ++i) idx[i] = idx[i - 1] + 1;
  }
  return best;
}

LinearProgram random_bounded_lp(Rng& rng, int rows, int cols,
                                Eigen::MatrixXd* a_out, Eigen::VectorXd* b_out,
                                Eigen::VectorXd* c_out) {
  // Ax <= b with b > 0 and a final row bounding sum(x); region is bounded
  // and contains the origin.
  Eigen::MatrixXd a(rows + 1, cols);
  Eigen::VectorXd b(rows + 1), c(cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
    b(i) = rng.uniform(0.2, 2.0);
  }
  for (int j = 0; j < cols; ++j) a(rows, j) = 1.0;
  b(rows) = rng.uniform(1.0, 4.0);
  for (int j = 0; j < cols; ++j) c(j) = rng.uniform(-0.5, 1.0);

  LinearProgram prog(Sense::kMaximize);
  for (int j = 0; j < cols; ++j) prog.add_variable(c(j));
  for (int i = 0; i <= rows; ++i) {
    std::vector<Entry> row;
    for (int j = 0; j < cols; ++j) {
      if (a(i, j) != 0.0) row.push_back({j, a(i, j)});
    }
    prog.add_row(Relation::kLessEqual, b(i), row);
  }
  *a_out = a;
  *b_out = b;
  *c_out = c;
  return prog;
}

}  // namespace

TEST_CASE("one-variable lower-bound program") {
  LinearProgram prog(Sense::kMinimize);
  prog.add_variable(1.0);
  prog.add_row(Relation::kGreaterEqual, 3.0, {Entry{0, 1.0}});
  Solution sol = solve(prog);
  REQUIRE(sol.optimal());
  CHECK(sol.objective == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(sol.x[0] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("box program") {
  LinearProgram prog(Sense::kMaximize);
  prog.add_variable(1.0);
  prog.add_variable(1.0);
  prog.add_row(Relation::kLessEqual, 1.0, {Entry{0, 1.0}});
  prog.add_row(Relation::kLessEqual, 1.0, {Entry{1, 1.0}});
  Solution sol = solve(prog);
  REQUIRE(sol.optimal());
  CHECK(sol.objective == doctest::Approx(2.0));
  CHECK(sol.x[0] == doctest::Approx(1.0));
  CHECK(sol.x[1] == doctest::Approx(1.0));
}

TEST_CASE("a rowless program optimizes at its bounds") {
  LinearProgram prog(Sense::kMinimize);
  prog.add_variable(1.0, 3.0, kInfinity);
  Solution sol = solve(prog);
  REQUIRE(sol.optimal());
  CHECK(sol.objective == doctest::Approx(3.0));
}

TEST_CASE("infeasible and unbounded classification") {
  LinearProgram bad(Sense::kMinimize);
  bad.add_variable(1.0);
  bad.add_row(Relation::kLessEqual, -1.0, {Entry{0, 1.0}});
  CHECK(solve(bad).status == Status::kInfeasible);

  LinearProgram unbounded(Sense::kMaximize);
  unbounded.add_variable(1.0);
  unbounded.add_variable(0.0);
  unbounded.add_row(Relation::kGreaterEqual, 0.0, {Entry{0, 1.0}, Entry{1, 1.0}});
  CHECK(solve(unbounded).status == Status::kUnbounded);
}

TEST_CASE("construction rejects malformed programs") {
  LinearProgram prog(Sense::kMinimize);
  prog.add_variable(1.0);
  CHECK_THROWS_AS(prog.add_row(Relation::kEqual, 1.0, {Entry{0, 0.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(prog.add_row(Relation::kEqual, 1.0, {Entry{2, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(prog.add_variable(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("equality rows force phase 1") {
  LinearProgram prog(Sense::kMinimize);
  prog.add_variable(2.0);
  prog.add_variable(3.0);
  prog.add_row(Relation::kEqual, 1.0, {Entry{0, 1.0}, Entry{1, 1.0}});
  Solution sol = solve(prog);
  REQUIRE(sol.optimal());
  CHECK(sol.objective == doctest::Approx(2.0));
  CHECK(sol.x[0] == doctest::Approx(1.0));
}

TEST_CASE("random bounded programs match vertex enumeration") {
  Rng rng(20260810);
  for (int trial = 0; trial < 30; ++trial) {
    Eigen::MatrixXd a;
    Eigen::VectorXd b, c;
    LinearProgram prog = random_bounded_lp(rng, 6, 8, &a, &b, &c);
    Solution sol = solve(prog);
    REQUIRE(sol.optimal());
    double brute = vertex_enumeration_optimum(a, b, c);
    CHECK(sol.objective == doctest::Approx(brute).epsilon(1e-8));
  }
}

TEST_CASE("optimal solves satisfy the residual contract") {
  Rng rng(777);
  for (int trial = 0; trial < 40; ++trial) {
    Eigen::MatrixXd a;
    Eigen::VectorXd b, c;
    LinearProgram prog = random_bounded_lp(rng, 5, 6, &a, &b, &c);
    Solution sol = solve(prog);
    REQUIRE(sol.optimal());
    CHECK(sol.primal_residual <= Tolerances::kFeas);
    CHECK(sol.dual_residual <= Tolerances::kFeas);
    CHECK(sol.duality_gap <= Tolerances::kGap);

    // The solve's own duals are a passing certificate.
    DualCertificate cert{sol.y, sol.dual_objective, false};
    CertificateCheck check = verify_certificate(prog, cert);
    CHECK(check.feasible);
    CHECK(check.direction_ok);
    CHECK(std::abs(check.dual_objective - sol.objective) <= 1e-6);
  }
}

TEST_CASE("dual of the dual reproduces the primal optimum") {
  Rng rng(31337);
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::MatrixXd a;
    Eigen::VectorXd b, c;
    LinearProgram prog = random_bounded_lp(rng, 4, 5, &a, &b, &c);
    Solution direct = solve(prog);
    REQUIRE(direct.optimal());

    LinearProgram dual = dualize(prog);
    Solution dual_sol = solve(dual);
    REQUIRE(dual_sol.optimal());
    CHECK(dual_sol.objective ==
          doctest::Approx(direct.objective).epsilon(1e-7));

    LinearProgram dual_dual = dualize(dual);
    Solution again = solve(dual_dual);
    REQUIRE(again.optimal());
    CHECK(again.objective == doctest::Approx(direct.objective).epsilon(1e-7));
  }
}

TEST_CASE("zero certificate bounds a nonnegative-cost program by zero") {
  LinearProgram prog(Sense::kMinimize);
  prog.add_variable(1.0);
  prog.add_variable(2.0);
  prog.add_row(Relation::kGreaterEqual, 1.0, {Entry{0, 1.0}, Entry{1, 1.0}});
  DualCertificate zero{{0.0}, 0.0, true};
  CertificateCheck check = verify_certificate(prog, zero);
  CHECK(check.feasible);
  CHECK(check.bound_matches);
  CHECK(check.ok());
}

TEST_CASE("perturbed certificates are rejected with a residual") {
  LinearProgram prog(Sense::kMinimize);
  prog.add_variable(1.0);
  prog.add_row(Relation::kGreaterEqual, 3.0, {Entry{0, 1.0}});
  Solution sol = solve(prog);
  REQUIRE(sol.optimal());
  DualCertificate cert{sol.y, sol.dual_objective, true};
  REQUIRE(verify_certificate(prog, cert).ok());

  DualCertificate bad = cert;
  bad.y[0] += 0.1;  // dual constraint y <= c now fails
  CertificateCheck check = verify_certificate(prog, bad);
  CHECK_FALSE(check.feasible);
  CHECK(check.max_residual > Tolerances::kFeas);
}

TEST_CASE("certificate dimension mismatch is a construction error") {
  LinearProgram prog(Sense::kMinimize);
  prog.add_variable(1.0);
  prog.add_row(Relation::kGreaterEqual, 3.0, {Entry{0, 1.0}});
  DualCertificate cert{{1.0, 2.0}, 0.0, true};
  CHECK_THROWS_AS(verify_certificate(prog, cert), std::invalid_argument);
}

TEST_CASE("exact rational certificates") {
  RationalLp prog;
  prog.sense = Sense::kMinimize;
  prog.objective = {Rational(1)};
  prog.var_sign = {VarSign::kNonNegative};
  prog.rows = {{{0, Rational(1)}}};
  prog.relation = {Relation::kGreaterEqual};
  prog.rhs = {Rational(3)};

  RationalCertificate cert;
  cert.y = {Rational(1)};
  cert.bound = Rational(3);
  ExactCertificateCheck check = verify_certificate_exact(prog, cert);
  CHECK(check.feasible);
  CHECK(check.bound_matches);
  CHECK(check.max_violation == 0);

  cert.y = {rational_from_decimal("1.000001")};
  ExactCertificateCheck bad = verify_certificate_exact(prog, cert);
  CHECK_FALSE(bad.feasible);
  CHECK(bad.max_violation == rational_from_decimal("0.000001"));
}

TEST_CASE("decimal literals parse exactly") {
  CHECK(rational_from_decimal("0.612275") == Rational(612275, 1000000));
  CHECK(rational_from_decimal("-3.2") == Rational(-16, 5));
  CHECK(rational_from_decimal("7") == Rational(7));
  CHECK_THROWS_AS(rational_from_decimal("1e-3"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_decimal(""), std::invalid_argument);
}

TEST_CASE("cplex text export mentions every piece") {
  LinearProgram prog(Sense::kMaximize);
  prog.add_variable(1.0);
  prog.add_variable(1.0, -kInfinity, kInfinity);
  prog.add_row(Relation::kLessEqual, 1.0, {Entry{0, 2.0}, Entry{1, -1.0}});
  std::string text = prog.to_cplex_lp("demo");
  CHECK(text.find("Maximize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("x1 free") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
}
