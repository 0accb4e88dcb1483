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

#ifndef DUELBENCH_LP_HPP_
#define DUELBENCH_LP_HPP_

#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "duelbench/common.hpp"
#include "duelbench/rational.hpp"

namespace duelbench::lp {

enum class Sense { kMinimize, kMaximize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class Status { kOptimal, kInfeasible, kUnbounded };

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// One sparse coefficient of a constraint row.
struct Entry {
  int column = 0;
  double value = 0.0;
};

/// A linear program in general row form:
///
///   optimize  c'x   subject to   a_i'x {<=,=,>=} b_i,   l <= x <= u.
///
/// Rows are stored sparse, row-major. Variables default to [0, +inf).
/// Construction validates dimensions eagerly: a malformed program is a bug
/// at the call site, not a solve-time condition.
class LinearProgram {
 public:
  explicit LinearProgram(Sense sense = Sense::kMinimize) : sense_(sense) {}

  /// Adds a variable and returns its column index.
  int add_variable(double objective = 0.0, double lower = 0.0,
                   double upper = kInfinity);

  /// Adds a constraint row. Rejects empty rows and out-of-range columns.
  int add_row(Relation relation, double rhs, std::span<const Entry> entries);
  int add_row(Relation relation, double rhs,
              std::initializer_list<Entry> entries);

  Sense sense() const { return sense_; }
  int num_variables() const { return static_cast<int>(objective_.size()); }
  int num_rows() const { return static_cast<int>(rhs_.size()); }

  double objective_coeff(int column) const { return objective_[column]; }
  double lower_bound(int column) const { return lower_[column]; }
  double upper_bound(int column) const { return upper_[column]; }
  Relation row_relation(int row) const { return relation_[row]; }
  double row_rhs(int row) const { return rhs_[row]; }
  std::span<const Entry> row(int r) const {
    return {entries_.data() + row_start_[r],
            static_cast<size_t>(row_start_[r + 1] - row_start_[r])};
  }

  /// Checks the container invariants; throws std::invalid_argument.
  void validate() const;

  /// CPLEX-LP text rendering, for cross-checking against external solvers.
  std::string to_cplex_lp(const std::string& name = "duelbench") const;

 private:
  Sense sense_;
  std::vector<double> objective_;
  std::vector<double> lower_, upper_;
  std::vector<int> row_start_{0};
  std::vector<Entry> entries_;
  std::vector<Relation> relation_;
  std::vector<double> rhs_;
};

/// Result of a solve. On kOptimal the primal point, row duals and reduced
/// costs satisfy the residual bounds below (checked by the solver itself).
struct Solution {
  Status status = Status::kInfeasible;
  std::vector<double> x;              ///< primal point
  double objective = 0.0;             ///< c'x in the program's own sense
  std::vector<double> y;              ///< row duals (see sign convention)
  std::vector<double> reduced_costs;  ///< per-variable reduced costs
  double dual_objective = 0.0;
  double primal_residual = 0.0;  ///< max row/bound violation
  double dual_residual = 0.0;    ///< max reduced-cost sign violation
  double duality_gap = 0.0;      ///< |primal - dual| / (1 + |primal|)
  long iterations = 0;

  bool optimal() const { return status == Status::kOptimal; }
};

/// Sign convention for duals: for a minimization program, y_i >= 0 on >=
/// rows, y_i <= 0 on <= rows, free on equalities; reduced costs of
/// variables with lower bound 0 are >= 0. Maximization flips every sign.
struct SolverOptions {
  double feas_tol = Tolerances::kFeas;
  double gap_tol = Tolerances::kGap;
  /// Dantzig pricing for the first 10*(rows+cols) pivots, Bland afterwards.
  long dantzig_factor = 10;
  /// Hard pivot budget, 50*(rows+cols); beyond it we give up.
  long iteration_cap_factor = 50;
};

/// Bounded-variable primal simplex with an explicit dense basis inverse.
/// Throws NumericalBreakdown if the pivot budget is exhausted.
Solution solve(const LinearProgram& lp, const SolverOptions& options = {});

/// A claimed bound on an LP optimum, backed by a dual point. Verification
/// is the proof step: the bound may only be reported once verify passes.
struct DualCertificate {
  std::vector<double> y;
  double bound = 0.0;
  /// True when the bound claims optimum >= bound (a minimization program),
  /// false for optimum <= bound.
  bool lower_bound = true;
};

struct CertificateCheck {
  bool feasible = false;      ///< y is dual-feasible within feas_tol
  bool bound_matches = false; ///< dual objective equals the claimed bound
  bool direction_ok = false;  ///< claimed direction is the weak-duality one
  double max_residual = 0.0;
  double dual_objective = 0.0;

  bool ok() const { return feasible && bound_matches && direction_ok; }
};

/// Checks that cert.y is feasible for the dual of lp and that its dual
/// objective equals the claimed bound within 1e-6. Weak duality then makes
/// the bound valid in the claimed direction. Only programs whose variables
/// are nonnegative or free are supported here; that is the class every
/// certificate in this toolkit lives in.
CertificateCheck verify_certificate(const LinearProgram& lp,
                                    const DualCertificate& cert,
                                    double feas_tol = Tolerances::kFeas);

/// Builds the explicit dual of lp (variables nonnegative or free only).
LinearProgram dualize(const LinearProgram& lp);

// ---------------------------------------------------------------------------
// Exact-rational mirror, used where a published table is re-checked as a
// formal step. No solving here, only arithmetic-free feasibility.
// ---------------------------------------------------------------------------

enum class VarSign { kNonNegative, kFree };

struct RationalEntry {
  int column = 0;
  Rational value;
};

struct RationalLp {
  Sense sense = Sense::kMinimize;
  std::vector<Rational> objective;
  std::vector<VarSign> var_sign;
  std::vector<std::vector<RationalEntry>> rows;
  std::vector<Relation> relation;
  std::vector<Rational> rhs;
  std::vector<std::string> var_names;  ///< optional, for diagnostics

  int num_variables() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
};

struct RationalCertificate {
  std::vector<Rational> y;
  Rational bound;
  bool lower_bound = true;
};

struct ExactCertificateCheck {
  bool feasible = false;
  bool bound_matches = false;
  Rational max_violation;       ///< exact; feasible iff <= 0
  Rational dual_objective;
  std::string worst_constraint; ///< human-readable locus of the violation
};

/// Exact dual-feasibility check. max_violation is the exact worst residual;
/// a feasible certificate has max_violation <= 0 (reported as 0).
ExactCertificateCheck verify_certificate_exact(const RationalLp& lp,
                                               const RationalCertificate& cert);

/// Double-precision rendering of an exact program, for the solver.
LinearProgram to_double_lp(const RationalLp& lp);

}  // namespace duelbench::lp

#endif  // DUELBENCH_LP_HPP_
