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

#include "duelbench/lp.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace duelbench::lp {

int LinearProgram::add_variable(double objective, double lower, double upper) {
  if (!(lower <= upper)) {
    throw std::invalid_argument("variable bounds must satisfy lower <= upper");
  }
  if (std::isnan(objective)) {
    throw std::invalid_argument("objective coefficient must not be NaN");
  }
  objective_.push_back(objective);
  lower_.push_back(lower);
  upper_.push_back(upper);
  return num_variables() - 1;
}

int LinearProgram::add_row(Relation relation, double rhs,
                           std::span<const Entry> entries) {
  if (entries.empty()) {
    throw std::invalid_argument("constraint rows must not be empty");
  }
  bool any_nonzero = false;
  for (const Entry& e : entries) {
    if (e.column < 0 || e.column >= num_variables()) {
      throw std::invalid_argument("row references unknown variable column");
    }
    if (!std::isfinite(e.value)) {
      throw std::invalid_argument("row coefficients must be finite");
    }
    if (e.value != 0.0) any_nonzero = true;
  }
  if (!any_nonzero) {
    throw std::invalid_argument("constraint rows need a nonzero coefficient");
  }
  if (!std::isfinite(rhs)) {
    throw std::invalid_argument("right-hand sides must be finite");
  }
  entries_.insert(entries_.end(), entries.begin(), entries.end());
  row_start_.push_back(static_cast<int>(entries_.size()));
  relation_.push_back(relation);
  rhs_.push_back(rhs);
  return num_rows() - 1;
}

int LinearProgram::add_row(Relation relation, double rhs,
                           std::initializer_list<Entry> entries) {
  return add_row(relation, rhs, std::span<const Entry>(entries.begin(), entries.size()));
}

void LinearProgram::validate() const {
  if (objective_.size() != lower_.size() || lower_.size() != upper_.size()) {
    throw std::invalid_argument("inconsistent variable arrays");
  }
  if (rhs_.size() != relation_.size() ||
      row_start_.size() != rhs_.size() + 1) {
    throw std::invalid_argument("inconsistent row arrays");
  }
  for (int j = 0; j < num_variables(); ++j) {
    if (!(lower_[j] <= upper_[j])) {
      throw std::invalid_argument("variable bounds must satisfy lower <= upper");
    }
  }
  for (int r = 0; r < num_rows(); ++r) {
    bool any = false;
    for (const Entry& e : row(r)) {
      if (e.column < 0 || e.column >= num_variables()) {
        throw std::invalid_argument("row references unknown variable column");
      }
      if (e.value != 0.0) any = true;
    }
    if (!any) throw std::invalid_argument("empty constraint row");
  }
}

namespace {
std::string coeff_str(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}
}  // namespace

std::string LinearProgram::to_cplex_lp(const std::string& name) const {
  std::ostringstream os;
  os << "\\ " << name << "\n";
  os << (sense_ == Sense::kMinimize ? "Minimize" : "Maximize") << "\n obj:";
  bool first = true;
  for (int j = 0; j < num_variables(); ++j) {
    double c = objective_[j];
    if (c == 0.0) continue;
    os << (first ? " " : (c >= 0 ? " + " : " - "));
    if (!first) c = std::abs(c);
    os << coeff_str(c) << " x" << j;
    first = false;
  }
  if (first) os << " 0 x0";
  os << "\nSubject To\n";
  for (int r = 0; r < num_rows(); ++r) {
    os << " c" << r << ":";
    bool f = true;
    for (const Entry& e : row(r)) {
      double c = e.value;
      os << (f ? " " : (c >= 0 ? " + " : " - "));
      if (!f) c = std::abs(c);
      os << coeff_str(c) << " x" << e.column;
      f = false;
    }
    switch (relation_[r]) {
      case Relation::kLessEqual: os << " <= "; break;
      case Relation::kEqual: os << " = "; break;
      case Relation::kGreaterEqual: os << " >= "; break;
    }
    os << coeff_str(rhs_[r]) << "\n";
  }
  os << "Bounds\n";
  for (int j = 0; j < num_variables(); ++j) {
    double lo = lower_[j], up = upper_[j];
    if (lo == 0.0 && up == kInfinity) continue;  // the implicit default
    if (lo == -kInfinity && up == kInfinity) {
      os << " x" << j << " free\n";
    } else if (lo == up) {
      os << " x" << j << " = " << coeff_str(lo) << "\n";
    } else {
      if (lo == -kInfinity) {
        os << " -inf <= x" << j;
      } else {
        os << " " << coeff_str(lo) << " <= x" << j;
      }
      if (up != kInfinity) os << " <= " << coeff_str(up);
      os << "\n";
    }
  }
  os << "End\n";
  return os.str();
}

namespace {

enum class BoundClass { kNonNegative, kNonPositive, kFree };

BoundClass classify_bounds(const LinearProgram& lp, int j) {
  double lo = lp.lower_bound(j), up = lp.upper_bound(j);
  if (lo == 0.0 && up == kInfinity) return BoundClass::kNonNegative;
  if (lo == -kInfinity && up == 0.0) return BoundClass::kNonPositive;
  if (lo == -kInfinity && up == kInfinity) return BoundClass::kFree;
  throw std::invalid_argument(
      "this operation supports sign-constrained or free variables only");
}

}  // namespace

CertificateCheck verify_certificate(const LinearProgram& lp,
                                    const DualCertificate& cert,
                                    double feas_tol) {
  if (static_cast<int>(cert.y.size()) != lp.num_rows()) {
    throw std::invalid_argument("certificate dimension does not match rows");
  }
  const bool minimize = lp.sense() == Sense::kMinimize;
  CertificateCheck out;
  double worst = 0.0;

  // Row-dual signs. For a minimization program y >= 0 on >= rows and
  // y <= 0 on <= rows; maximization flips both.
  for (int r = 0; r < lp.num_rows(); ++r) {
    double y = cert.y[r];
    double violation = 0.0;
    switch (lp.row_relation(r)) {
      case Relation::kGreaterEqual: violation = minimize ? -y : y; break;
      case Relation::kLessEqual: violation = minimize ? y : -y; break;
      case Relation::kEqual: violation = 0.0; break;
    }
    worst = std::max(worst, violation);
  }

  // Reduced-cost conditions per variable.
  std::vector<double> ydota(lp.num_variables(), 0.0);
  for (int r = 0; r < lp.num_rows(); ++r) {
    for (const Entry& e : lp.row(r)) ydota[e.column] += cert.y[r] * e.value;
  }
  for (int j = 0; j < lp.num_variables(); ++j) {
    double z = lp.objective_coeff(j) - ydota[j];
    double violation = 0.0;
    switch (classify_bounds(lp, j)) {
      case BoundClass::kNonNegative: violation = minimize ? -z : z; break;
      case BoundClass::kNonPositive: violation = minimize ? z : -z; break;
      case BoundClass::kFree: violation = std::abs(z); break;
    }
    worst = std::max(worst, violation);
  }

  double dobj = 0.0;
  for (int r = 0; r < lp.num_rows(); ++r) dobj += cert.y[r] * lp.row_rhs(r);

  out.max_residual = worst;
  out.feasible = worst <= feas_tol;
  out.dual_objective = dobj;
  out.bound_matches = std::abs(dobj - cert.bound) <= 1e-6;
  // Weak duality: a dual point lower-bounds a minimum and upper-bounds a
  // maximum. Any other claim is rejected outright.
  out.direction_ok = (cert.lower_bound == minimize);
  return out;
}

LinearProgram dualize(const LinearProgram& lp) {
  const bool minimize = lp.sense() == Sense::kMinimize;
  LinearProgram dual(minimize ? Sense::kMaximize : Sense::kMinimize);

  // One dual variable per primal row, sign from the row relation.
  for (int r = 0; r < lp.num_rows(); ++r) {
    double lo = 0.0, up = kInfinity;
    switch (lp.row_relation(r)) {
      case Relation::kGreaterEqual:
        if (minimize) { lo = 0.0; up = kInfinity; } else { lo = -kInfinity; up = 0.0; }
        break;
      case Relation::kLessEqual:
        if (minimize) { lo = -kInfinity; up = 0.0; } else { lo = 0.0; up = kInfinity; }
        break;
      case Relation::kEqual:
        lo = -kInfinity; up = kInfinity;
        break;
    }
    dual.add_variable(lp.row_rhs(r), lo, up);
  }

  // One dual row per primal variable: A_j' y vs c_j.
  std::vector<std::vector<Entry>> cols(lp.num_variables());
  for (int r = 0; r < lp.num_rows(); ++r) {
    for (const Entry& e : lp.row(r)) cols[e.column].push_back({r, e.value});
  }
  for (int j = 0; j < lp.num_variables(); ++j) {
    Relation rel;
    switch (classify_bounds(lp, j)) {
      case BoundClass::kNonNegative:
        rel = minimize ? Relation::kLessEqual : Relation::kGreaterEqual;
        break;
      case BoundClass::kNonPositive:
        rel = minimize ? Relation::kGreaterEqual : Relation::kLessEqual;
        break;
      case BoundClass::kFree:
        rel = Relation::kEqual;
        break;
    }
    if (cols[j].empty()) {
      throw std::invalid_argument("dualize requires every variable to appear in a row");
    }
    dual.add_row(rel, lp.objective_coeff(j), cols[j]);
  }
  return dual;
}

ExactCertificateCheck verify_certificate_exact(
    const RationalLp& lp, const RationalCertificate& cert) {
  if (static_cast<int>(cert.y.size()) != lp.num_rows()) {
    throw std::invalid_argument("certificate dimension does not match rows");
  }
  const bool minimize = lp.sense == Sense::kMinimize;
  ExactCertificateCheck out;
  Rational worst = 0;
  std::string worst_name;

  for (int r = 0; r < lp.num_rows(); ++r) {
    const Rational& y = cert.y[r];
    Rational violation = 0;
    switch (lp.relation[r]) {
      case Relation::kGreaterEqual: violation = minimize ? Rational(-y) : y; break;
      case Relation::kLessEqual: violation = minimize ? y : Rational(-y); break;
      case Relation::kEqual: violation = 0; break;
    }
    if (violation > worst) {
      worst = violation;
      worst_name = "sign of dual multiplier for row " + std::to_string(r);
    }
  }

  std::vector<Rational> ydota(lp.num_variables(), Rational(0));
  for (int r = 0; r < lp.num_rows(); ++r) {
    for (const RationalEntry& e : lp.rows[r]) {
      ydota[e.column] += cert.y[r] * e.value;
    }
  }
  for (int j = 0; j < lp.num_variables(); ++j) {
    Rational z = lp.objective[j] - ydota[j];
    Rational violation = 0;
    if (lp.var_sign[j] == VarSign::kNonNegative) {
      violation = minimize ? Rational(-z) : z;
    } else {
      violation = z < 0 ? Rational(-z) : z;
    }
    if (violation > worst) {
      worst = violation;
      std::string name = j < static_cast<int>(lp.var_names.size())
                             ? lp.var_names[j]
                             : "variable " + std::to_string(j);
      worst_name = "dual constraint of " + name;
    }
  }

  Rational dobj = 0;
  for (int r = 0; r < lp.num_rows(); ++r) dobj += cert.y[r] * lp.rhs[r];

  out.feasible = worst <= 0;
  out.max_violation = out.feasible ? Rational(0) : worst;
  out.dual_objective = dobj;
  out.bound_matches = (dobj == cert.bound);
  out.worst_constraint = out.feasible ? "" : worst_name;
  return out;
}

LinearProgram to_double_lp(const RationalLp& rlp) {
  LinearProgram lp(rlp.sense);
  for (int j = 0; j < rlp.num_variables(); ++j) {
    double lo = rlp.var_sign[j] == VarSign::kNonNegative ? 0.0 : -kInfinity;
    lp.add_variable(to_double(rlp.objective[j]), lo, kInfinity);
  }
  std::vector<Entry> buf;
  for (int r = 0; r < rlp.num_rows(); ++r) {
    buf.clear();
    for (const RationalEntry& e : rlp.rows[r]) {
      buf.push_back({e.column, to_double(e.value)});
    }
    lp.add_row(rlp.relation[r], to_double(rlp.rhs[r]), buf);
  }
  return lp;
}

}  // namespace duelbench::lp
