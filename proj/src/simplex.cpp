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
//
// Bounded-variable primal simplex. The basis inverse is kept explicitly and
// updated by rank-one row operations; duals are updated incrementally and
// recomputed from scratch on a fixed cadence. Pricing is Devex with a Bland
// fallback once the pivot budget for it runs out. Phase 1 adds one
// artificial column per row whose slack cannot absorb the right-hand side.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "duelbench/lp.hpp"

namespace duelbench::lp {
namespace {

constexpr double kInf = kInfinity;
constexpr double kPivotTol = 1e-11;    // coefficients below this never pivot
constexpr double kRatioRelax = 1e-10;  // bound relaxation in the ratio test
constexpr double kDevexReset = 1e12;   // weight overflow forces a new frame

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class VState : std::uint8_t { kBasic, kAtLower, kAtUpper, kFreeZero };

struct SparseColumn {
  std::vector<int> rows;
  std::vector<double> vals;
};

class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SolverOptions& opt)
      : opt_(opt), m_(lp.num_rows()), n_struct_(lp.num_variables()) {
    lp.validate();
    flip_ = lp.sense() == Sense::kMaximize ? -1.0 : 1.0;

    const int n_slack = m_;
    cols_.resize(n_struct_ + n_slack);
    lo_.resize(cols_.size());
    hi_.resize(cols_.size());
    cost2_.assign(cols_.size(), 0.0);
    for (int j = 0; j < n_struct_; ++j) {
      lo_[j] = lp.lower_bound(j);
      hi_[j] = lp.upper_bound(j);
      cost2_[j] = flip_ * lp.objective_coeff(j);
    }
    b_.resize(m_);
    for (int r = 0; r < m_; ++r) {
      b_[r] = lp.row_rhs(r);
      for (const Entry& e : lp.row(r)) {
        cols_[e.column].rows.push_back(r);
        cols_[e.column].vals.push_back(e.value);
      }
      const int slack = n_struct_ + r;
      cols_[slack].rows.push_back(r);
      cols_[slack].vals.push_back(1.0);
      switch (lp.row_relation(r)) {
        case Relation::kLessEqual: lo_[slack] = 0.0; hi_[slack] = kInf; break;
        case Relation::kGreaterEqual: lo_[slack] = -kInf; hi_[slack] = 0.0; break;
        case Relation::kEqual: lo_[slack] = 0.0; hi_[slack] = 0.0; break;
      }
    }

    long size_factor = m_ + n_struct_;
    dantzig_budget_ = opt_.dantzig_factor * size_factor;
    iteration_cap_ = opt_.iteration_cap_factor * size_factor;
  }

  Solution run(const LinearProgram& lp) {
    init_basis();
    Solution out;
    if (need_phase1_) {
      cost_ = cost1_;
      Phase phase1 = iterate();
      if (phase1 == Phase::kUnbounded) {
        throw NumericalBreakdown("phase 1 reported an unbounded direction");
      }
      double infeas = phase_objective();
      double scale = 1.0;
      for (int r = 0; r < m_; ++r) scale = std::max(scale, std::abs(b_[r]));
      if (infeas > 1e-8 * scale) {
        out.status = Status::kInfeasible;
        out.iterations = iter_;
        return out;
      }
      // Pin every artificial at zero and move on to the real objective.
      for (int j = first_artificial_; j < num_cols(); ++j) {
        lo_[j] = hi_[j] = 0.0;
        if (state_[j] != VState::kBasic) state_[j] = VState::kAtLower;
      }
    }
    // Degenerate vertices stall the exact objective; a deterministic cost
    // jitter picks a unique vertex, then the exact costs finish the job.
    const bool perturb = m_ >= 512;
    cost_ = cost2_;
    if (perturb) {
      std::uint64_t state = 0x9E3779B97F4A7C15ULL;
      for (double& c : cost_) {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        double u = static_cast<double>(state >> 11) * 0x1.0p-53;
        c += 1e-7 * (1.0 + std::abs(c)) * u;
      }
    }
    refresh_duals();
    Phase phase2 = iterate();
    if (phase2 == Phase::kUnbounded) {
      out.status = Status::kUnbounded;
      out.iterations = iter_;
      return out;
    }
    if (perturb) {
      cost_ = cost2_;
      refresh_duals();
      phase2 = iterate();
      if (phase2 == Phase::kUnbounded) {
        out.status = Status::kUnbounded;
        out.iterations = iter_;
        return out;
      }
    }
    extract(lp, out);
    return out;
  }

 private:
  enum class Phase { kOptimal, kUnbounded };

  int num_cols() const { return static_cast<int>(cols_.size()); }

  double nonbasic_value(int j) const {
    switch (state_[j]) {
      case VState::kAtLower: return lo_[j];
      case VState::kAtUpper: return hi_[j];
      default: return 0.0;
    }
  }

  bool fixed(int j) const { return lo_[j] == hi_[j]; }

  void init_basis() {
    const int n = num_cols();
    state_.assign(n, VState::kAtLower);
    for (int j = 0; j < n; ++j) {
      if (lo_[j] > -kInf) {
        state_[j] = VState::kAtLower;
      } else if (hi_[j] < kInf) {
        state_[j] = VState::kAtUpper;
      } else {
        state_[j] = VState::kFreeZero;
      }
    }

    Eigen::VectorXd r0 = effective_rhs();
    basic_.assign(m_, -1);
    xb_ = Eigen::VectorXd::Zero(m_);
    binv_ = RowMajorMatrix::Identity(m_, m_);

    first_artificial_ = n;
    need_phase1_ = false;
    cost1_.assign(n, 0.0);
    for (int r = 0; r < m_; ++r) {
      const int slack = n_struct_ + r;
      if (r0[r] >= lo_[slack] && r0[r] <= hi_[slack]) {
        basic_[r] = slack;
        state_[slack] = VState::kBasic;
        xb_[r] = r0[r];
      } else {
        // Slack pinned at zero; an artificial carries the residual.
        state_[slack] = lo_[slack] == 0.0 ? VState::kAtLower : VState::kAtUpper;
        SparseColumn art;
        art.rows.push_back(r);
        art.vals.push_back(1.0);
        cols_.push_back(std::move(art));
        if (r0[r] > 0) {
          lo_.push_back(0.0);
          hi_.push_back(kInf);
          cost1_.push_back(1.0);
        } else {
          lo_.push_back(-kInf);
          hi_.push_back(0.0);
          cost1_.push_back(-1.0);
        }
        cost2_.push_back(0.0);
        state_.push_back(VState::kBasic);
        basic_[r] = num_cols() - 1;
        xb_[r] = r0[r];
        need_phase1_ = true;
      }
    }
    y_ = Eigen::VectorXd::Zero(m_);
    devex_.assign(num_cols(), 1.0);
    if (need_phase1_) {
      cost_ = cost1_;
      refresh_duals();
    }
  }

  // b minus the contribution of nonbasic columns sitting at a nonzero bound.
  Eigen::VectorXd effective_rhs() const {
    Eigen::VectorXd r = b_;
    for (int j = 0; j < num_cols(); ++j) {
      if (state_[j] == VState::kBasic) continue;
      double v = nonbasic_value(j);
      if (v == 0.0) continue;
      const SparseColumn& col = cols_[j];
      for (size_t k = 0; k < col.rows.size(); ++k) {
        r[col.rows[k]] -= col.vals[k] * v;
      }
    }
    return r;
  }

  double phase_objective() const {
    double obj = 0.0;
    for (int r = 0; r < m_; ++r) obj += cost_[basic_[r]] * xb_[r];
    for (int j = 0; j < num_cols(); ++j) {
      if (state_[j] != VState::kBasic && cost_[j] != 0.0) {
        obj += cost_[j] * nonbasic_value(j);
      }
    }
    return obj;
  }

  void refresh_duals() {
    Eigen::VectorXd cb(m_);
    for (int r = 0; r < m_; ++r) cb[r] = cost_[basic_[r]];
    y_.noalias() = binv_.transpose() * cb;
  }

  void refresh_xb() { xb_.noalias() = binv_ * effective_rhs(); }

  void refactor() {
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(m_, m_);
    for (int r = 0; r < m_; ++r) {
      const SparseColumn& col = cols_[basic_[r]];
      for (size_t k = 0; k < col.rows.size(); ++k) {
        basis(col.rows[k], r) = col.vals[k];
      }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
    binv_ = lu.inverse();
    refresh_xb();
    refresh_duals();
    ++refactor_count_;
  }

  double reduced_cost(int j) const {
    const SparseColumn& col = cols_[j];
    double dot = 0.0;
    for (size_t k = 0; k < col.rows.size(); ++k) {
      dot += y_[col.rows[k]] * col.vals[k];
    }
    return cost_[j] - dot;
  }

  // Returns the entering column, or -1 at (tentative) optimality. Devex
  // scores z^2 / weight; Bland mode takes the lowest eligible index.
  int price(bool bland, double* z_out, int* direction) const {
    int best = -1;
    double best_score = 0.0;
    for (int j = 0; j < num_cols(); ++j) {
      VState s = state_[j];
      if (s == VState::kBasic || fixed(j)) continue;
      double z = reduced_cost(j);
      int dir = 0;
      if (s == VState::kAtLower && z < -opt_.feas_tol) {
        dir = +1;
      } else if (s == VState::kAtUpper && z > opt_.feas_tol) {
        dir = -1;
      } else if (s == VState::kFreeZero && std::abs(z) > opt_.feas_tol) {
        dir = z < 0 ? +1 : -1;
      } else {
        continue;
      }
      if (bland) {
        *z_out = z;
        *direction = dir;
        return j;  // lowest eligible index
      }
      double score = z * z / devex_[j];
      if (score > best_score) {
        best_score = score;
        best = j;
        *z_out = z;
        *direction = dir;
      }
    }
    return best;
  }

  Eigen::VectorXd ftran(int j) const {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(m_);
    const SparseColumn& col = cols_[j];
    for (size_t k = 0; k < col.rows.size(); ++k) {
      d.noalias() += col.vals[k] * binv_.col(col.rows[k]);
    }
    return d;
  }

  Phase iterate() {
    int stall_recoveries = 0;
    for (;;) {
      if (iter_ > iteration_cap_) {
        throw NumericalBreakdown(
            "simplex exceeded its pivot budget of 50*(rows+cols) = " +
            std::to_string(iteration_cap_));
      }
      const bool bland = iter_ > dantzig_budget_;
      double zq = 0.0;
      int dir = 0;
      int q = price(bland, &zq, &dir);
      if (q < 0) {
        if (verify_claim()) return Phase::kOptimal;
        if (++stall_recoveries > 8) {
          throw NumericalBreakdown("optimality claim failed to stabilize");
        }
        continue;
      }
      stall_recoveries = 0;

      Eigen::VectorXd d = ftran(q);
      const double sigma = dir;

      // Ratio test, two passes: a relaxed pass fixes the step, then the
      // largest pivot among rows inside that step wins.
      double t_self = kInf;
      if (state_[q] != VState::kFreeZero && lo_[q] > -kInf && hi_[q] < kInf) {
        t_self = hi_[q] - lo_[q];
      }
      double t_relaxed = t_self;
      for (int i = 0; i < m_; ++i) {
        double delta = sigma * d[i];
        if (delta > kPivotTol) {
          double floor = lo_[basic_[i]];
          if (floor > -kInf) {
            t_relaxed = std::min(t_relaxed,
                                 (xb_[i] - (floor - kRatioRelax)) / delta);
          }
        } else if (delta < -kPivotTol) {
          double ceil = hi_[basic_[i]];
          if (ceil < kInf) {
            t_relaxed = std::min(t_relaxed,
                                 ((ceil + kRatioRelax) - xb_[i]) / (-delta));
          }
        }
      }
      if (t_relaxed == kInf) {
        return Phase::kUnbounded;
      }
      if (t_relaxed < 0.0) t_relaxed = 0.0;

      int leave = -1;
      double t = t_self;
      double best_piv = 0.0;
      for (int i = 0; i < m_; ++i) {
        double delta = sigma * d[i];
        double ratio;
        if (delta > kPivotTol) {
          double floor = lo_[basic_[i]];
          if (floor <= -kInf) continue;
          ratio = (xb_[i] - floor) / delta;
        } else if (delta < -kPivotTol) {
          double ceil = hi_[basic_[i]];
          if (ceil >= kInf) continue;
          ratio = (ceil - xb_[i]) / (-delta);
        } else {
          continue;
        }
        if (ratio > t_relaxed) continue;
        if (bland) {
          if (leave < 0 || ratio < t - 1e-15 ||
              (std::abs(ratio - t) <= 1e-15 && basic_[i] < basic_[leave])) {
            leave = i; t = ratio;
          }
        } else if (std::abs(delta) > best_piv) {
          best_piv = std::abs(delta);
          leave = i;
          t = ratio;
        }
      }
      if (t < 0.0) t = 0.0;

      ++iter_;
      if (leave < 0 || t_self <= t) {
        // Bound flip: the entering variable crosses to its other bound.
        double step = t_self;
        xb_.noalias() -= (step * sigma) * d;
        state_[q] =
            state_[q] == VState::kAtLower ? VState::kAtUpper : VState::kAtLower;
        continue;
      }

      pivot(q, leave, d, t, sigma, zq);
      if (m_ <= 1200 && iter_ % 4096 == 0) {
        refactor();
      } else {
        if (iter_ % 512 == 0) refresh_duals();
        if (iter_ % 2048 == 0) refresh_xb();
      }
    }
  }

  void pivot(int q, int r, const Eigen::VectorXd& d, double t, double sigma,
             double zq) {
    const int leaving = basic_[r];
    const double dr = d[r];
    const double delta_r = sigma * dr;
    const double gamma_q = devex_[q];

    xb_.noalias() -= (t * sigma) * d;
    double entering_value = nonbasic_value(q) + sigma * t;

    // The leaving variable lands exactly on the bound it hit.
    state_[leaving] = delta_r > 0 ? VState::kAtLower : VState::kAtUpper;
    if (fixed(leaving)) state_[leaving] = VState::kAtLower;

    basic_[r] = q;
    state_[q] = VState::kBasic;
    xb_[r] = entering_value;

    Eigen::RowVectorXd newrow = binv_.row(r) / dr;
    const double* nr = newrow.data();
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double di = d[i];
      if (std::abs(di) < 1e-14) continue;
      double* row = binv_.data() + static_cast<size_t>(i) * m_;
      for (int c = 0; c < m_; ++c) row[c] -= di * nr[c];
    }
    binv_.row(r) = newrow;

    y_.noalias() += zq * newrow.transpose();

    // Devex weights: every nonbasic column inherits the pivot row's view.
    double worst_weight = 1.0;
    for (int j = 0; j < num_cols(); ++j) {
      if (state_[j] == VState::kBasic || fixed(j)) continue;
      const SparseColumn& col = cols_[j];
      double w = 0.0;
      for (size_t e = 0; e < col.rows.size(); ++e) {
        w += nr[col.rows[e]] * col.vals[e];
      }
      devex_[j] = std::max(devex_[j], w * w * gamma_q);
      worst_weight = std::max(worst_weight, devex_[j]);
    }
    devex_[leaving] = std::max(gamma_q / (dr * dr), 1.0);
    worst_weight = std::max(worst_weight, devex_[leaving]);
    if (worst_weight > kDevexReset) {
      std::fill(devex_.begin(), devex_.end(), 1.0);
    }
  }

  // Re-derives duals and basic values from scratch and confirms both
  // optimality and feasibility before accepting a claim.
  bool verify_claim() {
    refresh_duals();
    double z_ok = 0.0;
    int dir = 0;
    if (price(false, &z_ok, &dir) >= 0) return false;

    Eigen::VectorXd beff = effective_rhs();
    Eigen::VectorXd resid = beff;
    for (int r = 0; r < m_; ++r) {
      const SparseColumn& col = cols_[basic_[r]];
      for (size_t k = 0; k < col.rows.size(); ++k) {
        resid[col.rows[k]] -= col.vals[k] * xb_[r];
      }
    }
    double infnorm = resid.size() ? resid.cwiseAbs().maxCoeff() : 0.0;
    if (infnorm > 0.5 * opt_.feas_tol) {
      xb_.noalias() += binv_ * resid;
      if (bounds_violation() > opt_.feas_tol || refactor_count_ == 0) {
        refactor();
      }
      return price(false, &z_ok, &dir) < 0 && bounds_violation() <= opt_.feas_tol;
    }
    if (bounds_violation() > opt_.feas_tol) {
      refactor();
      return price(false, &z_ok, &dir) < 0 && bounds_violation() <= opt_.feas_tol;
    }
    return true;
  }

  double bounds_violation() const {
    double worst = 0.0;
    for (int r = 0; r < m_; ++r) {
      int j = basic_[r];
      if (lo_[j] > -kInf) worst = std::max(worst, lo_[j] - xb_[r]);
      if (hi_[j] < kInf) worst = std::max(worst, xb_[r] - hi_[j]);
    }
    return worst;
  }

  void extract(const LinearProgram& lp, Solution& out) const {
    out.status = Status::kOptimal;
    out.iterations = iter_;
    out.x.assign(n_struct_, 0.0);
    std::vector<double> full(num_cols(), 0.0);
    for (int j = 0; j < num_cols(); ++j) {
      if (state_[j] != VState::kBasic) full[j] = nonbasic_value(j);
    }
    for (int r = 0; r < m_; ++r) full[basic_[r]] = xb_[r];
    for (int j = 0; j < n_struct_; ++j) out.x[j] = full[j];

    double obj_min = 0.0;
    for (int j = 0; j < num_cols(); ++j) obj_min += cost2_[j] * full[j];
    out.objective = flip_ * obj_min;

    out.y.assign(m_, 0.0);
    out.reduced_costs.assign(n_struct_, 0.0);
    double dual_residual = 0.0;
    double dobj_min = 0.0;
    for (int r = 0; r < m_; ++r) {
      out.y[r] = flip_ * y_[r];
      dobj_min += y_[r] * b_[r];
    }
    for (int j = 0; j < num_cols(); ++j) {
      double z = reduced_cost(j);
      if (j < n_struct_) out.reduced_costs[j] = flip_ * z;
      switch (state_[j]) {
        case VState::kBasic:
          dual_residual = std::max(dual_residual, std::abs(z));
          break;
        case VState::kAtLower:
          if (!fixed(j)) dual_residual = std::max(dual_residual, -z);
          if (lo_[j] != 0.0) dobj_min += z * lo_[j];
          break;
        case VState::kAtUpper:
          if (!fixed(j)) dual_residual = std::max(dual_residual, z);
          if (hi_[j] != 0.0) dobj_min += z * hi_[j];
          break;
        case VState::kFreeZero:
          dual_residual = std::max(dual_residual, std::abs(z));
          break;
      }
    }
    out.dual_objective = flip_ * dobj_min;
    out.dual_residual = dual_residual;

    double primal_residual = 0.0;
    for (int r = 0; r < lp.num_rows(); ++r) {
      double ax = 0.0;
      for (const Entry& e : lp.row(r)) ax += e.value * out.x[e.column];
      double v = 0.0;
      switch (lp.row_relation(r)) {
        case Relation::kLessEqual: v = ax - lp.row_rhs(r); break;
        case Relation::kGreaterEqual: v = lp.row_rhs(r) - ax; break;
        case Relation::kEqual: v = std::abs(ax - lp.row_rhs(r)); break;
      }
      primal_residual = std::max(primal_residual, v);
    }
    for (int j = 0; j < n_struct_; ++j) {
      if (lp.lower_bound(j) > -kInf) {
        primal_residual = std::max(primal_residual, lp.lower_bound(j) - out.x[j]);
      }
      if (lp.upper_bound(j) < kInf) {
        primal_residual = std::max(primal_residual, out.x[j] - lp.upper_bound(j));
      }
    }
    out.primal_residual = primal_residual;
    out.duality_gap = std::abs(out.objective - out.dual_objective) /
                      (1.0 + std::abs(out.objective));
  }

  SolverOptions opt_;
  int m_ = 0;
  int n_struct_ = 0;
  double flip_ = 1.0;
  std::vector<SparseColumn> cols_;
  std::vector<double> lo_, hi_;
  std::vector<double> cost_, cost1_, cost2_;
  Eigen::VectorXd b_;

  std::vector<VState> state_;
  std::vector<int> basic_;
  std::vector<double> devex_;
  Eigen::VectorXd xb_;
  Eigen::VectorXd y_;
  RowMajorMatrix binv_;

  long iter_ = 0;
  long dantzig_budget_ = 0;
  long iteration_cap_ = 0;
  int first_artificial_ = 0;
  bool need_phase1_ = false;
  int refactor_count_ = 0;
};

}  // namespace

Solution solve(const LinearProgram& lp, const SolverOptions& options) {
  Simplex simplex(lp, options);
  return simplex.run(lp);
}

}  // namespace duelbench::lp
