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

#include "duelbench/minimax.hpp"

#include <cmath>
#include <stdexcept>

namespace duelbench {

using lp::Entry;
using lp::LinearProgram;
using lp::Relation;
using lp::Sense;

MinimaxPolytope::MinimaxPolytope(const DuelInstance& g)
    : game_(g), m_(g.num_strategies()), payoff_(payoff_matrix(g)) {}

double MinimaxPolytope::guarantee(const MixedStrategy& x) const {
  double worst = 2.0;
  for (int t = 0; t < m_; ++t) {
    double u = 0.0;
    for (int s = 0; s < m_; ++s) {
      if (x.weight(s) != 0.0) u += x.weight(s) * payoff_at(s, t);
    }
    worst = std::min(worst, u);
  }
  return worst;
}

LinearProgram MinimaxPolytope::objective_lp(const std::vector<double>& score,
                                            Sense sense) const {
  if (static_cast<int>(score.size()) != m_) {
    throw std::invalid_argument("score vector does not match the catalog");
  }
  LinearProgram prog(sense);
  for (int s = 0; s < m_; ++s) prog.add_variable(score[s], 0.0, lp::kInfinity);
  std::vector<Entry> row;
  // Guarantee against every pure opponent.
  for (int t = 0; t < m_; ++t) {
    row.clear();
    for (int s = 0; s < m_; ++s) {
      double u = payoff_at(s, t);
      if (u != 0.0) row.push_back({s, u});
    }
    if (row.empty()) continue;  // a fully tied column constrains nothing
    prog.add_row(Relation::kGreaterEqual, 0.0, row);
  }
  row.clear();
  for (int s = 0; s < m_; ++s) row.push_back({s, 1.0});
  prog.add_row(Relation::kEqual, 1.0, row);
  return prog;
}

double game_value(const DuelInstance& g) {
  const int m = g.num_strategies();
  std::vector<double> payoff = payoff_matrix(g);
  LinearProgram prog(Sense::kMaximize);
  for (int s = 0; s < m; ++s) prog.add_variable(0.0, 0.0, lp::kInfinity);
  const int v = prog.add_variable(1.0, -lp::kInfinity, lp::kInfinity);
  std::vector<Entry> row;
  for (int t = 0; t < m; ++t) {
    row.clear();
    for (int s = 0; s < m; ++s) {
      double u = payoff[static_cast<size_t>(s) * m + t];
      if (u != 0.0) row.push_back({s, u});
    }
    row.push_back({v, -1.0});
    prog.add_row(Relation::kGreaterEqual, 0.0, row);
  }
  row.clear();
  for (int s = 0; s < m; ++s) row.push_back({s, 1.0});
  prog.add_row(Relation::kEqual, 1.0, row);
  lp::Solution sol = lp::solve(prog);
  if (!sol.optimal()) {
    throw NumericalBreakdown("matrix-game LP did not reach an optimum");
  }
  return sol.objective;
}

namespace {

MinimaxResult optimize_over_polytope(const DuelInstance& g,
                                     const std::vector<double>& score,
                                     Sense sense) {
  MinimaxPolytope polytope(g);
  LinearProgram prog = polytope.objective_lp(score, sense);
  lp::Solution sol = lp::solve(prog);
  if (sol.status == lp::Status::kInfeasible) {
    // Cannot happen for a shared-catalog duel; the polytope contains every
    // optimal matrix-game strategy.
    throw NumericalBreakdown("minimax polytope LP reported infeasible");
  }
  if (!sol.optimal()) {
    throw NumericalBreakdown("minimax polytope LP did not reach an optimum");
  }
  MixedStrategy x(sol.x);
  double guarantee = polytope.guarantee(x);
  return MinimaxResult{sol.objective, std::move(x), guarantee};
}

}  // namespace

MinimaxResult worst_minimax_welfare(const DuelInstance& g) {
  std::vector<double> sw(g.num_strategies());
  for (int s = 0; s < g.num_strategies(); ++s) sw[s] = social_welfare_pure(g, s);
  return optimize_over_polytope(g, sw, Sense::kMinimize);
}

MinimaxResult best_minimax_welfare(const DuelInstance& g) {
  std::vector<double> sw(g.num_strategies());
  for (int s = 0; s < g.num_strategies(); ++s) sw[s] = social_welfare_pure(g, s);
  return optimize_over_polytope(g, sw, Sense::kMaximize);
}

MinimaxResult worst_minimax_cost(const DuelInstance& g) {
  std::vector<double> sc(g.num_strategies());
  for (int s = 0; s < g.num_strategies(); ++s) sc[s] = social_cost_pure(g, s);
  return optimize_over_polytope(g, sc, Sense::kMaximize);
}

double price_of_competition(const DuelInstance& g) {
  double opt = optimal_welfare(g).first;
  if (!(opt > 0.0)) {
    throw std::invalid_argument("price of competition needs a positive optimum");
  }
  return worst_minimax_welfare(g).value / opt;
}

double price_of_competition_cost(const DuelInstance& g) {
  double opt = optimal_cost(g).first;
  if (!(opt > 0.0)) {
    throw std::invalid_argument("cost ratio needs a positive optimal cost");
  }
  return worst_minimax_cost(g).value / opt;
}

double MarginalMatrix::stochasticity_residual() const {
  double worst = 0.0;
  for (int w = 0; w < n; ++w) {
    double row = 0.0;
    for (int i = 0; i < n; ++i) {
      double v = at(w, i);
      row += v;
      worst = std::max(worst, -v);
      worst = std::max(worst, v - 1.0);
    }
    worst = std::max(worst, std::abs(row - 1.0));
  }
  for (int i = 0; i < n; ++i) {
    double col = 0.0;
    for (int w = 0; w < n; ++w) col += at(w, i);
    worst = std::max(worst, std::abs(col - 1.0));
  }
  return worst;
}

MarginalResult ranking_minimax_marginal(const RankingSpec& spec,
                                        MarginalObjective objective) {
  if (!spec.strictly_decreasing_f()) {
    throw std::invalid_argument(
        "marginal path needs a strictly decreasing valuation; "
        "use the explicit path for anything else");
  }
  const int n = spec.n();
  const std::vector<double>& p = spec.probabilities();
  const std::vector<double>& f = spec.f();

  LinearProgram prog(objective == MarginalObjective::kWorstWelfare
                         ? Sense::kMinimize
                         : Sense::kMaximize);
  // q[w][i]: probability page w sits at position i.
  auto qvar = [n](int w, int i) { return w * n + i; };
  for (int w = 0; w < n; ++w) {
    for (int i = 0; i < n; ++i) {
      prog.add_variable(p[w] * f[i], 0.0, 1.0);
    }
  }
  // Duals of the opponent's inner assignment problem.
  const int u0 = n * n;
  const int w0 = n * n + n;
  for (int i = 0; i < 2 * n; ++i) {
    prog.add_variable(0.0, -lp::kInfinity, lp::kInfinity);
  }

  std::vector<Entry> row;
  for (int w = 0; w < n; ++w) {
    row.clear();
    for (int i = 0; i < n; ++i) row.push_back({qvar(w, i), 1.0});
    prog.add_row(Relation::kEqual, 1.0, row);
  }
  for (int i = 0; i < n; ++i) {
    row.clear();
    for (int w = 0; w < n; ++w) row.push_back({qvar(w, i), 1.0});
    prog.add_row(Relation::kEqual, 1.0, row);
  }
  // u_w + v_j <= cost of the opponent putting page w at position j, which
  // is p_w * (Pr[our w ranks better than j] - Pr[worse]).
  for (int w = 0; w < n; ++w) {
    for (int j = 0; j < n; ++j) {
      row.clear();
      row.push_back({u0 + w, 1.0});
      row.push_back({w0 + j, 1.0});
      for (int i = 0; i < n; ++i) {
        if (i < j) row.push_back({qvar(w, i), -p[w]});
        else if (i > j) row.push_back({qvar(w, i), p[w]});
      }
      prog.add_row(Relation::kLessEqual, 0.0, row);
    }
  }
  // The opponent's best response still loses no more than it wins.
  row.clear();
  for (int i = 0; i < 2 * n; ++i) row.push_back({u0 + i, 1.0});
  prog.add_row(Relation::kGreaterEqual, 0.0, row);

  lp::Solution sol = lp::solve(prog);
  if (!sol.optimal()) {
    throw NumericalBreakdown("marginal minimax LP did not reach an optimum");
  }
  MarginalMatrix q;
  q.n = n;
  q.q.assign(sol.x.begin(), sol.x.begin() + n * n);
  return MarginalResult{sol.objective, std::move(q)};
}

}  // namespace duelbench
