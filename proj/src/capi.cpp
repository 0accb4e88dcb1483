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

#include "duelbench.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "duelbench/factor.hpp"
#include "duelbench/json_io.hpp"
#include "duelbench/minimax.hpp"
#include "duelbench/parallel.hpp"
#include "duelbench/structure.hpp"
#include "duelbench/trigger.hpp"

using nlohmann::json;

struct db_instance {
  duelbench::LoadedInstance loaded;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
db_status wrap(Fn&& fn) {
  try {
    return fn();
  } catch (const duelbench::CapExceeded& e) {
    set_error(e.what());
    return DB_ECAP;
  } catch (const duelbench::SchemaError& e) {
    set_error(e.what());
    return DB_EPARSE;
  } catch (const duelbench::NumericalBreakdown& e) {
    set_error(e.what());
    return DB_ENUMERIC;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return DB_EUSAGE;
  } catch (const std::exception& e) {
    set_error(e.what());
    return DB_ERROR;
  }
}

json support_json(const duelbench::DuelInstance& g,
                  const duelbench::MixedStrategy& x) {
  json out = json::array();
  for (int s : x.support()) {
    json row;
    row["index"] = s;
    if (!g.labels().empty()) row["label"] = g.labels()[s];
    row["weight"] = x.weight(s);
    out.push_back(row);
  }
  return out;
}

}  // namespace

extern "C" {

const char* db_version(void) { return duelbench::version_string(); }

const char* db_tolerances_json(void) {
  static const std::string cached = duelbench::tolerances_json().dump();
  return cached.c_str();
}

const char* db_last_error(void) { return g_last_error.c_str(); }

void db_string_free(char* text) { std::free(text); }

db_status db_instance_from_json(const char* text, int cap_perms,
                                db_instance** out) {
  return wrap([&]() {
    if (text == nullptr || out == nullptr) {
      set_error("null argument");
      return DB_EUSAGE;
    }
    int cap = cap_perms > 0 ? cap_perms : duelbench::kDefaultRankingCap;
    auto* handle = new db_instance{duelbench::load_instance_json(text, cap)};
    *out = handle;
    return DB_OK;
  });
}

db_status db_instance_builtin(const char* name, db_instance** out) {
  return wrap([&]() {
    if (name == nullptr || out == nullptr) {
      set_error("null argument");
      return DB_EUSAGE;
    }
    auto* handle = new db_instance{duelbench::builtin_instance(name)};
    *out = handle;
    return DB_OK;
  });
}

void db_instance_free(db_instance* instance) { delete instance; }

db_status db_instance_info_json(const db_instance* instance, char** out) {
  return wrap([&]() {
    if (instance == nullptr || out == nullptr) {
      set_error("null argument");
      return DB_EUSAGE;
    }
    *out = dup_string(duelbench::instance_info(instance->loaded).dump(2));
    return DB_OK;
  });
}

db_status db_game_value(const db_instance* instance, double* out) {
  return wrap([&]() {
    if (instance == nullptr || out == nullptr) {
      set_error("null argument");
      return DB_EUSAGE;
    }
    *out = duelbench::game_value(instance->loaded.game());
    return DB_OK;
  });
}

db_status db_solve_json(const db_instance* instance, char** out) {
  return wrap([&]() {
    if (instance == nullptr || out == nullptr) {
      set_error("null argument");
      return DB_EUSAGE;
    }
    const duelbench::DuelInstance& g = instance->loaded.game();
    json report = duelbench::report_envelope("solve");
    report["instance"] = duelbench::instance_info(instance->loaded);
    double value = duelbench::game_value(g);
    report["game_value"] = value == 0.0 ? 0.0 : value;  // unsign -0

    if (g.mode() == duelbench::Mode::kWelfare) {
      auto [opt_value, opt_index] = duelbench::optimal_welfare(g);
      duelbench::MinimaxResult worst = duelbench::worst_minimax_welfare(g);
      duelbench::MinimaxResult best = duelbench::best_minimax_welfare(g);
      report["optimal"] = {{"value", opt_value}, {"strategy", opt_index}};
      if (!g.labels().empty()) report["optimal"]["label"] = g.labels()[opt_index];
      report["worst_minimax"] = {{"value", worst.value},
                                 {"guarantee", worst.guarantee},
                                 {"support", support_json(g, worst.strategy)}};
      report["best_minimax"] = {{"value", best.value},
                                {"guarantee", best.guarantee}};
      report["price_of_competition"] = worst.value / opt_value;
    } else {
      auto [opt_value, opt_index] = duelbench::optimal_cost(g);
      duelbench::MinimaxResult worst = duelbench::worst_minimax_cost(g);
      report["optimal_cost"] = {{"value", opt_value}, {"strategy", opt_index}};
      report["worst_minimax_cost"] = {
          {"value", worst.value},
          {"guarantee", worst.guarantee},
          {"support", support_json(g, worst.strategy)}};
      report["price_of_competition_cost"] = worst.value / opt_value;
    }

    if (g.num_strategies() <= 24) {
      std::vector<double> payoff = duelbench::payoff_matrix(g);
      json table = json::array();
      for (int s = 0; s < g.num_strategies(); ++s) {
        json row = json::array();
        for (int t = 0; t < g.num_strategies(); ++t) {
          row.push_back(payoff[static_cast<size_t>(s) * g.num_strategies() + t]);
        }
        table.push_back(row);
      }
      report["payoff_table"] = table;
      if (!g.labels().empty()) report["payoff_labels"] = g.labels();
    }
    *out = dup_string(report.dump(2));
    return DB_OK;
  });
}

db_status db_zero_one_json(const db_instance* instance, char** out) {
  return wrap([&]() {
    if (instance == nullptr || out == nullptr) {
      set_error("null argument");
      return DB_EUSAGE;
    }
    const duelbench::DuelInstance& g = instance->loaded.game();
    if (g.mode() != duelbench::Mode::kWelfare) {
      set_error("threshold analysis is defined on welfare instances");
      return DB_EUSAGE;
    }
    json report = duelbench::report_envelope("zero-one");
    report["instance"] = duelbench::instance_info(instance->loaded);

    auto [opt_value, opt_index] = duelbench::optimal_welfare(g);
    duelbench::MinimaxResult worst = duelbench::worst_minimax_welfare(g);
    double poc = worst.value / opt_value;
    report["price_of_competition"] = poc;
    // The scan is pinned to this optimizer; a different worst-welfare
    // vertex can give different per-threshold ratios.
    report["worst_minimax_support"] = support_json(g, worst.strategy);

    json rows = json::array();
    double bound = 1.0;
    for (double v : duelbench::distinct_values(g)) {
      if (v <= 0.0) continue;
      double r = duelbench::poc_alpha_with(g, worst.strategy, opt_index, v);
      rows.push_back({{"alpha", v}, {"poc_alpha", r}});
      bound = std::min(bound, r);
    }
    report["thresholds"] = rows;
    report["zero_one_bound"] = bound;
    report["bound_consistent"] = bound <= poc + 1e-9;
    *out = dup_string(report.dump(2));
    return report["bound_consistent"].get<bool>() ? DB_OK : DB_EVERIFY;
  });
}

db_status db_alpha_k(int k, double* out) {
  return wrap([&]() {
    if (out == nullptr) {
      set_error("null argument");
      return DB_EUSAGE;
    }
    *out = duelbench::factor::alpha_k(k);
    return DB_OK;
  });
}

db_status db_alpha_curve_csv(int k_max, int threads, char** out) {
  return wrap([&]() {
    if (out == nullptr) {
      set_error("null argument");
      return DB_EUSAGE;
    }
    if (k_max < 2) {
      set_error("alpha curve needs k_max >= 2");
      return DB_EUSAGE;
    }
    std::vector<double> alpha(k_max + 1, 0.0);
    duelbench::parallel_for(
        k_max - 1, [&](int i) { alpha[i + 2] = duelbench::factor::alpha_k(i + 2); },
        threads);
    std::string csv = "k,alpha_k\n";
    char buf[64];
    for (int k = 2; k <= k_max; ++k) {
      std::snprintf(buf, sizeof(buf), "%d,%.9f\n", k, alpha[k]);
      csv += buf;
    }
    *out = dup_string(csv);
    return DB_OK;
  });
}

db_status db_certify_dual_json(int k, int* feasible, char** out) {
  return wrap([&]() {
    if (out == nullptr || feasible == nullptr) {
      set_error("null argument");
      return DB_EUSAGE;
    }
    if (k != 10) {
      set_error("the published dual table is a k = 10 object");
      return DB_EUSAGE;
    }
    duelbench::factor::PaperCertificateReport r =
        duelbench::factor::verify_paper_certificate();
    json report = duelbench::report_envelope("certify-dual");
    report["k"] = k;
    report["claimed_bound"] = duelbench::to_string(r.claimed_bound);
    report["claimed_bound_decimal"] = duelbench::to_double(r.claimed_bound);
    report["dual_objective"] = duelbench::to_string(r.dual_objective);
    report["feasible"] = r.feasible;
    report["bound_matches"] = r.bound_matches;
    report["max_violation_exact"] = duelbench::to_string(r.max_violation);
    report["max_violation"] = duelbench::to_double(r.max_violation);
    report["worst_constraint"] = r.worst_constraint;
    report["alpha_k_solver"] = duelbench::factor::alpha_k(10);
    *out = dup_string(report.dump(2));
    *feasible = r.feasible && r.bound_matches ? 1 : 0;
    if (*feasible == 0) {
      set_error("published dual table is infeasible in exact arithmetic by " +
                duelbench::to_string(r.max_violation) + " at " +
                r.worst_constraint);
      return DB_EVERIFY;
    }
    return DB_OK;
  });
}

db_status db_construct_compression_json(double epsilon, char** out) {
  return wrap([&]() {
    if (out == nullptr) {
      set_error("null argument");
      return DB_EUSAGE;
    }
    duelbench::CompressionDuel duel = duelbench::compression_duel_epsilon(epsilon);
    const duelbench::DuelInstance& g = duel.game;
    duelbench::MixedStrategy xstar =
        duelbench::MixedStrategy::point_mass(duel.xstar_index, g.num_strategies());

    double min_u = 2.0;
    for (int t = 0; t < g.num_strategies(); ++t) {
      min_u = std::min(min_u, duelbench::utility_vs_pure(g, xstar, t));
    }
    double sw_opt = duelbench::optimal_welfare(g).first;
    double sw_xstar = duelbench::social_welfare(g, xstar);

    json report = duelbench::report_envelope("construct");
    report["construction"] = "compression";
    report["epsilon"] = epsilon;
    report["strategies"] = g.num_strategies();
    report["opt_tree"] = duel.opt_tree.to_string();
    report["xstar_tree"] = duel.xstar_tree.to_string();
    report["sw_opt"] = sw_opt;
    report["sw_xstar"] = sw_xstar;
    report["min_utility_vs_pure"] = min_u;
    report["xstar_is_minimax"] = min_u >= -duelbench::Tolerances::kValue;
    report["poc_bound"] = sw_xstar / sw_opt;
    report["poc_bound_le_epsilon"] = sw_xstar / sw_opt <= epsilon + 1e-12;
    *out = dup_string(report.dump(2));
    return report["xstar_is_minimax"].get<bool>() ? DB_OK : DB_EVERIFY;
  });
}

db_status db_construct_bst_json(double beta, uint64_t samples, uint64_t seed,
                                char** out) {
  return wrap([&]() {
    if (out == nullptr) {
      set_error("null argument");
      return DB_EUSAGE;
    }
    duelbench::BstDuel duel(beta);
    duelbench::Rng rng(seed);
    uint64_t violations = 0;
    double min_u = 2.0;
    for (uint64_t i = 0; i < samples; ++i) {
      std::vector<int> depths = duel.sample_bst_depths(rng);
      double u = duel.utility_xstar_vs(depths);
      min_u = std::min(min_u, u);
      if (u < -duelbench::Tolerances::kValue) ++violations;
    }

    int max_depth = 0;
    for (int d : duel.xstar_depths()) max_depth = std::max(max_depth, d);
    bool depth_profile_ok =
        duel.xstar_depths()[0] == 2 &&
        duel.xstar_depths()[1LL << duel.k()] == 1 && max_depth == duel.k() + 2;
    double block_mass = static_cast<double>(1LL << duel.k()) *
                        duel.probability(1);
    bool mass_condition = duel.probability(0) < block_mass;

    json report = duelbench::report_envelope("construct");
    report["construction"] = "bst";
    report["beta"] = beta;
    report["k"] = duel.k();
    report["n"] = duel.n();
    report["n_at_least_24"] = duel.n() >= 24;
    report["epsilon"] = duel.epsilon();
    report["sw_opt_lower_bound"] = duel.sw_opt_lower_bound();
    report["sw_xstar"] = duel.sw_xstar();
    report["first_page_depth"] = duel.xstar_depths()[0];
    report["max_depth"] = max_depth;
    report["depth_profile_ok"] = depth_profile_ok;
    report["root_mass_condition"] = mass_condition;
    report["samples"] = samples;
    report["seed"] = seed;
    report["min_sampled_utility"] = min_u;
    report["violations"] = violations;
    report["poc_bound"] = duel.poc_bound();
    report["poc_bound_lt_beta"] = duel.poc_bound() < beta;
    *out = dup_string(report.dump(2));
    bool ok = violations == 0 && depth_profile_ok && mass_condition &&
              duel.poc_bound() < beta;
    return ok ? DB_OK : DB_EVERIFY;
  });
}

db_status db_check_structure_json(uint64_t seed, int instances, int n_max,
                                  int threads, char** out) {
  return wrap([&]() {
    if (out == nullptr) {
      set_error("null argument");
      return DB_EUSAGE;
    }
    duelbench::structure::StructureReport r =
        duelbench::structure::run_regression(seed, instances, 2, n_max, threads);
    auto tally = [](const duelbench::structure::LemmaTally& t) {
      json out{{"pass", t.pass}, {"fail", t.fail}, {"vacuous", t.vacuous}};
      if (t.pass + t.fail > 0) out["worst_slack"] = t.worst_slack;
      return out;
    };
    json report = duelbench::report_envelope("check-structure");
    report["seed"] = r.seed;
    report["instances"] = r.instances;
    report["lemmas"] = {{"swap", tally(r.swap)},
                        {"pair_order", tally(r.pair_order)},
                        {"h_bounds", tally(r.h_bounds)},
                        {"quarter", tally(r.quarter)}};
    report["interval_cover"] = {{"checks", r.interval_checks},
                                {"failures", r.interval_failures}};
    report["all_pass"] = r.all_pass;
    *out = dup_string(report.dump(2));
    return r.all_pass ? DB_OK : DB_EVERIFY;
  });
}

}  // extern "C"
