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
// Command-line front end. Everything substantive happens behind the C API
// of the shared library; this file only parses flags, moves strings around,
// and maps statuses to exit codes (0 ok, 2 usage, 3 cap refusal,
// 4 verification failure, 1 anything else).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "duelbench.h"

namespace {

using nlohmann::json;

int exit_code_of(db_status status) {
  switch (status) {
    case DB_OK: return 0;
    case DB_EUSAGE: return 2;
    case DB_EPARSE: return 2;
    case DB_ECAP: return 3;
    case DB_EVERIFY: return 4;
    default: return 1;
  }
}

int fail(db_status status) {
  std::cerr << "error: " << db_last_error() << "\n";
  return exit_code_of(status);
}

struct OutputOptions {
  std::string format = "json";
  std::string out_path;
};

void flatten(const json& node, const std::string& prefix, std::ostream& os) {
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
    }
    return;
  }
  if (node.is_array()) {
    bool scalars = true;
    for (const auto& v : node) {
      if (v.is_object() || v.is_array()) scalars = false;
    }
    if (scalars) {
      os << prefix << ",";
      for (size_t i = 0; i < node.size(); ++i) {
        os << (i ? ";" : "") << node[i].dump();
      }
      os << "\n";
    } else {
      for (size_t i = 0; i < node.size(); ++i) {
        flatten(node[i], prefix + "." + std::to_string(i), os);
      }
    }
    return;
  }
  os << prefix << "," << node.dump() << "\n";
}

int emit(const std::string& text, const OutputOptions& opt, bool already_csv) {
  std::string rendered = text;
  if (opt.format == "csv" && !already_csv) {
    json doc = json::parse(text);
    std::ostringstream os;
    os << "key,value\n";
    flatten(doc, "", os);
    rendered = os.str();
  }
  if (opt.out_path.empty() || opt.out_path == "-") {
    std::cout << rendered;
    if (!rendered.empty() && rendered.back() != '\n') std::cout << "\n";
    return 0;
  }
  std::ofstream file(opt.out_path);
  if (!file) {
    std::cerr << "error: cannot write " << opt.out_path << "\n";
    return 1;
  }
  file << rendered;
  return 0;
}

struct InstanceArgs {
  std::string input;
  std::string builtin;
  int cap_perms = 0;
};

void add_instance_flags(CLI::App* cmd, InstanceArgs& args) {
  auto* input = cmd->add_option("--input", args.input,
                                "Instance JSON file (\"-\" for stdin)");
  auto* builtin = cmd->add_option("--builtin", args.builtin,
                                  "Built-in instance name");
  cmd->add_option("--cap-perms", args.cap_perms,
                  "Ranking enumeration cap (default 8)");
  input->excludes(builtin);
}

db_status open_instance(const InstanceArgs& args, db_instance** out) {
  if (!args.builtin.empty()) return db_instance_builtin(args.builtin.c_str(), out);
  if (args.input.empty()) {
    std::cerr << "error: provide --input or --builtin\n";
    return DB_EUSAGE;
  }
  std::string text;
  if (args.input == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream file(args.input);
    if (!file) {
      std::cerr << "error: cannot read " << args.input << "\n";
      return DB_EUSAGE;
    }
    std::ostringstream ss;
    ss << file.rdbuf();
    text = ss.str();
  }
  return db_instance_from_json(text.c_str(), args.cap_perms, out);
}

struct StringGuard {
  char* value = nullptr;
  ~StringGuard() { db_string_free(value); }
};

struct InstanceGuard {
  db_instance* value = nullptr;
  ~InstanceGuard() { db_instance_free(value); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"duelbench: minimax quality analysis for dueling games"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(db_version()));

  OutputOptions output;
  app.add_option("--format", output.format, "Report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", output.out_path, "Write the report to a file");

  InstanceArgs solve_args;
  auto* solve = app.add_subcommand(
      "solve", "Game value, minimax welfare range, and competition ratio");
  add_instance_flags(solve, solve_args);

  InstanceArgs poc_args;
  auto* poc = app.add_subcommand("poc", "Just the competition ratio");
  add_instance_flags(poc, poc_args);

  int k_max = 10;
  int threads = 0;
  auto* curve = app.add_subcommand("alpha-curve",
                                   "CSV of the subset LP optimum per k");
  curve->add_option("--k-max", k_max, "Largest subset size (>= 2)")->required();
  curve->add_option("--threads", threads, "Worker threads (0 = budget)");

  int cert_k = 10;
  auto* certify = app.add_subcommand(
      "certify-dual", "Re-check the published dual table in exact arithmetic");
  certify->add_option("--k", cert_k, "Subset size of the table (only 10)");

  double epsilon = 0.0, beta = 0.0;
  std::uint64_t samples = 100000, seed = 1;
  auto* construct = app.add_subcommand(
      "construct", "Build and verify the compression / binary-search games");
  auto* eps_opt = construct->add_option("--epsilon", epsilon,
                                        "Compression construction parameter");
  auto* beta_opt =
      construct->add_option("--beta", beta, "Binary-search construction parameter");
  construct->add_option("--samples", samples, "Sampled opponents for the BST check");
  construct->add_option("--seed", seed, "Sampling seed");
  eps_opt->excludes(beta_opt);

  std::uint64_t cs_seed = 1;
  int cs_instances = 200;
  int cs_nmax = 6;
  int cs_threads = 0;
  auto* check = app.add_subcommand(
      "check-structure", "Run the minimax-structure lemma regression");
  check->add_option("--seed", cs_seed, "Instance generator seed");
  check->add_option("--instances", cs_instances, "Number of random instances");
  check->add_option("--n-max", cs_nmax, "Largest page count (<= 8)");
  check->add_option("--threads", cs_threads, "Worker threads (0 = budget)");

  InstanceArgs zo_args;
  auto* zero_one = app.add_subcommand(
      "zero-one", "Threshold scan and the 0-1 lower bound on the ratio");
  add_instance_flags(zero_one, zo_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto run_instance_command = [&](const InstanceArgs& args, auto&& fn) -> int {
    InstanceGuard instance;
    db_status status = open_instance(args, &instance.value);
    if (status != DB_OK) {
      if (instance.value == nullptr && args.input.empty() && args.builtin.empty()) {
        return 2;
      }
      return fail(status);
    }
    return fn(instance.value);
  };

  if (solve->parsed()) {
    return run_instance_command(solve_args, [&](db_instance* g) -> int {
      StringGuard text;
      db_status status = db_solve_json(g, &text.value);
      if (status != DB_OK) return fail(status);
      return emit(text.value, output, false);
    });
  }

  if (poc->parsed()) {
    return run_instance_command(poc_args, [&](db_instance* g) -> int {
      StringGuard text;
      db_status status = db_solve_json(g, &text.value);
      if (status != DB_OK) return fail(status);
      json full = json::parse(std::string(text.value));
      json brief;
      brief["command"] = "poc";
      brief["version"] = full["version"];
      for (const char* key :
           {"price_of_competition", "price_of_competition_cost", "game_value"}) {
        if (full.contains(key)) brief[key] = full[key];
      }
      if (full.contains("optimal")) brief["optimal"] = full["optimal"]["value"];
      if (full.contains("optimal_cost")) brief["optimal_cost"] = full["optimal_cost"]["value"];
      if (full.contains("worst_minimax")) brief["worst_minimax"] = full["worst_minimax"]["value"];
      if (full.contains("worst_minimax_cost")) brief["worst_minimax_cost"] = full["worst_minimax_cost"]["value"];
      return emit(brief.dump(2), output, false);
    });
  }

  if (curve->parsed()) {
    if (k_max < 2) {
      std::cerr << "error: --k-max must be at least 2\n";
      return 2;
    }
    StringGuard text;
    db_status status = db_alpha_curve_csv(k_max, threads, &text.value);
    if (status != DB_OK) return fail(status);
    return emit(text.value, output, true);
  }

  if (certify->parsed()) {
    StringGuard text;
    int feasible = 0;
    db_status status = db_certify_dual_json(cert_k, &feasible, &text.value);
    if (text.value != nullptr) {
      int emit_rc = emit(text.value, output, false);
      if (emit_rc != 0) return emit_rc;
    }
    if (status != DB_OK) {
      std::cerr << "error: " << db_last_error() << "\n";
      return exit_code_of(status);
    }
    return 0;
  }

  if (construct->parsed()) {
    StringGuard text;
    db_status status;
    if (*eps_opt) {
      status = db_construct_compression_json(epsilon, &text.value);
    } else if (*beta_opt) {
      status = db_construct_bst_json(beta, samples, seed, &text.value);
    } else {
      std::cerr << "error: provide --epsilon or --beta\n";
      return 2;
    }
    if (text.value != nullptr) {
      int emit_rc = emit(text.value, output, false);
      if (emit_rc != 0) return emit_rc;
    }
    if (status != DB_OK) {
      std::cerr << "error: " << db_last_error() << "\n";
      return exit_code_of(status);
    }
    return 0;
  }

  if (check->parsed()) {
    StringGuard text;
    db_status status = db_check_structure_json(cs_seed, cs_instances, cs_nmax,
                                               cs_threads, &text.value);
    if (text.value != nullptr) {
      int emit_rc = emit(text.value, output, false);
      if (emit_rc != 0) return emit_rc;
    }
    if (status != DB_OK) {
      std::cerr << "error: " << db_last_error() << "\n";
      return exit_code_of(status);
    }
    return 0;
  }

  if (zero_one->parsed()) {
    return run_instance_command(zo_args, [&](db_instance* g) -> int {
      StringGuard text;
      db_status status = db_zero_one_json(g, &text.value);
      if (text.value != nullptr) {
        int emit_rc = emit(text.value, output, false);
        if (emit_rc != 0) return emit_rc;
      }
      if (status != DB_OK) {
        std::cerr << "error: " << db_last_error() << "\n";
        return exit_code_of(status);
      }
      return 0;
    });
  }

  return 2;
}
