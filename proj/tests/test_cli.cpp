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
// Drives the installed binary end to end: exit codes, output files, and
// the CSV/JSON renderings.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string out_path = std::string(std::tmpnam(nullptr)) + ".out";
  std::string cmd = std::string(DUELBENCH_CLI_PATH) + " " + args + " > " +
                    out_path + " 2>&1";
  int rc = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(rc);
  std::ifstream file(out_path);
  std::ostringstream ss;
  ss << file.rdbuf();
  result.output = ss.str();
  std::remove(out_path.c_str());
  return result;
}

std::string write_temp(const std::string& contents) {
  std::string path = std::string(std::tmpnam(nullptr)) + ".json";
  std::ofstream file(path);
  file << contents;
  return path;
}

}  // namespace

TEST_CASE("solve on builtins") {
  RunResult r = run_cli("solve --builtin appendix-example");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("price_of_competition") != std::string::npos);
  CHECK(r.output.find("0.833") != std::string::npos);

  RunResult footnote = run_cli("solve --builtin footnote-example");
  CHECK(footnote.exit_code == 0);
  CHECK(footnote.output.find("-0.3") != std::string::npos);
}

TEST_CASE("solve reads instance files and honors --format csv") {
  std::string path = write_temp(R"({
    "type": "ranking",
    "p": [0.35, 0.33, 0.32],
    "valuation": {"kind": "linear", "c": 1, "d": 0}
  })");
  RunResult json_run = run_cli("solve --input " + path);
  CHECK(json_run.exit_code == 0);
  RunResult csv_run = run_cli("--format csv solve --input " + path);
  CHECK(csv_run.exit_code == 0);
  CHECK(csv_run.output.rfind("key,value", 0) == 0);
  CHECK(csv_run.output.find("game_value,") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("malformed instances exit with a diagnostic") {
  std::string path = write_temp("{broken");
  RunResult r = run_cli("solve --input " + path);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("error") != std::string::npos);
  std::remove(path.c_str());

  RunResult missing = run_cli("solve");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("caps exit with code 3") {
  std::ostringstream big;
  big << R"({"type": "ranking", "p": [)";
  for (int i = 0; i < 9; ++i) big << (i ? "," : "") << "0.111";
  big << "]}";
  std::string path = write_temp(big.str());
  RunResult r = run_cli("solve --input " + path);
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("cap") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("alpha-curve emits CSV with the anchors") {
  RunResult r = run_cli("alpha-curve --k-max 10 --threads 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("k,alpha_k", 0) == 0);
  CHECK(r.output.find("10,0.612274") != std::string::npos);

  RunResult usage = run_cli("alpha-curve --k-max 1");
  CHECK(usage.exit_code == 2);
}

TEST_CASE("certify-dual reports the exact verdict and exits 4") {
  RunResult r = run_cli("certify-dual");
  CHECK(r.exit_code == 4);
  CHECK(r.output.find("157/302000000") != std::string::npos);
  CHECK(r.output.find("0.612") != std::string::npos);
}

TEST_CASE("construct verifies both constructions") {
  RunResult comp = run_cli("construct --epsilon 0.1");
  CHECK(comp.exit_code == 0);
  CHECK(comp.output.find("\"xstar_is_minimax\": true") != std::string::npos);

  RunResult bst = run_cli("construct --beta 0.6 --samples 500 --seed 5");
  CHECK(bst.exit_code == 0);
  CHECK(bst.output.find("\"n\": 24") != std::string::npos);

  RunResult neither = run_cli("construct");
  CHECK(neither.exit_code == 2);
}

TEST_CASE("poc prints the focused report") {
  RunResult r = run_cli("poc --builtin appendix-example");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("price_of_competition") != std::string::npos);
  CHECK(r.output.find("worst_minimax") != std::string::npos);
}

TEST_CASE("version flag") {
  RunResult r = run_cli("--version");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("0.") != std::string::npos);
}

TEST_CASE("check-structure and zero-one run clean") {
  RunResult structure = run_cli("check-structure --seed 9 --instances 6 --n-max 4");
  CHECK(structure.exit_code == 0);
  CHECK(structure.output.find("\"all_pass\": true") != std::string::npos);

  RunResult zo = run_cli("zero-one --builtin appendix-example");
  CHECK(zo.exit_code == 0);
  CHECK(zo.output.find("zero_one_bound") != std::string::npos);
}

TEST_CASE("reports can be written to a file") {
  std::string path = std::string(std::tmpnam(nullptr)) + ".json";
  RunResult r = run_cli("--out " + path + " solve --builtin appendix-example");
  CHECK(r.exit_code == 0);
  std::ifstream file(path);
  REQUIRE(file.good());
  std::ostringstream ss;
  ss << file.rdbuf();
  CHECK(ss.str().find("price_of_competition") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("unknown subcommands are usage errors") {
  RunResult r = run_cli("flub");
  CHECK(r.exit_code == 2);
}
