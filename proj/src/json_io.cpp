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

#include "duelbench/json_io.hpp"

#include <algorithm>
#include <sstream>

namespace duelbench {

using nlohmann::json;

namespace {

// nlohmann reports byte offsets; translate to line:column for diagnostics.
std::string position_of(const std::string& text, size_t byte) {
  size_t line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  std::ostringstream os;
  os << "line " << line << ", column " << col;
  return os.str();
}

std::vector<double> require_probabilities(const json& doc) {
  if (!doc.contains("p") || !doc["p"].is_array() || doc["p"].empty()) {
    throw SchemaError("instance field \"p\" must be a nonempty array");
  }
  std::vector<double> p;
  for (const auto& v : doc["p"]) {
    if (!v.is_number()) throw SchemaError("\"p\" entries must be numbers");
    p.push_back(v.get<double>());
  }
  return p;
}

Mode parse_mode(const json& doc) {
  std::string mode = doc.value("mode", "welfare");
  if (mode == "welfare") return Mode::kWelfare;
  if (mode == "cost") return Mode::kCost;
  throw SchemaError("\"mode\" must be \"welfare\" or \"cost\"");
}

RankingValuation parse_valuation(const json& doc, int n) {
  if (!doc.contains("valuation")) {
    return RankingValuation::linear(1.0, 0.0);
  }
  const json& v = doc["valuation"];
  std::string kind = v.value("kind", "");
  if (kind == "linear") {
    return RankingValuation::linear(v.value("c", 1.0), v.value("d", 0.0));
  }
  if (kind == "explicit") {
    if (!v.contains("values") || !v["values"].is_array()) {
      throw SchemaError("explicit valuation needs a \"values\" array");
    }
    std::vector<double> values = v["values"].get<std::vector<double>>();
    if (static_cast<int>(values.size()) != n) {
      throw SchemaError("explicit valuation length must equal the number of requests");
    }
    return RankingValuation::explicit_values(std::move(values));
  }
  throw SchemaError("valuation \"kind\" must be \"linear\" or \"explicit\"");
}

// Tree valuations are by depth: values[d-1] for depth d, 0 past the end.
std::vector<double> depth_values(const json& doc, int n) {
  if (!doc.contains("valuation")) {
    throw SchemaError("tree instances need a \"valuation\"");
  }
  const json& v = doc["valuation"];
  std::string kind = v.value("kind", "");
  std::vector<double> by_depth;
  if (kind == "explicit") {
    by_depth = v["values"].get<std::vector<double>>();
  } else if (kind == "linear") {
    double c = v.value("c", 1.0), d = v.value("d", 0.0);
    for (int depth = 1; depth <= n; ++depth) {
      by_depth.push_back(std::max(0.0, c * (n - depth) + d));
    }
  } else {
    throw SchemaError("valuation \"kind\" must be \"linear\" or \"explicit\"");
  }
  for (double x : by_depth) {
    if (x < 0.0) throw SchemaError("depth valuations must be nonnegative");
  }
  return by_depth;
}

double value_at_depth(const std::vector<double>& by_depth, int depth) {
  if (depth < 1 || depth > static_cast<int>(by_depth.size())) return 0.0;
  return by_depth[depth - 1];
}

}  // namespace

LoadedInstance load_instance_json(const std::string& text, int ranking_cap) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("JSON parse error at " + position_of(text, e.byte) +
                      ": " + e.what());
  }
  if (!doc.is_object()) throw SchemaError("instance must be a JSON object");
  std::string type = doc.value("type", "");

  LoadedInstance out;
  out.type = type;
  if (type == "ranking") {
    std::vector<double> p = require_probabilities(doc);
    RankingSpec spec(p, parse_valuation(doc, static_cast<int>(p.size())),
                     parse_mode(doc));
    out.ranking = ranking_duel(spec, ranking_cap);
    return out;
  }
  if (type == "compression" || type == "bst") {
    std::vector<double> p = require_probabilities(doc);
    const int n = static_cast<int>(p.size());
    std::vector<double> by_depth = depth_values(doc, n);
    std::vector<LeafTree> catalog =
        type == "bst" ? enumerate_bsts(n) : enumerate_leaf_trees(n);
    std::vector<double> values;
    std::vector<std::string> labels;
    values.reserve(catalog.size() * n);
    for (const LeafTree& t : catalog) {
      std::vector<int> d = t.depths(n);
      for (int w = 0; w < n; ++w) values.push_back(value_at_depth(by_depth, d[w]));
      labels.push_back(t.to_string());
    }
    out.plain.emplace(std::move(p), static_cast<int>(catalog.size()),
                      std::move(values), parse_mode(doc), std::move(labels));
    return out;
  }
  if (type == "explicit") {
    std::vector<double> p = require_probabilities(doc);
    const int n = static_cast<int>(p.size());
    if (!doc.contains("V") || !doc["V"].is_array() || doc["V"].empty()) {
      throw SchemaError("explicit instances need a dense \"V\" table");
    }
    std::vector<double> values;
    for (const auto& row : doc["V"]) {
      if (!row.is_array() || static_cast<int>(row.size()) != n) {
        throw SchemaError("every \"V\" row must have one value per request");
      }
      for (const auto& v : row) values.push_back(v.get<double>());
    }
    out.plain.emplace(std::move(p), static_cast<int>(doc["V"].size()),
                      std::move(values), parse_mode(doc));
    return out;
  }
  throw SchemaError(
      "\"type\" must be one of ranking, compression, bst, explicit");
}

LoadedInstance builtin_instance(const std::string& name) {
  LoadedInstance out;
  if (name == "appendix-example") {
    out.type = "ranking";
    out.ranking = appendix_example().duel;
    return out;
  }
  if (name == "footnote-example") {
    out.type = "ranking";
    out.ranking = footnote_example();
    return out;
  }
  throw SchemaError("unknown builtin \"" + name +
                    "\"; available: appendix-example, footnote-example");
}

json instance_info(const LoadedInstance& instance) {
  const DuelInstance& g = instance.game();
  json info;
  info["type"] = instance.type;
  info["requests"] = g.num_requests();
  info["strategies"] = g.num_strategies();
  info["mode"] = g.mode() == Mode::kWelfare ? "welfare" : "cost";
  info["p"] = g.probabilities();
  return info;
}

json tolerances_json() {
  return json{{"feas", Tolerances::kFeas},
              {"gap", Tolerances::kGap},
              {"support", Tolerances::kSupport},
              {"value", Tolerances::kValue}};
}

json report_envelope(const std::string& command) {
  json report;
  report["command"] = command;
  report["version"] = version_string();
  report["tolerances"] = tolerances_json();
  return report;
}

}  // namespace duelbench
