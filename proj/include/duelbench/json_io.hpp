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

#ifndef DUELBENCH_JSON_IO_HPP_
#define DUELBENCH_JSON_IO_HPP_

#include <optional>
#include <string>

#include <json.hpp>

#include "duelbench/instances.hpp"

namespace duelbench {

/// An instance parsed from the JSON schema:
///   {"type": "ranking"|"compression"|"bst"|"explicit",
///    "p": [...],
///    "valuation": {"kind":"linear","c":..,"d":..} |
///                 {"kind":"explicit","values":[...]},
///    "mode": "welfare"|"cost",
///    "V": [[...], ...]   (explicit type only)}
/// Ranking valuations are per rank; tree valuations are per depth (root
/// depth 1, zero beyond the listed values).
struct LoadedInstance {
  std::string type;
  std::optional<RankingDuel> ranking;  // engaged for type == "ranking"
  std::optional<DuelInstance> plain;   // engaged otherwise

  const DuelInstance& game() const { return ranking ? ranking->game : *plain; }
};

/// Parses an instance; SchemaError messages carry line and column.
LoadedInstance load_instance_json(const std::string& text,
                                  int ranking_cap = kDefaultRankingCap);

/// Built-in instances: "appendix-example" and "footnote-example".
LoadedInstance builtin_instance(const std::string& name);

nlohmann::json instance_info(const LoadedInstance& instance);
nlohmann::json tolerances_json();
/// Stamps version and tolerances onto a report.
nlohmann::json report_envelope(const std::string& command);

}  // namespace duelbench

#endif  // DUELBENCH_JSON_IO_HPP_
