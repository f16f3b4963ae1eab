// Copyright 2026 The commonlines Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/scenario.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "commonlines/error.h"

namespace commonlines::cli {
namespace {

using nlohmann::json;

void RejectUnknown(const json& object, const std::set<std::string>& allowed,
                   const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown field '" + key + "' in " + where);
    }
  }
}

double Number(const json& object, const char* key, const std::string& where) {
  if (!object.contains(key)) {
    throw ConfigError(std::string("missing field '") + key + "' in " + where);
  }
  const json& value = object.at(key);
  if (!value.is_number()) {
    throw ConfigError(std::string("field '") + key + "' in " + where +
                      " must be a number");
  }
  const double out = value.get<double>();
  if (!std::isfinite(out)) {
    throw ConfigError(std::string("field '") + key + "' must be finite");
  }
  return out;
}

Line ParseLine(const json& object, std::size_t index) {
  const std::string where = "lines[" + std::to_string(index) + "]";
  if (!object.is_object()) throw ConfigError(where + " must be an object");
  if (!object.contains("family") || !object.at("family").is_string()) {
    throw ConfigError("missing string field 'family' in " + where);
  }
  const std::string family = object.at("family").get<std::string>();
  Line line;
  line.travel_time = Number(object, "t", where);
  if (family == "queue") {
    RejectUnknown(object, {"t", "family", "mu", "K"}, where);
    const double k = Number(object, "K", where);
    if (k < 1.0 || k != std::floor(k) || k > 1e6) {
      throw ConfigError("queue capacity K in " + where +
                        " must be a positive integer");
    }
    line.frequency = QueueCapacity{Number(object, "mu", where),
                                   static_cast<int>(k)};
  } else if (family == "power") {
    RejectUnknown(object, {"t", "family", "mu", "K", "beta", "epsilon"},
                  where);
    PowerSaturation p;
    p.mu = Number(object, "mu", where);
    p.capacity = Number(object, "K", where);
    p.beta = Number(object, "beta", where);
    if (object.contains("epsilon")) p.epsilon = Number(object, "epsilon", where);
    line.frequency = p;
  } else {
    throw ConfigError("unknown family '" + family + "' in " + where +
                      " (expected \"queue\" or \"power\")");
  }
  return line;
}

}  // namespace

ScenarioConfig ParseScenario(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("scenario must be a JSON object");
  RejectUnknown(root, {"lines", "sweep", "demand"}, "scenario");
  if (!root.contains("lines") || !root.at("lines").is_array() ||
      root.at("lines").empty()) {
    throw ConfigError("scenario needs a nonempty 'lines' array");
  }
  ScenarioConfig config;
  std::size_t index = 0;
  for (const json& entry : root.at("lines")) {
    config.lines.push_back(ParseLine(entry, index++));
  }
  if (root.contains("sweep")) {
    const json& sweep = root.at("sweep");
    if (!sweep.is_object()) throw ConfigError("'sweep' must be an object");
    RejectUnknown(sweep, {"from", "to", "steps"}, "sweep");
    SweepRange range;
    range.from = Number(sweep, "from", "sweep");
    range.to = Number(sweep, "to", "sweep");
    const double steps = Number(sweep, "steps", "sweep");
    if (steps != std::floor(steps) || steps < 2 || steps > 1e7) {
      throw ConfigError("sweep steps must be an integer >= 2");
    }
    range.steps = static_cast<int>(steps);
    config.sweep = range;
  }
  if (root.contains("demand")) {
    config.demand = Number(root, "demand", "scenario");
  }
  // Surface model errors (and sweep bounds) now rather than at solve time.
  const Network network = BuildNetwork(config);
  if (config.sweep) {
    try {
      ValidateSweep(network, *config.sweep);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  return config;
}

ScenarioConfig LoadScenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseScenario(text.str());
}

Network BuildNetwork(const ScenarioConfig& config) {
  try {
    return Network(config.lines);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

void ValidateSweep(const Network& network, const SweepRange& range) {
  if (range.steps < 2) throw ConfigError("sweep steps must be >= 2");
  if (!(range.from <= range.to)) {
    throw ConfigError("sweep needs from <= to");
  }
  if (!(range.from > 0.0 && range.to < network.total_saturation())) {
    throw Error(ErrorCode::kInfeasibleDemand,
                "sweep range must lie inside (0, " +
                    std::to_string(network.total_saturation()) + ")");
  }
}

ScenarioConfig QueueExample() {
  ScenarioConfig config;
  config.lines = {{0.25, QueueCapacity{16.0, 20}},
                  {0.5, QueueCapacity{10.0, 20}}};
  return config;
}

ScenarioConfig PowerExample() {
  ScenarioConfig config;
  config.lines = {{0.25, PowerSaturation{16.0, 20.0, 0.2, 1.0 / 999.0}},
                  {0.5, PowerSaturation{10.0, 20.0, 0.2, 1.0 / 999.0}}};
  return config;
}

}  // namespace commonlines::cli
