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

#ifndef COMMONLINES_CLI_SCENARIO_H_
#define COMMONLINES_CLI_SCENARIO_H_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "commonlines/model.h"

namespace commonlines::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepRange {
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
};

// JSON scenario:
//   {"lines": [{"t": 0.25, "family": "queue", "mu": 16, "K": 20}, ...],
//    "sweep": {"from": 1, "to": 160, "steps": 160},
//    "demand": 100}
// Power lines take "beta" and an optional "epsilon" (default 1/999).
// Unknown fields are rejected.
struct ScenarioConfig {
  std::vector<Line> lines;
  std::optional<SweepRange> sweep;
  std::optional<double> demand;
};

// Throws ConfigError on malformed or out-of-range input.
ScenarioConfig ParseScenario(std::string_view json_text);

// Throws IoError if the file cannot be read, ConfigError otherwise.
ScenarioConfig LoadScenario(const std::filesystem::path& path);

// Throws ConfigError if the lines do not form a valid network.
Network BuildNetwork(const ScenarioConfig& config);

// Checks 0 < from <= to < total saturation and steps >= 2. Throws
// ConfigError for a malformed range and Error(kInfeasibleDemand) when the
// range leaves the feasible demands.
void ValidateSweep(const Network& network, const SweepRange& range);

// Two lines, t = (1/4, 1/2) h, mu = (16, 10) buses/h, K = 20.
ScenarioConfig QueueExample();
// Same lines with the power frequency family, beta = 0.2.
ScenarioConfig PowerExample();

}  // namespace commonlines::cli

#endif  // COMMONLINES_CLI_SCENARIO_H_
