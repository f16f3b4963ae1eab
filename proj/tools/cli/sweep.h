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

#ifndef COMMONLINES_CLI_SWEEP_H_
#define COMMONLINES_CLI_SWEEP_H_

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cli/scenario.h"
#include "commonlines/model.h"

namespace commonlines::cli {

// One demand level of a sweep. Per-line flows are in scenario input order.
struct SweepRow {
  double demand = 0.0;
  std::vector<double> equilibrium_flows;
  std::vector<double> optimum_flows;
  double wardrop_cost = 0.0;
  double optimal_cost = 0.0;
  double price_of_anarchy = 1.0;
};

// Demands from, from + d, ..., to with d = (to - from) / (steps - 1).
std::vector<double> SweepDemands(const SweepRange& range);

std::vector<SweepRow> RunSweep(const Network& network,
                               const SweepRange& range);

// Shortest decimal string that parses back to the same double.
std::string FormatNumber(double value);

// Header x,v_ue_1..n,v_so_1..n,wsc,osc,poa then one row per demand.
void WriteCsv(std::ostream& out, std::span<const SweepRow> rows,
              std::size_t line_count);

}  // namespace commonlines::cli

#endif  // COMMONLINES_CLI_SWEEP_H_
