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

#include "cli/sweep.h"

#include <fmt/format.h>

#include "commonlines/cost.h"

namespace commonlines::cli {

std::vector<double> SweepDemands(const SweepRange& range) {
  std::vector<double> out(static_cast<std::size_t>(range.steps));
  const double width = range.to - range.from;
  for (int j = 0; j < range.steps; ++j) {
    out[j] = j + 1 == range.steps
                 ? range.to
                 : range.from + width * j / (range.steps - 1);
  }
  return out;
}

std::vector<SweepRow> RunSweep(const Network& network,
                               const SweepRange& range) {
  ValidateSweep(network, range);
  std::vector<SweepRow> rows;
  for (double demand : SweepDemands(range)) {
    const CostReport report = EvaluateCosts(network, demand);
    SweepRow row;
    row.demand = demand;
    row.equilibrium_flows = network.ToInputOrder(report.equilibrium.flows);
    row.optimum_flows = network.ToInputOrder(report.optimum.flows);
    row.wardrop_cost = report.wardrop_cost;
    row.optimal_cost = report.optimal_cost;
    row.price_of_anarchy = report.price_of_anarchy;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string FormatNumber(double value) { return fmt::format("{}", value); }

void WriteCsv(std::ostream& out, std::span<const SweepRow> rows,
              std::size_t line_count) {
  out << "x";
  for (std::size_t i = 1; i <= line_count; ++i) out << ",v_ue_" << i;
  for (std::size_t i = 1; i <= line_count; ++i) out << ",v_so_" << i;
  out << ",wsc,osc,poa\n";
  for (const SweepRow& row : rows) {
    out << FormatNumber(row.demand);
    for (double v : row.equilibrium_flows) out << ',' << FormatNumber(v);
    for (double v : row.optimum_flows) out << ',' << FormatNumber(v);
    out << ',' << FormatNumber(row.wardrop_cost) << ','
        << FormatNumber(row.optimal_cost) << ','
        << FormatNumber(row.price_of_anarchy) << '\n';
  }
}

}  // namespace commonlines::cli
