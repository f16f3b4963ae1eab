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

#include "cli/reproduce.h"

#include <cmath>

#include <fmt/format.h>

#include "cli/scenario.h"
#include "commonlines/characterization.h"
#include "commonlines/cost.h"

namespace commonlines::cli {
namespace {

Check MakeCheck(std::string name, double value, double expected,
                double tolerance) {
  const bool ok = std::abs(value - expected) <= tolerance;
  return {std::move(name), value, expected, tolerance, ok};
}

void AddThresholds(ReproductionReport& report, const Network& network,
                   const double (&expected)[4]) {
  const ThresholdReport t = Thresholds(network);
  report.checks.push_back(MakeCheck("l_so", t.lower_optimum, expected[0], 0.5));
  report.checks.push_back(MakeCheck("u_so", t.upper_optimum, expected[1], 0.5));
  report.checks.push_back(
      MakeCheck("l_w", t.lower_equilibrium, expected[2], 0.5));
  report.checks.push_back(
      MakeCheck("u_w", t.upper_equilibrium, expected[3], 0.5));
  if (t.alpha_optimum) report.notes.emplace_back("alpha_so", *t.alpha_optimum);
  if (t.alpha_equilibrium) {
    report.notes.emplace_back("alpha_w", *t.alpha_equilibrium);
  }
}

ReproductionReport QueueReport() {
  ReproductionReport report;
  report.title = "queue capacity, t = (0.25, 0.5), mu = (16, 10), K = 20";
  const Network network = BuildNetwork(QueueExample());
  AddThresholds(report, network, {202.77, 329.51, 276.09, 448.65});
  return report;
}

ReproductionReport PowerReport() {
  ReproductionReport report;
  report.title =
      "power saturation, t = (0.25, 0.5), mu = (16, 10), K = 20, "
      "beta = 0.2, x = 100";
  const Network network = BuildNetwork(PowerExample());
  const CostReport c = EvaluateCosts(network, 100.0);
  const std::vector<double> ue = network.ToInputOrder(c.equilibrium.flows);
  const std::vector<double> so = network.ToInputOrder(c.optimum.flows);
  report.checks.push_back(MakeCheck("v_ue_1", ue[0], 75.94, 0.05));
  report.checks.push_back(MakeCheck("v_ue_2", ue[1], 24.06, 0.05));
  report.checks.push_back(MakeCheck("v_so_1", so[0], 61.54, 0.05));
  report.checks.push_back(MakeCheck("v_so_2", so[1], 38.46, 0.05));
  report.checks.push_back(MakeCheck("wsc", c.wardrop_cost, 50.0, 0.05));
  report.checks.push_back(MakeCheck("osc", c.optimal_cost, 48.309, 0.05));
  report.checks.push_back(MakeCheck("poa", c.price_of_anarchy, 1.035, 0.005));
  AddThresholds(report, network, {38.59, 62.72, 75.94, 123.4});
  return report;
}

}  // namespace

bool ReproductionReport::passed() const {
  for (const Check& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::optional<ReproductionReport> Reproduce(std::string_view which) {
  if (which == "a") return QueueReport();
  if (which == "b") return PowerReport();
  return std::nullopt;
}

void PrintReport(std::ostream& out, const ReproductionReport& report) {
  out << report.title << '\n';
  for (const Check& c : report.checks) {
    out << fmt::format("  {:<8} {:>12.6g}  expected {:>10.6g} +- {:<6g} {}\n",
                       c.name, c.value, c.expected, c.tolerance,
                       c.passed ? "PASS" : "FAIL");
  }
  for (const auto& [name, value] : report.notes) {
    out << fmt::format("  {:<8} {:>12.6g}\n", name, value);
  }
  out << (report.passed() ? "all checks passed\n" : "reproduction FAILED\n");
}

}  // namespace commonlines::cli
