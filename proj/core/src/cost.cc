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

#include "commonlines/cost.h"

#include <string>

#include "commonlines/characterization.h"
#include "commonlines/error.h"

namespace commonlines {

double SocialCost(const Network& network, std::span<const double> flows) {
  if (flows.size() != network.size()) {
    throw Error(ErrorCode::kDomain, "flow vector size mismatch");
  }
  double in_vehicle = 0.0;
  for (std::size_t i = 0; i < network.size(); ++i) {
    in_vehicle += network.line(i).travel_time * flows[i];
  }
  return in_vehicle + Phi(network, flows);
}

double StrategySocialCost(const Network& network,
                          const StrategyFlowVector& strategy_flows,
                          std::span<const double> flows) {
  double cost = 0.0;
  for (const auto& [strategy, flow] : strategy_flows.flows()) {
    if (flow > 0.0) cost += flow * StrategyTime(network, strategy, flows);
  }
  return cost;
}

double WardropSocialCost(const Network& network, double demand) {
  if (demand == 0.0) return 0.0;
  const Assignment ue = WardropEquilibrium(network, demand);
  return MinimalStrategyTime(network, ue.flows) * demand;
}

double OptimalSocialCost(const Network& network, double demand) {
  if (demand == 0.0) return 0.0;
  return SocialCost(network, SocialOptimum(network, demand).flows);
}

double PriceOfAnarchy(const Network& network, double demand) {
  return EvaluateCosts(network, demand).price_of_anarchy;
}

CostReport EvaluateCosts(const Network& network, double demand) {
  if (!(demand > 0.0 && demand < network.total_saturation())) {
    throw Error(ErrorCode::kInfeasibleDemand,
                "infeasible demand " + std::to_string(demand));
  }
  CostReport report;
  report.demand = demand;
  report.equilibrium = WardropEquilibrium(network, demand);
  report.optimum = SocialOptimum(network, demand);
  report.wardrop_cost =
      MinimalStrategyTime(network, report.equilibrium.flows) * demand;
  report.optimal_cost = SocialCost(network, report.optimum.flows);
  report.price_of_anarchy = report.wardrop_cost / report.optimal_cost;
  return report;
}

}  // namespace commonlines
