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

#ifndef COMMONLINES_COST_H_
#define COMMONLINES_COST_H_

#include <span>

#include "commonlines/model.h"
#include "commonlines/strategy.h"

namespace commonlines {

// Arc-form social cost sum_i t_i v_i + max_i v_i / f_i(v_i), in
// passenger-hours.
double SocialCost(const Network& network, std::span<const double> flows);

// Strategy-form social cost sum_s h_s T_s(v) at the given line flows.
double StrategySocialCost(const Network& network,
                          const StrategyFlowVector& strategy_flows,
                          std::span<const double> flows);

// Social cost of the Wardrop equilibrium: every used strategy has the
// minimal time, so the cost is that time times the demand. Zero demand costs
// nothing.
double WardropSocialCost(const Network& network, double demand);

// Arc-form social cost of the social-optimum flows.
double OptimalSocialCost(const Network& network, double demand);

// Ratio of equilibrium to optimal social cost. kInfeasibleDemand unless
// 0 < demand < total saturation.
double PriceOfAnarchy(const Network& network, double demand);

struct CostReport {
  double demand = 0.0;
  double wardrop_cost = 0.0;
  double optimal_cost = 0.0;
  double price_of_anarchy = 1.0;
  Assignment equilibrium;
  Assignment optimum;
};

// Solves both assignments once and derives every cost from them.
CostReport EvaluateCosts(const Network& network, double demand);

}  // namespace commonlines

#endif  // COMMONLINES_COST_H_
