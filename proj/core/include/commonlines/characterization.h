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

#ifndef COMMONLINES_CHARACTERIZATION_H_
#define COMMONLINES_CHARACTERIZATION_H_

#include <cstddef>
#include <optional>
#include <span>

#include "commonlines/model.h"

namespace commonlines {

// Travel times closer than this (hours) to a threshold time count as tied.
inline constexpr double kTimeTolerance = 1e-9;

// Line indices below are positions in the network's storage order, i.e.
// lines sorted by nondecreasing travel time, starting at 0.

// psi_alpha(lambda) = sum_i (lambda - t_i)_+ w_i'(alpha).
double Psi(const Network& network, double alpha, double lambda);

// The unique lambda with psi_alpha(lambda) = 1. Requires alpha > 0.
double LambdaBar(const Network& network, double alpha);

// alpha_k > 0 solving psi_alpha(t_k) = 1, if one exists. Existence is
// decided by the zero-flow limit sum_{t_i < t_k} (t_k - t_i) f_i(0) > 1.
// Requires 1 <= k < n.
std::optional<double> ThresholdAlpha(const Network& network, std::size_t k);

// Total flow envelope served at waiting-cost level alpha:
// lower = sum {w_i(alpha) : t_i < level}, upper = sum {w_i(alpha) : t_i <= level}.
struct DemandBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Envelope for the social optimum, with level lambda_bar(alpha).
DemandBounds OptimumDemandBounds(const Network& network, double alpha);

// The unique alpha with demand in OptimumDemandBounds(alpha).
// kInfeasibleDemand unless 0 < demand < total saturation.
double OptimumAlphaForDemand(const Network& network, double demand);

// Social-optimum line flows. Lines tied with lambda_bar share the residual
// demand in proportion to w_i(alpha).
Assignment SocialOptimum(const Network& network, double demand);

// Minimal expected transit time over all nonempty strategies at the given
// line flows. Uses the common-lines greedy rule: scan lines by increasing
// travel time and keep each one that is faster than the current strategy.
double MinimalStrategyTime(const Network& network,
                           std::span<const double> flows);

// Minimal strategy time evaluated at the flows w(alpha).
double EquilibriumLevel(const Network& network, double alpha);

// alpha > 0 with EquilibriumLevel(alpha) = t_k, if one exists (it does iff
// the zero-flow minimal time is below t_k). Requires 1 <= k < n.
std::optional<double> EquilibriumThresholdAlpha(const Network& network,
                                                std::size_t k);

DemandBounds EquilibriumDemandBounds(const Network& network, double alpha);
double EquilibriumAlphaForDemand(const Network& network, double demand);

// Wardrop-equilibrium line flows.
Assignment WardropEquilibrium(const Network& network, double demand);

// Demand thresholds of a two-line network. Below `lower` only the fast line
// is used, above `upper` both lines carry w_i(alpha). When no threshold alpha
// exists both lines are used at every positive demand and the thresholds are
// reported as zero.
struct ThresholdReport {
  double lower_optimum = 0.0;
  double upper_optimum = 0.0;
  double lower_equilibrium = 0.0;
  double upper_equilibrium = 0.0;
  std::optional<double> alpha_optimum;
  std::optional<double> alpha_equilibrium;
};

// kUnsupported unless the network has exactly two lines.
ThresholdReport Thresholds(const Network& network);

}  // namespace commonlines

#endif  // COMMONLINES_CHARACTERIZATION_H_
