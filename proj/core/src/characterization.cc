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

#include "commonlines/characterization.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "commonlines/error.h"
#include "commonlines/wait_cost.h"

namespace commonlines {
namespace {

// Bracket expansion for searches over alpha doubles the upper end starting
// from 1 and gives up past this value.
constexpr double kAlphaCap = 1e12;

std::vector<WaitCostInverse> Inverses(const Network& network) {
  std::vector<WaitCostInverse> out;
  out.reserve(network.size());
  for (const Line& line : network.lines()) out.emplace_back(line);
  return out;
}

std::vector<double> Slopes(const std::vector<WaitCostInverse>& inverses,
                           double alpha) {
  std::vector<double> out(inverses.size());
  for (std::size_t i = 0; i < inverses.size(); ++i) {
    out[i] = inverses[i].Slope(alpha);
  }
  return out;
}

double PsiFromSlopes(const Network& network, std::span<const double> slopes,
                     double lambda) {
  double sum = 0.0;
  for (std::size_t i = 0; i < network.size(); ++i) {
    const double gap = lambda - network.line(i).travel_time;
    if (gap > 0.0) sum += gap * slopes[i];
  }
  return sum;
}

// psi is piecewise linear in lambda with breakpoints at the travel times.
// Narrow [t_1, t_1 + 1/w_1'] by bisecting over the breakpoints it contains,
// then solve on the remaining linear piece.
double LambdaBarFromSlopes(const Network& network,
                           std::span<const double> slopes) {
  const std::size_t n = network.size();
  double lo = network.line(0).travel_time;
  double hi = lo + 1.0 / slopes[0];
  double psi_lo = 0.0;
  double psi_hi = PsiFromSlopes(network, slopes, hi);
  std::size_t first = 0;
  std::size_t last = n;  // candidate breakpoints are t_first .. t_(last-1)
  while (true) {
    while (first < last && network.line(first).travel_time <= lo) ++first;
    while (last > first && network.line(last - 1).travel_time >= hi) --last;
    if (first >= last) break;
    const std::size_t mid = first + (last - first) / 2;
    const double t_mid = network.line(mid).travel_time;
    const double psi_mid = PsiFromSlopes(network, slopes, t_mid);
    if (psi_mid == 1.0) return t_mid;
    if (psi_mid < 1.0) {
      lo = t_mid;
      psi_lo = psi_mid;
    } else {
      hi = t_mid;
      psi_hi = psi_mid;
    }
  }
  return lo + (1.0 - psi_lo) * (hi - lo) / (psi_hi - psi_lo);
}

// Finds the smallest alpha bracket [lo, hi] where `increasing(alpha)` crosses
// `target`, then bisects to double precision.
double BisectIncreasing(const std::function<double(double)>& increasing,
                        double target, const char* what) {
  double lo = 0.0;
  double hi = 1.0;
  while (increasing(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > kAlphaCap) {
      throw Error(ErrorCode::kConvergence,
                  std::string("no bracket found for ") + what);
    }
  }
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (increasing(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

void RequireFeasible(const Network& network, double demand) {
  if (!(demand > 0.0 && demand < network.total_saturation())) {
    throw Error(ErrorCode::kInfeasibleDemand,
                "infeasible demand " + std::to_string(demand) +
                    "; must lie in (0, " +
                    std::to_string(network.total_saturation()) + ")");
  }
}

void RequireThresholdIndex(const Network& network, std::size_t k) {
  if (k == 0 || k >= network.size()) {
    throw Error(ErrorCode::kDomain,
                "threshold line index " + std::to_string(k) +
                    " outside [1, " + std::to_string(network.size()) + ")");
  }
}

// The optimum and the equilibrium share one structure: a threshold time
// level(alpha), lines faster than it carry w_i(alpha), slower ones nothing,
// and tied lines absorb the residual demand.
struct Regime {
  std::function<double(double)> level;
  std::function<std::optional<double>(std::size_t)> threshold_alpha;
};

DemandBounds BoundsAt(const Network& network,
                      const std::vector<WaitCostInverse>& inverses,
                      double alpha, double level) {
  DemandBounds bounds;
  for (std::size_t i = 0; i < network.size(); ++i) {
    const double t = network.line(i).travel_time;
    if (t > level + kTimeTolerance) continue;
    const double w = inverses[i].Value(alpha);
    bounds.upper += w;
    if (t < level - kTimeTolerance) bounds.lower += w;
  }
  return bounds;
}

double SolveAlpha(const Network& network, const Regime& regime,
                  double demand) {
  RequireFeasible(network, demand);
  const auto inverses = Inverses(network);
  const double slack = 1e-12 * std::max(1.0, demand);
  for (std::size_t k = 1; k < network.size(); ++k) {
    if (network.line(k).travel_time == network.line(k - 1).travel_time) {
      continue;
    }
    const std::optional<double> alpha_k = regime.threshold_alpha(k);
    if (!alpha_k) continue;
    const DemandBounds b =
        BoundsAt(network, inverses, *alpha_k, regime.level(*alpha_k));
    if (demand >= b.lower - slack && demand <= b.upper + slack) {
      return *alpha_k;
    }
  }
  return BisectIncreasing(
      [&](double alpha) {
        if (alpha == 0.0) return 0.0;
        return BoundsAt(network, inverses, alpha, regime.level(alpha)).upper;
      },
      demand, "demand");
}

Assignment Assign(const Network& network, double demand, double alpha,
                  double level) {
  const std::size_t n = network.size();
  Assignment out;
  out.demand = demand;
  out.alpha = alpha;
  out.threshold_time = level;
  out.flows.assign(n, 0.0);
  std::vector<std::size_t> tied;
  std::vector<double> w(n, 0.0);
  double assigned = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = network.line(i).travel_time;
    if (t > level + kTimeTolerance) continue;
    w[i] = InverseWaitCost(network.line(i), alpha);
    if (t < level - kTimeTolerance) {
      out.flows[i] = w[i];
      assigned += w[i];
    } else {
      tied.push_back(i);
    }
  }
  if (!tied.empty()) {
    double tied_capacity = 0.0;
    for (std::size_t i : tied) tied_capacity += w[i];
    const double residual =
        std::clamp(demand - assigned, 0.0, tied_capacity);
    for (std::size_t i : tied) {
      out.flows[i] = tied_capacity > 0.0 ? residual * w[i] / tied_capacity
                                         : residual / tied.size();
    }
  }
  return out;
}

Regime OptimumRegime(const Network& network) {
  return {[&network](double alpha) { return LambdaBar(network, alpha); },
          [&network](std::size_t k) { return ThresholdAlpha(network, k); }};
}

Regime EquilibriumRegime(const Network& network) {
  return {
      [&network](double alpha) { return EquilibriumLevel(network, alpha); },
      [&network](std::size_t k) {
        return EquilibriumThresholdAlpha(network, k);
      }};
}

}  // namespace

double Psi(const Network& network, double alpha, double lambda) {
  if (!(alpha > 0.0)) {
    throw Error(ErrorCode::kDomain, "psi needs alpha > 0");
  }
  const auto slopes = Slopes(Inverses(network), alpha);
  return PsiFromSlopes(network, slopes, lambda);
}

double LambdaBar(const Network& network, double alpha) {
  if (!(alpha > 0.0)) {
    throw Error(ErrorCode::kDomain, "lambda_bar needs alpha > 0");
  }
  const auto slopes = Slopes(Inverses(network), alpha);
  return LambdaBarFromSlopes(network, slopes);
}

std::optional<double> ThresholdAlpha(const Network& network, std::size_t k) {
  RequireThresholdIndex(network, k);
  const double t_k = network.line(k).travel_time;
  std::vector<WaitCostInverse> faster;
  std::vector<double> gaps;
  for (std::size_t i = 0; i < k; ++i) {
    const double gap = t_k - network.line(i).travel_time;
    if (gap > 0.0) {
      faster.emplace_back(network.line(i));
      gaps.push_back(gap);
    }
  }
  auto psi_at_tk = [&](double alpha) {
    double sum = 0.0;
    for (std::size_t j = 0; j < faster.size(); ++j) {
      sum += gaps[j] * faster[j].Slope(alpha);
    }
    return sum;
  };
  // w_i'(0+) = f_i(0), so this is the supremum of psi over alpha > 0.
  if (psi_at_tk(0.0) <= 1.0) return std::nullopt;
  // psi_alpha(t_k) decreases in alpha; bisect on its negation.
  return BisectIncreasing([&](double alpha) { return -psi_at_tk(alpha); },
                          -1.0, "threshold alpha");
}

DemandBounds OptimumDemandBounds(const Network& network, double alpha) {
  if (alpha == 0.0) return {};
  return BoundsAt(network, Inverses(network), alpha,
                  LambdaBar(network, alpha));
}

double OptimumAlphaForDemand(const Network& network, double demand) {
  return SolveAlpha(network, OptimumRegime(network), demand);
}

Assignment SocialOptimum(const Network& network, double demand) {
  const double alpha = OptimumAlphaForDemand(network, demand);
  const double lambda = LambdaBar(network, alpha);
  Assignment out = Assign(network, demand, alpha, lambda);
  out.lambda_bar = lambda;
  return out;
}

double MinimalStrategyTime(const Network& network,
                           std::span<const double> flows) {
  if (flows.size() != network.size()) {
    throw Error(ErrorCode::kDomain, "flow vector size mismatch");
  }
  double numerator = 1.0;
  double total_frequency = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < network.size(); ++i) {
    const double t = network.line(i).travel_time;
    if (!(t < best)) break;
    const double f = Frequency(network.line(i), flows[i]);
    if (f <= 0.0) continue;
    numerator += t * f;
    total_frequency += f;
    best = numerator / total_frequency;
  }
  if (total_frequency <= 0.0) {
    throw Error(ErrorCode::kDegenerateNetwork, "all frequencies vanish");
  }
  return best;
}

double EquilibriumLevel(const Network& network, double alpha) {
  if (alpha < 0.0) {
    throw Error(ErrorCode::kDomain, "waiting cost must be nonnegative");
  }
  std::vector<double> flows(network.size());
  for (std::size_t i = 0; i < network.size(); ++i) {
    flows[i] = InverseWaitCost(network.line(i), alpha);
  }
  return MinimalStrategyTime(network, flows);
}

std::optional<double> EquilibriumThresholdAlpha(const Network& network,
                                                std::size_t k) {
  RequireThresholdIndex(network, k);
  const double t_k = network.line(k).travel_time;
  if (EquilibriumLevel(network, 0.0) >= t_k) return std::nullopt;
  return BisectIncreasing(
      [&](double alpha) { return EquilibriumLevel(network, alpha); }, t_k,
      "equilibrium threshold alpha");
}

DemandBounds EquilibriumDemandBounds(const Network& network, double alpha) {
  if (alpha == 0.0) return {};
  return BoundsAt(network, Inverses(network), alpha,
                  EquilibriumLevel(network, alpha));
}

double EquilibriumAlphaForDemand(const Network& network, double demand) {
  return SolveAlpha(network, EquilibriumRegime(network), demand);
}

Assignment WardropEquilibrium(const Network& network, double demand) {
  const double alpha = EquilibriumAlphaForDemand(network, demand);
  return Assign(network, demand, alpha, EquilibriumLevel(network, alpha));
}

ThresholdReport Thresholds(const Network& network) {
  if (network.size() != 2) {
    throw Error(ErrorCode::kUnsupported,
                "threshold report needs exactly two lines, got " +
                    std::to_string(network.size()));
  }
  ThresholdReport report;
  report.alpha_optimum = ThresholdAlpha(network, 1);
  if (report.alpha_optimum) {
    const DemandBounds b = OptimumDemandBounds(network, *report.alpha_optimum);
    report.lower_optimum = b.lower;
    report.upper_optimum = b.upper;
  }
  report.alpha_equilibrium = EquilibriumThresholdAlpha(network, 1);
  if (report.alpha_equilibrium) {
    const DemandBounds b =
        EquilibriumDemandBounds(network, *report.alpha_equilibrium);
    report.lower_equilibrium = b.lower;
    report.upper_equilibrium = b.upper;
  }
  return report;
}

}  // namespace commonlines
