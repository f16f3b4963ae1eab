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

#include "commonlines/strategy.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "commonlines/error.h"
#include "commonlines/wait_cost.h"

namespace commonlines {
namespace {

constexpr double kDamping = 0.5;
constexpr int kMaxFixedPointIterations = 100000;
constexpr int kStallWindow = 200;
constexpr int kWarmupIterations = 5;
constexpr int kMaxNewtonSteps = 50;
constexpr double kResidualTolerance = 1e-9;
// Keeps iterates strictly below saturation while the fixed point is solved.
constexpr double kSaturationMargin = 1e-12;
// Lattice sizes above this are rejected rather than enumerated.
constexpr double kMaxLatticePoints = 5e6;

struct FlowSystem {
  const Network& network;
  std::vector<std::vector<std::size_t>> members;
  std::vector<double> demand;  // h_s, aligned with members
  std::vector<double> cap;     // largest admissible iterate per line

  std::vector<double> Frequencies(std::span<const double> v) const {
    std::vector<double> f(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      f[i] = Frequency(network.line(i), std::min(v[i], cap[i]));
    }
    return f;
  }

  // Right-hand side of the induced-flow equations.
  std::vector<double> Map(std::span<const double> v) const {
    const auto f = Frequencies(v);
    std::vector<double> out(v.size(), 0.0);
    for (std::size_t s = 0; s < members.size(); ++s) {
      double denom = 0.0;
      for (std::size_t i : members[s]) denom += f[i];
      for (std::size_t i : members[s]) out[i] += demand[s] * f[i] / denom;
    }
    return out;
  }

  double Residual(std::span<const double> v) const {
    const auto mapped = Map(v);
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      worst = std::max(worst, std::abs(mapped[i] - v[i]));
    }
    return worst;
  }

  void Clamp(std::vector<double>& v) const {
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = std::clamp(v[i], 0.0, cap[i]);
    }
  }
};

// Solves a monotone scalar equation g(x) = 0 with g increasing on [lo, hi].
template <typename G>
double BisectRoot(G&& g, double lo, double hi) {
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Two lines: conservation leaves a single unknown v1, and
// v1 - h_1 - h_12 f_1(v1) / (f_1(v1) + f_2(H - v1)) is increasing in v1.
std::vector<double> SolveTwoLines(const FlowSystem& sys, double total) {
  double only_first = 0.0;
  double shared = 0.0;
  for (std::size_t s = 0; s < sys.members.size(); ++s) {
    const auto& m = sys.members[s];
    if (m.size() == 2) {
      shared += sys.demand[s];
    } else if (m[0] == 0) {
      only_first += sys.demand[s];
    }
  }
  const double lo = std::max(only_first, total - sys.cap[1]);
  const double hi = std::min(only_first + shared, sys.cap[0]);
  if (lo > hi) {
    throw Error(ErrorCode::kSaturatedFlow,
                "strategy flows exceed the line saturation flows");
  }
  auto g = [&](double v1) {
    const double f1 = Frequency(sys.network.line(0), v1);
    const double f2 = Frequency(sys.network.line(1), total - v1);
    return v1 - only_first - shared * f1 / (f1 + f2);
  };
  const double v1 = BisectRoot(g, lo, hi);
  return {v1, total - v1};
}

// Nonlinear Gauss-Seidel: each line's equation is monotone in its own flow
// when the other flows are frozen, so every coordinate update is a bisection.
std::vector<double> SolveBySweeps(const FlowSystem& sys,
                                  std::vector<double> v) {
  const std::size_t n = v.size();
  double checkpoint = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < 10000; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      auto f = sys.Frequencies(v);
      double upper = 0.0;
      for (std::size_t s = 0; s < sys.members.size(); ++s) {
        for (std::size_t j : sys.members[s]) {
          if (j == i) upper += sys.demand[s];
        }
      }
      auto g = [&](double vi) {
        const double fi = Frequency(sys.network.line(i), vi);
        double rhs = 0.0;
        for (std::size_t s = 0; s < sys.members.size(); ++s) {
          double others = 0.0;
          bool has = false;
          for (std::size_t j : sys.members[s]) {
            if (j == i) {
              has = true;
            } else {
              others += f[j];
            }
          }
          if (has) rhs += sys.demand[s] * fi / (fi + others);
        }
        return vi - rhs;
      };
      v[i] = BisectRoot(g, 0.0, std::min(upper, sys.cap[i]));
    }
    const double residual = sys.Residual(v);
    if (residual <= 0.1 * kResidualTolerance) break;
    if ((sweep + 1) % kStallWindow == 0) {
      if (residual > 0.5 * checkpoint) break;
      checkpoint = residual;
    }
  }
  return v;
}

// Flow of the strategies inside a line set L can only ride lines of L, so
// it must stay below their joint saturation flow. Sums over subsets use the
// zeta transform over bit masks.
void RequireCapacity(const Network& network, const StrategyFlowVector& h) {
  const std::size_t n = network.size();
  const std::size_t count = std::size_t{1} << n;
  std::vector<double> inside(count, 0.0);
  for (const auto& [strategy, flow] : h.flows()) inside[strategy.mask()] += flow;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t mask = 0; mask < count; ++mask) {
      if (mask & (std::size_t{1} << i)) inside[mask] += inside[mask ^ (std::size_t{1} << i)];
    }
  }
  std::vector<double> cap(count, 0.0);
  for (std::size_t mask = 1; mask < count; ++mask) {
    const std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
    cap[mask] = cap[mask & (mask - 1)] + SaturationFlow(network.line(low));
    if (inside[mask] >= cap[mask]) {
      throw Error(ErrorCode::kSaturatedFlow,
                  "strategy flows exceed the saturation flow of their lines");
    }
  }
}

// Newton on v - Map(v) = 0 with a forward-difference Jacobian and a
// backtracking line search on the residual. Returns false if it stalls.
bool NewtonPolish(const FlowSystem& sys, std::vector<double>& v,
                  double target) {
  const std::size_t n = v.size();
  auto residual_of = [&](const std::vector<double>& x,
                         Eigen::VectorXd& out) {
    const auto mapped = sys.Map(x);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = x[i] - mapped[i];
      worst = std::max(worst, std::abs(out[i]));
    }
    return worst;
  };
  Eigen::VectorXd r(n);
  Eigen::VectorXd shifted(n);
  Eigen::MatrixXd jac(n, n);
  double norm = residual_of(v, r);
  for (int step = 0; step < kMaxNewtonSteps; ++step) {
    if (norm <= target) return true;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> x = v;
      double h = 1e-7 * std::max(1.0, v[k]);
      if (x[k] + h > sys.cap[k]) h = -h;
      x[k] += h;
      residual_of(x, shifted);
      jac.col(k) = (shifted - r) / h;
    }
    const Eigen::VectorXd delta = jac.partialPivLu().solve(-r);
    if (!delta.allFinite()) return false;
    double scale = 1.0;
    bool improved = false;
    for (int half = 0; half < 30; ++half, scale *= 0.5) {
      std::vector<double> x = v;
      for (std::size_t i = 0; i < n; ++i) x[i] += scale * delta[i];
      sys.Clamp(x);
      const double trial = residual_of(x, shifted);
      if (trial < norm) {
        v = std::move(x);
        r = shifted;
        norm = trial;
        improved = true;
        break;
      }
    }
    // Stuck at rounding level counts as converged.
    if (!improved) return norm <= 10.0 * target;
  }
  return norm <= target;
}

}  // namespace

Strategy::Strategy(std::uint32_t mask) : mask_(mask) {
  if (mask == 0) {
    throw Error(ErrorCode::kDomain, "a strategy needs at least one line");
  }
}

Strategy Strategy::FromMembers(std::span<const std::size_t> members) {
  std::uint32_t mask = 0;
  for (std::size_t i : members) {
    if (i >= 32) {
      throw Error(ErrorCode::kTooLarge, "line index beyond 31");
    }
    mask |= 1u << i;
  }
  return Strategy(mask);
}

std::size_t Strategy::size() const {
  return static_cast<std::size_t>(std::popcount(mask_));
}

std::vector<std::size_t> Strategy::Members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 32; ++i) {
    if (Contains(i)) out.push_back(i);
  }
  return out;
}

void StrategyFlowVector::Add(Strategy strategy, double flow) {
  if (flow < 0.0 || std::isnan(flow)) {
    throw Error(ErrorCode::kDomain, "strategy flow must be nonnegative");
  }
  flows_[strategy] += flow;
}

double StrategyFlowVector::Get(Strategy strategy) const {
  const auto it = flows_.find(strategy);
  return it == flows_.end() ? 0.0 : it->second;
}

double StrategyFlowVector::Total() const {
  double total = 0.0;
  for (const auto& [strategy, flow] : flows_) total += flow;
  return total;
}

std::vector<Strategy> EnumerateStrategies(std::size_t n) {
  if (n == 0) {
    throw Error(ErrorCode::kDomain, "no lines to enumerate");
  }
  if (n > kMaxEnumeratedLines) {
    throw Error(ErrorCode::kTooLarge,
                "refusing to enumerate 2^" + std::to_string(n) +
                    " strategies");
  }
  std::vector<Strategy> out;
  const std::uint32_t end = 1u << n;
  out.reserve(end - 1);
  for (std::uint32_t mask = 1; mask < end; ++mask) out.emplace_back(mask);
  return out;
}

double StrategyTime(const Network& network, Strategy strategy,
                    std::span<const double> flows) {
  double numerator = 1.0;
  double total_frequency = 0.0;
  for (std::size_t i : strategy.Members()) {
    if (i >= network.size() || i >= flows.size()) {
      throw Error(ErrorCode::kDomain, "strategy refers to a missing line");
    }
    const double f = Frequency(network.line(i), flows[i]);
    numerator += network.line(i).travel_time * f;
    total_frequency += f;
  }
  if (total_frequency <= 0.0) {
    throw Error(ErrorCode::kDegenerateStrategy,
                "strategy has zero total frequency");
  }
  return numerator / total_frequency;
}

std::vector<double> InducedLineFlows(
    const Network& network, const StrategyFlowVector& strategy_flows) {
  const std::size_t n = network.size();
  FlowSystem sys{network, {}, {}, {}};
  double total = 0.0;
  for (const auto& [strategy, flow] : strategy_flows.flows()) {
    if (flow == 0.0) continue;
    auto members = strategy.Members();
    if (members.back() >= n) {
      throw Error(ErrorCode::kDomain, "strategy refers to a missing line");
    }
    sys.members.push_back(std::move(members));
    sys.demand.push_back(flow);
    total += flow;
  }
  std::vector<double> v(n, 0.0);
  if (total == 0.0) return v;
  if (n <= kMaxEnumeratedLines) RequireCapacity(network, strategy_flows);
  sys.cap.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sys.cap[i] = SaturationFlow(network.line(i)) * (1.0 - kSaturationMargin);
  }

  v = sys.Map(v);  // proportional split at zero-flow frequencies
  sys.Clamp(v);
  // A short damped warm-up, then Newton. The plain damped iteration with its
  // stall check and the bisection fallbacks remain for systems where Newton
  // makes no progress.
  const double target = 1e-3 * kResidualTolerance;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int iter = 0; iter < kWarmupIterations && !converged; ++iter) {
    const auto mapped = sys.Map(v);
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      residual = std::max(residual, std::abs(mapped[i] - v[i]));
      v[i] = (1.0 - kDamping) * v[i] + kDamping * mapped[i];
    }
    sys.Clamp(v);
    converged = residual <= target;
  }
  if (!converged) {
    std::vector<double> polished = v;
    if (NewtonPolish(sys, polished, target)) {
      v = std::move(polished);
      converged = true;
    }
  }
  double checkpoint = residual;
  for (int iter = 0; iter < kMaxFixedPointIterations && !converged; ++iter) {
    const auto mapped = sys.Map(v);
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      residual = std::max(residual, std::abs(mapped[i] - v[i]));
      v[i] = (1.0 - kDamping) * v[i] + kDamping * mapped[i];
    }
    sys.Clamp(v);
    if (residual <= target) {
      converged = true;
      break;
    }
    if ((iter + 1) % kStallWindow == 0) {
      if (residual > 0.5 * checkpoint) break;
      checkpoint = residual;
    }
  }
  if (!converged) {
    v = n == 2 ? SolveTwoLines(sys, total) : SolveBySweeps(sys, v);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] >= sys.cap[i] * (1.0 - 1e-9)) {
      throw Error(ErrorCode::kSaturatedFlow,
                  "line " + std::to_string(i) + " saturates");
    }
  }
  residual = sys.Residual(v);
  if (!(residual <= kResidualTolerance)) {
    throw Error(ErrorCode::kConvergence,
                "induced line flows did not converge (residual " +
                    std::to_string(residual) + ")");
  }
  return v;
}

double Phi(const Network& network, std::span<const double> flows) {
  double best = 0.0;
  for (std::size_t i = 0; i < network.size(); ++i) {
    best = std::max(best, SocialWaitingCost(network.line(i), flows[i]));
  }
  return best;
}

PhiCertificate PhiByNestedStrategies(const Network& network,
                                     std::span<const double> flows) {
  const std::size_t n = network.size();
  if (flows.size() != n) {
    throw Error(ErrorCode::kDomain, "flow vector size mismatch");
  }
  std::vector<double> ratio(n);
  std::vector<double> freq(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (flows[i] < 0.0) {
      throw Error(ErrorCode::kDomain, "negative line flow");
    }
    if (flows[i] >= SaturationFlow(network.line(i))) {
      throw Error(ErrorCode::kSaturatedFlow, "line flow at saturation");
    }
    freq[i] = Frequency(network.line(i), flows[i]);
    ratio[i] = flows[i] == 0.0 ? 0.0 : flows[i] / freq[i];
  }
  std::vector<std::size_t> rank(n);
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  std::stable_sort(rank.begin(), rank.end(), [&ratio](auto a, auto b) {
    return ratio[a] > ratio[b];
  });

  PhiCertificate out;
  std::uint32_t mask = 0;
  double prefix_frequency = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mask |= 1u << rank[k];
    prefix_frequency += freq[rank[k]];
    const double next = k + 1 < n ? ratio[rank[k + 1]] : 0.0;
    const double step = ratio[rank[k]] - next;  // h tau for this strategy
    if (step > 0.0) {
      out.strategy_flows.Add(Strategy(mask), step * prefix_frequency);
      out.value += step;
    }
  }
  return out;
}

StrategyFlowVector StrategyDecomposition(const Network& network,
                                         std::span<const double> flows) {
  return PhiByNestedStrategies(network, flows).strategy_flows;
}

namespace {

struct LatticeSearch {
  const Network& network;
  std::vector<Strategy> strategies;
  double demand;

  // Total travel time of a strategy split; +inf when the split saturates a
  // line or its induced flows cannot be solved.
  double Cost(std::span<const double> h, std::vector<double>* line_flows) const {
    StrategyFlowVector sfv;
    for (std::size_t s = 0; s < h.size(); ++s) {
      if (h[s] > 0.0) sfv.Add(strategies[s], h[s]);
    }
    try {
      auto v = InducedLineFlows(network, sfv);
      double cost = 0.0;
      for (std::size_t s = 0; s < h.size(); ++s) {
        if (h[s] > 0.0) cost += h[s] * StrategyTime(network, strategies[s], v);
      }
      if (line_flows) *line_flows = std::move(v);
      return cost;
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  }
};

double LatticeSize(int resolution, std::size_t parts) {
  // C(resolution + parts - 1, parts - 1)
  double count = 1.0;
  for (std::size_t j = 1; j < parts; ++j) {
    count = count * (resolution + static_cast<double>(j)) /
            static_cast<double>(j);
  }
  return count;
}

}  // namespace

BruteForceResult BruteForceSocialOptimum(const Network& network,
                                         double demand, int resolution) {
  const std::size_t n = network.size();
  if (n > 3) {
    throw Error(ErrorCode::kTooLarge,
                "brute-force optimum supports at most three lines");
  }
  if (resolution < 1) {
    throw Error(ErrorCode::kDomain, "resolution must be positive");
  }
  if (demand < 0.0 || demand >= network.total_saturation()) {
    throw Error(ErrorCode::kInfeasibleDemand, "demand outside [0, saturation)");
  }
  LatticeSearch search{network, EnumerateStrategies(n), demand};
  const std::size_t m = search.strategies.size();
  if (LatticeSize(resolution, m) > kMaxLatticePoints) {
    throw Error(ErrorCode::kTooLarge,
                "lattice of " + std::to_string(LatticeSize(resolution, m)) +
                    " points; lower the resolution");
  }

  BruteForceResult result;
  if (demand == 0.0) {
    result.line_flows.assign(n, 0.0);
    result.stage_costs = {0.0, 0.0, 0.0};
    return result;
  }

  // Compositions of `resolution` into m parts in lexicographic order; the
  // first strictly best split wins ties.
  std::vector<int> counts(m, 0);
  counts[m - 1] = resolution;
  std::vector<double> h(m);
  std::vector<double> best_h;
  double best = std::numeric_limits<double>::infinity();
  const double quantum = demand / resolution;
  while (true) {
    for (std::size_t s = 0; s < m; ++s) h[s] = counts[s] * quantum;
    const double cost = search.Cost(h, nullptr);
    if (cost < best) {
      best = cost;
      best_h = h;
    }
    // Next composition: move one unit from the last nonzero slot forward.
    std::size_t j = m - 1;
    while (j > 0 && counts[j] == 0) --j;
    if (j == 0) break;
    const int carry = counts[j];
    counts[j] = 0;
    counts[j - 1] += 1;
    counts[m - 1] = carry - 1;
  }
  if (!std::isfinite(best)) {
    throw Error(ErrorCode::kSaturatedFlow,
                "every lattice split saturates a line");
  }
  result.stage_costs.push_back(best);

  // Each refinement moves multiples of a ten times finer quantum between
  // pairs of strategies, covering one step of the previous stage.
  double step = quantum;
  for (int stage = 0; stage < 2; ++stage) {
    step /= 10.0;
    for (int sweep = 0; sweep < 1000; ++sweep) {
      double sweep_best = best;
      std::vector<double> sweep_h;
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
          if (a == b) continue;
          for (int k = 1; k <= 10; ++k) {
            const double move = k * step;
            if (best_h[a] < move - 1e-12 * demand) break;
            h = best_h;
            h[a] = std::max(0.0, h[a] - move);
            h[b] += move;
            const double cost = search.Cost(h, nullptr);
            if (cost < sweep_best) {
              sweep_best = cost;
              sweep_h = h;
            }
          }
        }
      }
      if (sweep_h.empty()) break;
      best = sweep_best;
      best_h = std::move(sweep_h);
    }
    result.stage_costs.push_back(best);
  }
  result.final_step = step;
  result.cost = search.Cost(best_h, &result.line_flows);
  for (std::size_t s = 0; s < m; ++s) {
    if (best_h[s] > 0.0) result.strategy_flows.Add(search.strategies[s], best_h[s]);
  }
  return result;
}

}  // namespace commonlines
