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

#ifndef COMMONLINES_STRATEGY_H_
#define COMMONLINES_STRATEGY_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "commonlines/model.h"

namespace commonlines {

// Largest network for which strategies are enumerated (2^n - 1 subsets).
inline constexpr std::size_t kMaxEnumeratedLines = 16;

// A nonempty set of attractive lines, stored as a bit mask over storage
// indices of the network.
class Strategy {
 public:
  // kDomain for an empty mask.
  explicit Strategy(std::uint32_t mask);
  static Strategy FromMembers(std::span<const std::size_t> members);

  std::uint32_t mask() const { return mask_; }
  bool Contains(std::size_t line) const {
    return line < 32 && ((mask_ >> line) & 1u) != 0;
  }
  std::size_t size() const;
  std::vector<std::size_t> Members() const;

  auto operator<=>(const Strategy&) const = default;

 private:
  std::uint32_t mask_;
};

// Strategy flows h_s >= 0; strategies absent from the map carry no flow.
class StrategyFlowVector {
 public:
  StrategyFlowVector() = default;

  // Adds `flow` to the strategy's current flow. kDomain for negative flow.
  void Add(Strategy strategy, double flow);
  double Get(Strategy strategy) const;
  double Total() const;

  const std::map<Strategy, double>& flows() const { return flows_; }

 private:
  std::map<Strategy, double> flows_;
};

// All 2^n - 1 strategies ordered by mask value. kTooLarge above
// kMaxEnumeratedLines.
std::vector<Strategy> EnumerateStrategies(std::size_t n);

// Expected waiting plus in-vehicle time
// T_s(v) = (1 + sum_{i in s} t_i f_i(v_i)) / sum_{i in s} f_i(v_i).
double StrategyTime(const Network& network, Strategy strategy,
                    std::span<const double> flows);

// Line flows induced by strategy flows: the fixed point of
// v_i = sum_s h_s [i in s] f_i(v_i) / sum_{j in s} f_j(v_j).
std::vector<double> InducedLineFlows(const Network& network,
                                     const StrategyFlowVector& strategy_flows);

// max_i v_i / f_i(v_i), the least waiting-time budget any strategy split
// needs to carry the flows v.
double Phi(const Network& network, std::span<const double> flows);

struct PhiCertificate {
  double value = 0.0;
  StrategyFlowVector strategy_flows;
};

// Builds the minimizing strategy split for the flows v: rank lines by
// decreasing waiting cost r_i = v_i / f_i(v_i) and load the nested
// strategies {top k lines}, k = n .. 1, with h tau equal to the successive
// differences of the ranked r. The split reproduces v and its total waiting
// time equals max_i r_i.
PhiCertificate PhiByNestedStrategies(const Network& network,
                                     std::span<const double> flows);

// The strategy split from PhiByNestedStrategies.
StrategyFlowVector StrategyDecomposition(const Network& network,
                                         std::span<const double> flows);

struct BruteForceResult {
  double cost = 0.0;
  StrategyFlowVector strategy_flows;
  std::vector<double> line_flows;
  // Best cost after the coarse grid and after each refinement stage.
  std::vector<double> stage_costs;
  // Flow quantum of the final stage.
  double final_step = 0.0;
};

// Upper-bound oracle for the social optimum: evaluates sum_s h_s T_s(v(h))
// on the lattice of strategy splits of `demand` into `resolution` equal
// parts, then refines around the best point twice, each time with a ten
// times finer flow quantum. kTooLarge for more than three lines.
BruteForceResult BruteForceSocialOptimum(const Network& network,
                                         double demand, int resolution = 100);

}  // namespace commonlines

#endif  // COMMONLINES_STRATEGY_H_
