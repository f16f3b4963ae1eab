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

#include "commonlines/model.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "commonlines/error.h"

namespace commonlines {
namespace {

// Upper end of the utilization bracket. The geometric sum is strictly
// increasing on [0, 1), so the bracketed search always converges.
constexpr double kMaxUtilization = 1.0 - 1e-14;

double GeometricSum(double rho, int capacity) {
  double term = 1.0;
  double sum = 0.0;
  for (int k = 1; k <= capacity; ++k) {
    term *= rho;
    sum += term;
  }
  return sum;
}

void RequireInterior(double flow, double saturation) {
  if (!(flow > 0.0 && flow < saturation)) {
    throw Error(ErrorCode::kDomain,
                "flow " + std::to_string(flow) +
                    " outside the open interval (0, " +
                    std::to_string(saturation) + ")");
  }
}

struct QueueDerivatives {
  double first;
  double second;
};

// Derivatives of f with respect to v, obtained through rho: f = mu (1 - rho^K)
// and dv/drho = mu * sum_k k rho^(k-1).
QueueDerivatives QueueFrequencyDerivatives(const QueueCapacity& q,
                                           double flow) {
  const double rho = SolveUtilization(q.mu, q.capacity, flow);
  const int k_cap = q.capacity;
  double s1 = 0.0;  // sum_k k rho^(k-1)
  double s2 = 0.0;  // sum_k k (k-1) rho^(k-2)
  for (int k = 1; k <= k_cap; ++k) {
    s1 += k * std::pow(rho, k - 1);
    if (k >= 2) s2 += k * (k - 1) * std::pow(rho, k - 2);
  }
  const double rho_k1 = std::pow(rho, k_cap - 1);
  const double rho_k2 = k_cap >= 2 ? std::pow(rho, k_cap - 2) : 0.0;
  const double first = -k_cap * rho_k1 / s1;
  const double dfirst_drho =
      -k_cap * ((k_cap - 1) * rho_k2 * s1 - rho_k1 * s2) / (s1 * s1);
  return {first, dfirst_drho / (q.mu * s1)};
}

}  // namespace

void Validate(const FrequencyModel& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if (!(m.mu > 0.0) || !std::isfinite(m.mu)) {
          throw Error(ErrorCode::kInvalidModel, "mu must be positive");
        }
        if constexpr (std::is_same_v<T, QueueCapacity>) {
          if (m.capacity < 1) {
            throw Error(ErrorCode::kInvalidModel,
                        "queue capacity must be a positive integer");
          }
        } else {
          if (!(m.capacity > 0.0) || !std::isfinite(m.capacity)) {
            throw Error(ErrorCode::kInvalidModel,
                        "capacity must be positive");
          }
          if (!(m.beta > 0.0) || !std::isfinite(m.beta)) {
            throw Error(ErrorCode::kInvalidModel, "beta must be positive");
          }
          if (!(m.epsilon > 0.0 && m.epsilon < m.mu)) {
            throw Error(ErrorCode::kInvalidModel,
                        "epsilon must lie in (0, mu)");
          }
        }
      },
      model);
}

double SaturationFlow(const FrequencyModel& model) {
  return std::visit([](const auto& m) { return m.mu * m.capacity; }, model);
}

double SaturationFlow(const Line& line) {
  return SaturationFlow(line.frequency);
}

double SolveUtilization(double mu, int capacity, double flow) {
  if (flow < 0.0) {
    throw Error(ErrorCode::kDomain, "negative flow");
  }
  if (flow >= mu * capacity) {
    throw Error(ErrorCode::kSaturatedFlow,
                "flow " + std::to_string(flow) + " reaches saturation " +
                    std::to_string(mu * capacity));
  }
  if (flow == 0.0) return 0.0;
  const double target = flow / mu;
  double lo = 0.0;
  double hi = kMaxUtilization;
  if (GeometricSum(hi, capacity) <= target) return hi;
  // The sum is increasing and convex in rho, so a Newton step is accepted
  // whenever it stays inside the current bracket; bisection otherwise.
  double rho = std::min(target, 0.5);
  for (int iter = 0; iter < 200; ++iter) {
    double term = 1.0;
    double value = 0.0;
    double slope = 0.0;
    for (int k = 1; k <= capacity; ++k) {
      slope += k * term;
      term *= rho;
      value += term;
    }
    const double residual = value - target;
    if (residual == 0.0) return rho;
    if (residual < 0.0) {
      lo = rho;
    } else {
      hi = rho;
    }
    double next = rho - residual / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == rho || next <= lo || next >= hi) break;
    const bool done = std::abs(next - rho) <= 1e-16 * rho;
    rho = next;
    if (done) break;
  }
  return rho;
}

double Frequency(const Line& line, double flow) {
  if (flow < 0.0) {
    throw Error(ErrorCode::kDomain, "negative flow");
  }
  return std::visit(
      [flow](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, QueueCapacity>) {
          const double rho = SolveUtilization(m.mu, m.capacity, flow);
          // v (1/rho - 1) = mu (1 - rho)(1 + rho + ... + rho^(K-1))
          //               = mu (1 - rho^K), which is also the v -> 0 limit.
          return m.mu * (1.0 - std::pow(rho, m.capacity));
        } else {
          const double saturation = m.mu * m.capacity;
          if (flow >= saturation) return m.epsilon;
          return m.mu * (1.0 - std::pow(flow / saturation, m.beta));
        }
      },
      line.frequency);
}

double FrequencyDerivative(const Line& line, double flow) {
  RequireInterior(flow, SaturationFlow(line));
  return std::visit(
      [flow](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, QueueCapacity>) {
          return QueueFrequencyDerivatives(m, flow).first;
        } else {
          const double saturation = m.mu * m.capacity;
          return -m.mu / std::pow(saturation, m.beta) * m.beta *
                 std::pow(flow, m.beta - 1.0);
        }
      },
      line.frequency);
}

double FrequencySecondDerivative(const Line& line, double flow) {
  RequireInterior(flow, SaturationFlow(line));
  return std::visit(
      [flow](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, QueueCapacity>) {
          return QueueFrequencyDerivatives(m, flow).second;
        } else {
          const double saturation = m.mu * m.capacity;
          return -m.mu / std::pow(saturation, m.beta) * m.beta *
                 (m.beta - 1.0) * std::pow(flow, m.beta - 2.0);
        }
      },
      line.frequency);
}

Network::Network(std::vector<Line> lines) {
  if (lines.empty()) {
    throw Error(ErrorCode::kInvalidModel, "network needs at least one line");
  }
  for (const Line& line : lines) {
    if (!(line.travel_time >= 0.0) || !std::isfinite(line.travel_time)) {
      throw Error(ErrorCode::kInvalidModel,
                  "travel time must be finite and nonnegative");
    }
    Validate(line.frequency);
  }
  input_index_.resize(lines.size());
  std::iota(input_index_.begin(), input_index_.end(), std::size_t{0});
  std::stable_sort(input_index_.begin(), input_index_.end(),
                   [&lines](std::size_t a, std::size_t b) {
                     return lines[a].travel_time < lines[b].travel_time;
                   });
  lines_.reserve(lines.size());
  for (std::size_t idx : input_index_) {
    lines_.push_back(lines[idx]);
    total_saturation_ += SaturationFlow(lines[idx]);
  }
}

std::vector<double> Network::ToInputOrder(
    std::span<const double> values) const {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size() && i < size(); ++i) {
    out[input_index_[i]] = values[i];
  }
  return out;
}

}  // namespace commonlines
