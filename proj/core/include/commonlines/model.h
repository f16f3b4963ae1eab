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

#ifndef COMMONLINES_MODEL_H_
#define COMMONLINES_MODEL_H_

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace commonlines {

// Effective frequency of a line whose buses arrive as a Poisson process of
// rate `mu` and carry at most `capacity` passengers. The frequency is
// f(v) = v (1/rho(v) - 1) where rho solves mu (rho + ... + rho^K) = v.
struct QueueCapacity {
  double mu = 0.0;    // buses/hour
  int capacity = 0;   // passengers/bus
};

// f(v) = mu [1 - (v / (mu K))^beta] below saturation, `epsilon` at or above.
struct PowerSaturation {
  double mu = 0.0;          // buses/hour
  double capacity = 0.0;    // passengers/bus
  double beta = 0.0;
  double epsilon = 1.0 / 999.0;  // buses/hour
};

using FrequencyModel = std::variant<QueueCapacity, PowerSaturation>;

// Throws Error(kInvalidModel) when parameters are out of range.
void Validate(const FrequencyModel& model);

// mu * K for both families.
double SaturationFlow(const FrequencyModel& model);

// Unique rho in [0, 1) with mu (rho + rho^2 + ... + rho^K) = flow.
// Throws kSaturatedFlow when flow >= mu K and kDomain when flow < 0.
double SolveUtilization(double mu, int capacity, double flow);

struct Line {
  double travel_time = 0.0;  // hours
  FrequencyModel frequency;
};

// Effective frequency f(v). The queue family is continuous at zero with
// f(0) = mu and is undefined at or beyond saturation (kSaturatedFlow); the
// power family returns its epsilon floor there.
double Frequency(const Line& line, double flow);

// f'(v) and f''(v) on the open interval (0, saturation); kDomain outside.
double FrequencyDerivative(const Line& line, double flow);
double FrequencySecondDerivative(const Line& line, double flow);

double SaturationFlow(const Line& line);

// Lines sharing one origin-destination pair. Lines are kept sorted by
// nondecreasing travel time; ties keep their input order.
class Network {
 public:
  explicit Network(std::vector<Line> lines);

  std::size_t size() const { return lines_.size(); }
  const Line& line(std::size_t i) const { return lines_[i]; }
  std::span<const Line> lines() const { return lines_; }

  // Position in the constructor argument of the line stored at `i`.
  std::size_t input_index(std::size_t i) const { return input_index_[i]; }

  // Sum of line saturation flows; feasible demands lie strictly below it.
  double total_saturation() const { return total_saturation_; }

  // Reorders per-line values from storage order back to input order.
  std::vector<double> ToInputOrder(std::span<const double> values) const;

 private:
  std::vector<Line> lines_;
  std::vector<std::size_t> input_index_;
  double total_saturation_ = 0.0;
};

// Per-line flows with the waiting-cost level `alpha` that certifies them and,
// for social optima, the time threshold lambda_bar(alpha).
struct Assignment {
  std::vector<double> flows;  // storage order of the network
  double demand = 0.0;
  double alpha = 0.0;
  std::optional<double> lambda_bar;
  // Time level the line travel times are compared against: lambda_bar for
  // optima, the minimal strategy time at w(alpha) for equilibria.
  double threshold_time = 0.0;
};

}  // namespace commonlines

#endif  // COMMONLINES_MODEL_H_
