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

#include "commonlines/wait_cost.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "commonlines/error.h"

namespace commonlines {
namespace {

bool HasClosedForm(const Line& line) {
  return std::holds_alternative<QueueCapacity>(line.frequency);
}

// Flow reached when the queue utilization equals alpha / (1 + alpha):
// w(alpha) = mu alpha (1 - (alpha / (1 + alpha))^K).
double QueueInverse(const QueueCapacity& q, double alpha) {
  const double ratio = alpha / (1.0 + alpha);
  return q.mu * alpha * (1.0 - std::pow(ratio, q.capacity));
}

double QueueInverseSlope(const QueueCapacity& q, double alpha) {
  const double ratio = alpha / (1.0 + alpha);
  return q.mu * (1.0 - std::pow(ratio, q.capacity) *
                           (1.0 + q.capacity / (1.0 + alpha)));
}

}  // namespace

double SocialWaitingCost(const Line& line, double flow) {
  if (flow == 0.0) return 0.0;
  return flow / Frequency(line, flow);
}

WaitCostInverse::WaitCostInverse(Line line)
    : line_(std::move(line)),
      mode_(HasClosedForm(line_) ? Mode::kClosedForm
                                 : Mode::kNumericInversion) {}

WaitCostInverse::WaitCostInverse(Line line, Mode mode)
    : line_(std::move(line)), mode_(mode) {
  if (mode_ == Mode::kClosedForm && !HasClosedForm(line_)) {
    throw Error(ErrorCode::kUnsupported,
                "no closed-form inverse for this frequency family");
  }
}

double WaitCostInverse::Value(double alpha) const {
  if (alpha < 0.0 || std::isnan(alpha)) {
    throw Error(ErrorCode::kDomain, "waiting cost must be nonnegative");
  }
  if (alpha == 0.0) return 0.0;
  if (mode_ == Mode::kClosedForm) {
    return QueueInverse(std::get<QueueCapacity>(line_.frequency), alpha);
  }
  return NumericValue(alpha);
}

// Solves g(v) = v - alpha f(v) = 0 on [0, saturation). g is strictly
// increasing (g' = 1 - alpha f' >= 1), so a Newton step is kept whenever it
// lands inside the current bracket and bisection is used otherwise.
double WaitCostInverse::NumericValue(double alpha) const {
  const double saturation = SaturationFlow(line_);
  double lo = 0.0;
  double hi = saturation * (1.0 - 1e-12);
  auto g = [&](double v) { return v - alpha * Frequency(line_, v); };
  if (g(hi) <= 0.0) return hi;

  double v = std::min(alpha * Frequency(line_, 0.0), 0.5 * (lo + hi));
  for (int iter = 0; iter < 300; ++iter) {
    const double gv = g(v);
    if (gv == 0.0) return v;
    if (gv < 0.0) {
      lo = v;
    } else {
      hi = v;
    }
    double next = 0.5 * (lo + hi);
    if (v > 0.0) {
      const double slope = 1.0 - alpha * FrequencyDerivative(line_, v);
      const double newton = v - gv / slope;
      if (newton > lo && newton < hi) next = newton;
    }
    if (std::abs(next - v) <= 1e-15 * std::max(v, 1e-300) || hi - lo <= 0.0 ||
        next <= lo || next >= hi) {
      v = next;
      break;
    }
    v = next;
  }
  return v;
}

double WaitCostInverse::Slope(double alpha) const {
  if (alpha < 0.0 || std::isnan(alpha)) {
    throw Error(ErrorCode::kDomain, "waiting cost must be nonnegative");
  }
  if (mode_ == Mode::kClosedForm) {
    return QueueInverseSlope(std::get<QueueCapacity>(line_.frequency), alpha);
  }
  if (alpha == 0.0) return Frequency(line_, 0.0);
  const double flow = Value(alpha);
  return Frequency(line_, flow) /
         (1.0 - alpha * FrequencyDerivative(line_, flow));
}

double WaitCostInverse::ConcavityMargin(double alpha) const {
  if (!(alpha > 0.0)) {
    throw Error(ErrorCode::kDomain, "concavity margin needs alpha > 0");
  }
  const double flow = Value(alpha);
  return 2.0 * FrequencyDerivative(line_, flow) +
         alpha * FrequencySecondDerivative(line_, flow) * Slope(alpha);
}

double InverseWaitCost(const Line& line, double alpha) {
  return WaitCostInverse(line).Value(alpha);
}

double InverseWaitCostSlope(const Line& line, double alpha) {
  return WaitCostInverse(line).Slope(alpha);
}

double ConcavityMargin(const Line& line, double alpha) {
  return WaitCostInverse(line).ConcavityMargin(alpha);
}

}  // namespace commonlines
