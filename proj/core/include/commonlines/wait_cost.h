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

#ifndef COMMONLINES_WAIT_COST_H_
#define COMMONLINES_WAIT_COST_H_

#include "commonlines/model.h"

namespace commonlines {

// Social waiting cost v / f(v) of a line, with the v -> 0 limit of 0.
double SocialWaitingCost(const Line& line, double flow);

// Inverse w(alpha) of the social waiting cost v -> v / f(v), mapping
// [0, inf) onto [0, saturation). The queue family has a closed form; any
// family can be inverted numerically on the un-floored frequency.
class WaitCostInverse {
 public:
  enum class Mode { kClosedForm, kNumericInversion };

  // Picks the closed form when the family has one.
  explicit WaitCostInverse(Line line);
  WaitCostInverse(Line line, Mode mode);

  Mode mode() const { return mode_; }
  const Line& line() const { return line_; }

  // w(alpha). kDomain for alpha < 0.
  double Value(double alpha) const;

  // w'(alpha) = f(w) / (1 - alpha f'(w)); equals f(0) at alpha = 0.
  double Slope(double alpha) const;

  // 2 f'(w(alpha)) + alpha f''(w(alpha)) w'(alpha). Negative exactly where w
  // is locally strictly concave. kDomain for alpha <= 0.
  double ConcavityMargin(double alpha) const;

 private:
  double NumericValue(double alpha) const;

  Line line_;
  Mode mode_;
};

// Convenience wrappers using the default mode.
double InverseWaitCost(const Line& line, double alpha);
double InverseWaitCostSlope(const Line& line, double alpha);
double ConcavityMargin(const Line& line, double alpha);

}  // namespace commonlines

#endif  // COMMONLINES_WAIT_COST_H_
