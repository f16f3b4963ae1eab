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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "commonlines/error.h"
#include "oracles.h"

namespace commonlines {
namespace {

using testing::InstanceGenerator;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kUnsupported;
}

TEST(SaturationFlow, IsMuTimesCapacity) {
  EXPECT_DOUBLE_EQ(SaturationFlow(QueueCapacity{16.0, 20}), 320.0);
  EXPECT_DOUBLE_EQ(
      SaturationFlow(PowerSaturation{10.0, 20.0, 0.2, 1.0 / 999.0}), 200.0);
  EXPECT_DOUBLE_EQ(SaturationFlow(QueueCapacity{1.0, 1}), 1.0);
}

TEST(SolveUtilization, SimpleCases) {
  EXPECT_EQ(SolveUtilization(16.0, 20, 0.0), 0.0);
  EXPECT_NEAR(SolveUtilization(1.0, 1, 0.5), 0.5, 1e-14);
}

TEST(SolveUtilization, MatchesSeriesBisection) {
  const double rho = SolveUtilization(16.0, 20, 160.0);
  EXPECT_NEAR(rho, testing::RhoOracle(16.0, 20, 160.0), 1e-12);
  EXPECT_GT(rho, 0.9);
  EXPECT_LT(rho, 1.0);
}

TEST(SolveUtilization, RejectsSaturatedAndNegativeFlow) {
  EXPECT_EQ(CodeOf([] { SolveUtilization(16.0, 20, 320.0); }),
            ErrorCode::kSaturatedFlow);
  EXPECT_EQ(CodeOf([] { SolveUtilization(16.0, 20, 400.0); }),
            ErrorCode::kSaturatedFlow);
  EXPECT_EQ(CodeOf([] { SolveUtilization(16.0, 20, -1.0); }),
            ErrorCode::kDomain);
}

TEST(SolveUtilization, RoundTripsThePolynomial) {
  InstanceGenerator gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    const double mu = gen.Uniform(0.5, 30.0);
    const int k = gen.UniformInt(1, 60);
    const double v = gen.Uniform(0.0, 0.999999) * mu * k;
    const double rho = SolveUtilization(mu, k, v);
    ASSERT_GE(rho, 0.0);
    ASSERT_LT(rho, 1.0);
    double sum = 0.0;
    double term = 1.0;
    for (int j = 1; j <= k; ++j) {
      term *= rho;
      sum += term;
    }
    EXPECT_LE(std::abs(mu * sum - v), 1e-10 * std::max(1.0, v))
        << "mu=" << mu << " K=" << k << " v=" << v;
  }
}

TEST(Frequency, PowerValues) {
  const Line line{0.25, PowerSaturation{16.0, 20.0, 0.2, 1.0 / 999.0}};
  EXPECT_DOUBLE_EQ(Frequency(line, 0.0), 16.0);
  EXPECT_DOUBLE_EQ(Frequency(line, 320.0), 1.0 / 999.0);
  EXPECT_DOUBLE_EQ(Frequency(line, 500.0), 1.0 / 999.0);
  EXPECT_NEAR(Frequency(line, 100.0), 3.32085, 5e-5);
  EXPECT_NEAR(Frequency(line, 100.0),
              testing::PowerFrequencyOracle(16.0, 20.0, 0.2, 100.0), 1e-12);
}

TEST(Frequency, QueueMatchesDefinition) {
  const Line line{0.25, QueueCapacity{16.0, 20}};
  EXPECT_DOUBLE_EQ(Frequency(line, 0.0), 16.0);
  for (double v : {1e-6, 0.5, 10.0, 100.0, 200.0, 300.0, 319.0}) {
    EXPECT_NEAR(Frequency(line, v),
                testing::QueueFrequencyOracle(16.0, 20, v), 1e-9)
        << v;
  }
  EXPECT_LT(Frequency(line, 320.0 * (1.0 - 1e-9)), 1e-3);
}

TEST(Frequency, QueueHasNoFloorAtSaturation) {
  const Line line{0.25, QueueCapacity{16.0, 20}};
  EXPECT_EQ(CodeOf([&] { Frequency(line, 320.0); }),
            ErrorCode::kSaturatedFlow);
  EXPECT_EQ(CodeOf([&] { Frequency(line, -0.1); }), ErrorCode::kDomain);
}

TEST(Frequency, StrictlyDecreasingOnRandomPairs) {
  InstanceGenerator gen(12);
  for (int trial = 0; trial < 500; ++trial) {
    const Line line = gen.RandomLine();
    const double cap = SaturationFlow(line);
    double a = gen.Uniform(0.0, 0.999) * cap;
    double b = gen.Uniform(0.0, 0.999) * cap;
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    EXPECT_GT(Frequency(line, a), Frequency(line, b));
  }
}

TEST(Frequency, VanishesTowardSaturation) {
  for (double beta : {0.2, 0.5, 2.0}) {
    const Line line{0.0, PowerSaturation{16.0, 20.0, beta}};
    double previous = Frequency(line, 0.0);
    for (double delta : {1e-3, 1e-6}) {
      const double f = Frequency(line, 320.0 * (1.0 - delta));
      EXPECT_LT(f, previous);
      EXPECT_LT(f, 16.0 * (1.0 - std::pow(1.0 - delta, beta)) * 1.01);
      previous = f;
    }
  }
  const Line queue{0.0, QueueCapacity{16.0, 20}};
  EXPECT_LT(Frequency(queue, 320.0 * (1.0 - 1e-6)),
            Frequency(queue, 320.0 * (1.0 - 1e-3)));
}

TEST(FrequencyDerivative, PowerIsNegativeAndMatchesDifferences) {
  const Line line{0.25, PowerSaturation{16.0, 20.0, 0.2, 1.0 / 999.0}};
  for (double v : {1.0, 50.0, 100.0, 250.0, 319.0}) {
    EXPECT_LT(FrequencyDerivative(line, v), 0.0);
  }
  const double fd = testing::CentralDifference(
      [&](double v) { return Frequency(line, v); }, 100.0, 1e-4);
  EXPECT_NEAR(FrequencyDerivative(line, 100.0), fd,
              1e-5 * std::abs(fd));
}

TEST(FrequencyDerivative, QueueMatchesDifferences) {
  InstanceGenerator gen(13);
  for (int trial = 0; trial < 100; ++trial) {
    const double mu = gen.Uniform(2.0, 20.0);
    const int k = gen.UniformInt(2, 40);
    const Line line{0.0, QueueCapacity{mu, k}};
    const double v = gen.Uniform(0.02, 0.98) * mu * k;
    const double h = std::max(1e-6, 1e-6 * v);
    auto f = [&](double x) { return testing::FrequencyOracle(line, x); };
    const double d1 = testing::CentralDifference(f, v, h);
    EXPECT_NEAR(FrequencyDerivative(line, v), d1, 1e-4 * std::abs(d1) + 1e-7);
    const double d2 = testing::CentralDifference(
        [&](double x) { return FrequencyDerivative(line, x); }, v, h);
    EXPECT_NEAR(FrequencySecondDerivative(line, v), d2,
                1e-4 * std::abs(d2) + 1e-7)
        << "mu=" << mu << " K=" << k << " v=" << v;
  }
}

TEST(FrequencyDerivative, PowerSecondDerivativeSignFollowsBeta) {
  for (double beta : {0.2, 0.5, 2.0, 5.0}) {
    const Line line{0.0, PowerSaturation{16.0, 20.0, beta}};
    for (int j = 1; j <= 100; ++j) {
      const double v = 320.0 * j / 101.0;
      const double d2 = FrequencySecondDerivative(line, v);
      if (beta < 1.0) {
        EXPECT_GT(d2, 0.0) << beta << " " << v;
      } else {
        EXPECT_LT(d2, 0.0) << beta << " " << v;
      }
      const double fd = testing::CentralDifference(
          [&](double x) { return FrequencyDerivative(line, x); }, v, 1e-4);
      EXPECT_NEAR(d2, fd, 1e-4 * std::abs(fd) + 1e-9);
    }
  }
}

TEST(FrequencyDerivative, RejectsBoundaryFlows) {
  const Line q{0.0, QueueCapacity{16.0, 20}};
  const Line p{0.0, PowerSaturation{16.0, 20.0, 0.2}};
  for (const Line& line : {q, p}) {
    EXPECT_EQ(CodeOf([&] { FrequencyDerivative(line, 0.0); }),
              ErrorCode::kDomain);
    EXPECT_EQ(CodeOf([&] { FrequencyDerivative(line, 320.0); }),
              ErrorCode::kDomain);
    EXPECT_EQ(CodeOf([&] { FrequencySecondDerivative(line, -1.0); }),
              ErrorCode::kDomain);
  }
}

TEST(Validate, RejectsBadParameters) {
  EXPECT_EQ(CodeOf([] { Validate(QueueCapacity{0.0, 20}); }),
            ErrorCode::kInvalidModel);
  EXPECT_EQ(CodeOf([] { Validate(QueueCapacity{1.0, 0}); }),
            ErrorCode::kInvalidModel);
  EXPECT_EQ(CodeOf([] { Validate(PowerSaturation{1.0, 2.0, 0.0}); }),
            ErrorCode::kInvalidModel);
  EXPECT_EQ(CodeOf([] { Validate(PowerSaturation{1.0, -2.0, 1.0}); }),
            ErrorCode::kInvalidModel);
  EXPECT_NO_THROW(Validate(PowerSaturation{1.0, 2.5, 1.0}));
}

TEST(Network, SortsByTravelTimeStably) {
  const Network net({{0.5, QueueCapacity{10.0, 20}},
                     {0.25, QueueCapacity{16.0, 20}},
                     {0.5, QueueCapacity{3.0, 5}}});
  ASSERT_EQ(net.size(), 3u);
  EXPECT_EQ(net.line(0).travel_time, 0.25);
  EXPECT_EQ(net.input_index(0), 1u);
  EXPECT_EQ(net.input_index(1), 0u);
  EXPECT_EQ(net.input_index(2), 2u);
  EXPECT_DOUBLE_EQ(net.total_saturation(), 320.0 + 200.0 + 15.0);
  const std::vector<double> stored = {1.0, 2.0, 3.0};
  EXPECT_EQ(net.ToInputOrder(stored), (std::vector<double>{2.0, 1.0, 3.0}));
}

TEST(Network, RejectsEmptyAndBadTimes) {
  EXPECT_EQ(CodeOf([] { Network(std::vector<Line>{}); }),
            ErrorCode::kInvalidModel);
  EXPECT_EQ(CodeOf([] { Network({{-1.0, QueueCapacity{1.0, 1}}}); }),
            ErrorCode::kInvalidModel);
  EXPECT_EQ(CodeOf([] {
              Network({{std::nan(""), QueueCapacity{1.0, 1}}});
            }),
            ErrorCode::kInvalidModel);
}

}  // namespace
}  // namespace commonlines
