// Copyright 2026 The neradapt Authors
//
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

#include "neradapt/calibration.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "neradapt/errors.h"

namespace neradapt {
namespace {

std::vector<ScoredExample> NinetyTen() {
  std::vector<ScoredExample> v;
  for (int i = 0; i < 90; ++i) v.push_back({0.05 + 0.01 * (i % 90), true});
  for (int i = 0; i < 10; ++i) v.push_back({0.2 + 0.05 * i, false});
  return v;
}

// Builds a curve directly so threshold selection can be checked in isolation.
CalibrationCurve Curve(std::vector<double> cer) {
  CalibrationCurve c;
  const std::size_t n = cer.size() - 1;
  for (std::size_t i = 0; i <= n; ++i) {
    c.grid.push_back(static_cast<double>(i) / n);
  }
  c.cer = std::move(cer);
  return c;
}

TEST(Cer, Endpoints) {
  const auto v = NinetyTen();
  EXPECT_DOUBLE_EQ(Cer(v, 0.0), 0.10);
  EXPECT_DOUBLE_EQ(Cer(v, 1.0 + 1e-9), 0.90);
}

TEST(Cer, TwoPointSet) {
  const std::vector<ScoredExample> v{{0.9, true}, {0.3, false}};
  EXPECT_EQ(Cer(v, 0.5), 0.0);
  EXPECT_EQ(Cer(v, 0.3), 0.5);
  EXPECT_EQ(Cer(v, 0.95), 0.5);
}

TEST(Cer, EmptyInputRejected) {
  EXPECT_THROW(Cer(std::vector<ScoredExample>{}, 0.5), ValidationError);
}

TEST(Cer, EndpointsPartitionAnySet) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ScoredExample> v(1 + trial);
    for (auto& e : v) e = {u(gen), u(gen) < 0.7};
    EXPECT_EQ(Cer(v, 0.0) + Cer(v, 1.0 + 1e-9), 1.0);
  }
}

TEST(Cer, PermutationInvariant) {
  auto v = NinetyTen();
  const double before = Cer(v, 0.4);
  std::mt19937_64 gen(1);
  std::shuffle(v.begin(), v.end(), gen);
  EXPECT_EQ(Cer(v, 0.4), before);
}

TEST(Sweep, AllCorrectIsNondecreasing) {
  std::vector<ScoredExample> v;
  for (double c : {0.1, 0.35, 0.35, 0.8, 0.99}) v.push_back({c, true});
  const CalibrationCurve curve = Sweep(v, 0.01);
  ASSERT_EQ(curve.grid.size(), 101u);
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    const double t = curve.grid[i];
    const double below = std::count_if(v.begin(), v.end(), [&](auto& e) {
      return e.confidence < t;
    });
    EXPECT_DOUBLE_EQ(curve.cer[i], below / v.size());
    if (i > 0) EXPECT_GE(curve.cer[i], curve.cer[i - 1]);
  }
}

TEST(Sweep, SingleExampleBreakpoint) {
  const CalibrationCurve curve =
      Sweep(std::vector<ScoredExample>{{0.5, true}}, 0.01);
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    EXPECT_EQ(curve.cer[i], curve.grid[i] <= 0.5 ? 0.0 : 1.0)
        << "t=" << curve.grid[i];
  }
}

TEST(Sweep, TwoPointBreakpoints) {
  const std::vector<ScoredExample> v{{0.9, true}, {0.3, false}};
  const CalibrationCurve curve = Sweep(v, 0.01);
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    const double t = curve.grid[i];
    const double expected = t <= 0.3 ? 0.5 : (t <= 0.9 ? 0.0 : 0.5);
    EXPECT_EQ(curve.cer[i], expected) << "t=" << t;
  }
}

TEST(Sweep, GridStepValidation) {
  EXPECT_THROW(ThresholdGrid(0.0), ValidationError);
  EXPECT_THROW(ThresholdGrid(0.7), ValidationError);
  const auto grid = ThresholdGrid(0.25);
  EXPECT_EQ(grid, (std::vector<double>{0, 0.25, 0.5, 0.75, 1.0}));
}

TEST(SelectThresholds, MinimumAndRelaxedPoint) {
  // U-shaped with a shelf inside delta of the minimum.
  std::vector<double> cer(101);
  for (int i = 0; i <= 100; ++i) cer[i] = std::abs(i - 57) / 100.0 + 0.2;
  for (int i = 42; i < 57; ++i) cer[i] = std::min(cer[i], 0.205);
  const Thresholds t = SelectThresholds(Curve(cer), 0.01);
  EXPECT_DOUBLE_EQ(t.t_hat, 0.57);
  EXPECT_DOUBLE_EQ(t.cer_at_t_hat, 0.2);
  ASSERT_TRUE(t.t_prime);
  EXPECT_DOUBLE_EQ(*t.t_prime, 0.42);
}

TEST(SelectThresholds, TiesGoToSmallestThreshold) {
  const Thresholds t = SelectThresholds(Curve({0.5, 0.2, 0.3, 0.2, 0.4}), 0.0);
  EXPECT_DOUBLE_EQ(t.t_hat, 0.25);
  EXPECT_FALSE(t.t_prime);
}

TEST(SelectThresholds, StrictUShapeZeroDeltaHasNoRelaxedPoint) {
  const Thresholds t = SelectThresholds(Curve({0.5, 0.3, 0.1, 0.3, 0.5}), 0.0);
  EXPECT_DOUBLE_EQ(t.t_hat, 0.5);
  EXPECT_FALSE(t.t_prime);
}

TEST(ConfidenceErrorReport, Examples) {
  const std::vector<std::vector<TokenJudgement>> all_good{
      {{0.9, true}, {0.9, true}}};
  EXPECT_EQ(BuildConfidenceErrorReport(all_good).mean_errors, 0.0);

  const std::vector<std::vector<TokenJudgement>> one_bad{
      {{0.9, true}, {0.7, false}}, {{0.9, true}}};
  const auto r = BuildConfidenceErrorReport(one_bad);
  EXPECT_EQ(r.sentences[0].errors, 1u);
  EXPECT_EQ(r.sentences[1].errors, 0u);
  EXPECT_DOUBLE_EQ(r.mean_errors, 0.5);
}

TEST(ConfidenceErrorReport, HandCount) {
  // correct & < 0.4 -> error; incorrect & > 0.6 -> error; the rest are not.
  const std::vector<std::vector<TokenJudgement>> s{
      {{0.3, true}, {0.5, true}, {0.65, false}},
      {{0.5, false}, {0.4, true}, {0.6, false}, {0.1, false}},
      {{0.95, true}, {0.2, true}, {0.99, false}}};
  const auto r = BuildConfidenceErrorReport(s, 0.6, 0.4);
  EXPECT_EQ(r.sentences[0].errors, 2u);
  EXPECT_EQ(r.sentences[1].errors, 0u);
  EXPECT_EQ(r.sentences[2].errors, 2u);
  EXPECT_DOUBLE_EQ(r.mean_errors, 4.0 / 3);
  EXPECT_DOUBLE_EQ(r.sentences[0].mean_confidence, (0.3 + 0.5 + 0.65) / 3);
  EXPECT_THROW(BuildConfidenceErrorReport(s, 0.4, 0.6), ValidationError);
}

}  // namespace
}  // namespace neradapt
