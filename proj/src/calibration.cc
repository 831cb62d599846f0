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

#include <cmath>
#include <sstream>

#include "neradapt/errors.h"

namespace neradapt {
namespace {

// Slack for comparing CER values that went through a division.
constexpr double kCerSlack = 1e-12;

std::string FormatNumber(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

}  // namespace

std::size_t ConfidenceErrors(std::span<const ScoredExample> examples,
                             double threshold) {
  std::size_t errors = 0;
  for (const ScoredExample& e : examples) {
    const bool accepted = e.confidence >= threshold;
    if (accepted != e.correct) ++errors;
  }
  return errors;
}

double Cer(std::span<const ScoredExample> examples, double threshold) {
  if (examples.empty()) {
    throw ValidationError("confidence error rate of an empty example set");
  }
  return static_cast<double>(ConfidenceErrors(examples, threshold)) /
         static_cast<double>(examples.size());
}

std::string CalibrationCurve::ToTsv() const {
  std::string out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out += FormatNumber(grid[i]) + "\t" + FormatNumber(cer[i]) + "\n";
  }
  return out;
}

std::vector<double> ThresholdGrid(double step) {
  if (!(step > 0.0 && step <= 0.5)) {
    throw ValidationError("grid step must lie in (0, 0.5]");
  }
  std::vector<double> grid;
  const double inverse = 1.0 / step;
  const double rounded = std::round(inverse);
  if (std::abs(rounded * step - 1.0) < 1e-9) {
    const auto n = static_cast<std::size_t>(rounded);
    for (std::size_t i = 0; i <= n; ++i) {
      grid.push_back(static_cast<double>(i) / static_cast<double>(n));
    }
    return grid;
  }
  for (std::size_t i = 0;; ++i) {
    const double t = static_cast<double>(i) * step;
    if (t > 1.0) break;
    grid.push_back(t);
  }
  if (grid.back() < 1.0) grid.push_back(1.0);
  return grid;
}

CalibrationCurve Sweep(std::span<const ScoredExample> examples,
                       double grid_step, const std::string& measure_name) {
  if (examples.empty()) {
    throw ValidationError("cannot sweep an empty example set");
  }
  CalibrationCurve curve;
  curve.measure_name = measure_name;
  curve.grid = ThresholdGrid(grid_step);
  curve.cer.reserve(curve.grid.size());
  for (double t : curve.grid) curve.cer.push_back(Cer(examples, t));
  return curve;
}

std::string Thresholds::ToKeyValue() const {
  std::string out = "measure=" + measure_name + "\n";
  out += "t_hat=" + FormatNumber(t_hat) + "\n";
  out += "cer_at_t_hat=" + FormatNumber(cer_at_t_hat) + "\n";
  if (t_prime) {
    out += "t_prime=" + FormatNumber(*t_prime) + "\n";
    out += "cer_at_t_prime=" + FormatNumber(*cer_at_t_prime) + "\n";
  }
  return out;
}

Thresholds SelectThresholds(const CalibrationCurve& curve, double delta) {
  if (curve.grid.empty() || curve.grid.size() != curve.cer.size()) {
    throw ValidationError("calibration curve is empty or misaligned");
  }
  Thresholds result;
  result.measure_name = curve.measure_name;
  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.grid.size(); ++i) {
    if (curve.cer[i] < curve.cer[best]) best = i;
  }
  result.t_hat = curve.grid[best];
  result.cer_at_t_hat = curve.cer[best];
  for (std::size_t i = 0; i < best; ++i) {
    if (curve.cer[i] <= curve.cer[best] + delta + kCerSlack) {
      result.t_prime = curve.grid[i];
      result.cer_at_t_prime = curve.cer[i];
      break;
    }
  }
  return result;
}

std::string ConfidenceErrorReport::ToKeyValue() const {
  std::string out;
  out += "high=" + FormatNumber(high) + "\n";
  out += "low=" + FormatNumber(low) + "\n";
  out += "sentences=" + std::to_string(sentences.size()) + "\n";
  out += "mean_confidence=" + FormatNumber(mean_confidence) + "\n";
  out += "mean_errors_per_sentence=" + FormatNumber(mean_errors) + "\n";
  return out;
}

std::string ConfidenceErrorReport::SentencesTsv() const {
  std::string out = "sentence\tmean_confidence\terrors\n";
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    out += std::to_string(i) + "\t" +
           FormatNumber(sentences[i].mean_confidence) + "\t" +
           std::to_string(sentences[i].errors) + "\n";
  }
  return out;
}

ConfidenceErrorReport BuildConfidenceErrorReport(
    std::span<const std::vector<TokenJudgement>> sentences, double high,
    double low) {
  if (!(high > low)) {
    throw ValidationError("high confidence bound must exceed the low bound");
  }
  ConfidenceErrorReport report;
  report.high = high;
  report.low = low;
  double confidence_sum = 0.0;
  std::size_t error_sum = 0;
  for (const auto& tokens : sentences) {
    SentenceErrorSummary summary;
    double sum = 0.0;
    for (const TokenJudgement& token : tokens) {
      sum += token.confidence;
      if ((token.correct && token.confidence < low) ||
          (!token.correct && token.confidence > high)) {
        ++summary.errors;
      }
    }
    summary.mean_confidence =
        tokens.empty() ? 0.0 : sum / static_cast<double>(tokens.size());
    confidence_sum += summary.mean_confidence;
    error_sum += summary.errors;
    report.sentences.push_back(summary);
  }
  if (!sentences.empty()) {
    const auto count = static_cast<double>(sentences.size());
    report.mean_confidence = confidence_sum / count;
    report.mean_errors = static_cast<double>(error_sum) / count;
  }
  return report;
}

}  // namespace neradapt
