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

#ifndef NERADAPT_CALIBRATION_H_
#define NERADAPT_CALIBRATION_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace neradapt {

struct ScoredExample {
  double confidence = 0.0;
  bool correct = false;
};

// Numerator of the confidence error rate: examples accepted (confidence >= t)
// although incorrect, plus examples rejected although correct.
std::size_t ConfidenceErrors(std::span<const ScoredExample> examples,
                             double threshold);

// ConfidenceErrors / number of examples. Throws ValidationError on empty
// input.
double Cer(std::span<const ScoredExample> examples, double threshold);

struct CalibrationCurve {
  std::string measure_name;
  std::vector<double> grid;
  std::vector<double> cer;

  // "threshold<TAB>cer" per line, for plotting.
  std::string ToTsv() const;
};

// The uniform grid {0, step, 2 step, ..., 1}. When 1/step is an integer n the
// points are computed as i/n so that e.g. 0.57 is represented exactly as the
// literal 0.57. Throws ValidationError unless 0 < step <= 0.5.
std::vector<double> ThresholdGrid(double step);

CalibrationCurve Sweep(std::span<const ScoredExample> examples,
                       double grid_step = 0.01,
                       const std::string& measure_name = "");

struct Thresholds {
  std::string measure_name;
  double t_hat = 0.0;
  double cer_at_t_hat = 0.0;
  std::optional<double> t_prime;
  std::optional<double> cer_at_t_prime;

  std::string ToKeyValue() const;
};

// t_hat: first grid point with minimal CER. t_prime: first grid point below
// t_hat whose CER is within `delta` of the minimum, if any.
Thresholds SelectThresholds(const CalibrationCurve& curve,
                            double delta = 0.01);

struct TokenJudgement {
  double confidence = 0.0;
  bool correct = false;
};

struct SentenceErrorSummary {
  double mean_confidence = 0.0;  // over the sentence's tokens
  std::size_t errors = 0;
};

struct ConfidenceErrorReport {
  double high = 0.6;
  double low = 0.4;
  std::vector<SentenceErrorSummary> sentences;
  double mean_confidence = 0.0;  // mean of per-sentence means
  double mean_errors = 0.0;      // errors per sentence

  std::string ToKeyValue() const;
  std::string SentencesTsv() const;
};

// A token counts as an error when it is correct with confidence < low, or
// incorrect with confidence > high. Throws ValidationError unless high > low.
ConfidenceErrorReport BuildConfidenceErrorReport(
    std::span<const std::vector<TokenJudgement>> sentences, double high = 0.6,
    double low = 0.4);

}  // namespace neradapt

#endif  // NERADAPT_CALIBRATION_H_
