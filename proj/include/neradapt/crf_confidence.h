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

#ifndef NERADAPT_CRF_CONFIDENCE_H_
#define NERADAPT_CRF_CONFIDENCE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "neradapt/lattice.h"

namespace neradapt {

// Unnormalized log score of a tag path:
//   start[y_1] + sum_i emission[i][y_i] + sum_{i>1} transition[y_{i-1}][y_i]
//   + stop[y_T]
double SequenceScore(const ScoreLattice& lattice,
                     std::span<const std::size_t> tags);
double SequenceScore(const ScoreLattice& lattice,
                     std::span<const std::string> tags);

// log of the sum of exp(SequenceScore) over all paths, via the forward
// algorithm in log space.
double LogPartition(const ScoreLattice& lattice);

// Posterior probability of the whole tag path, in (0, 1].
double ConfidenceC1(const ScoreLattice& lattice,
                    std::span<const std::size_t> tags);
double ConfidenceC1(const ScoreLattice& lattice,
                    std::span<const std::string> tags);

enum class C2Mode {
  // Raw scores, as written: (emission + transition) over the sum of the same
  // terms across all tags at that position. Needs positive denominators.
  kLiteral,
  // Per-position softmax over the same terms.
  kExp,
};

std::string_view C2ModeName(C2Mode mode);
C2Mode ParseC2Mode(std::string_view name);

// The per-position normalized score of the chosen tag given the chosen
// previous tag. In literal mode a non-positive denominator raises DomainError
// carrying the 0-based position.
std::vector<double> PositionScores(const ScoreLattice& lattice,
                                   std::span<const std::size_t> tags,
                                   C2Mode mode = C2Mode::kLiteral);

// Minimum of PositionScores over the sentence.
double ConfidenceC2(const ScoreLattice& lattice,
                    std::span<const std::size_t> tags,
                    C2Mode mode = C2Mode::kLiteral);
double ConfidenceC2(const ScoreLattice& lattice,
                    std::span<const std::string> tags,
                    C2Mode mode = C2Mode::kLiteral);

struct Prediction {
  std::string sentence_ref;
  std::vector<std::size_t> tag_indices;
  std::vector<std::string> tags;
  double c1 = 0.0;
  // Empty when the literal c2 is undefined on this lattice.
  std::optional<double> c2;
};

// Highest-scoring path. Ties go to the lowest tag index, both in the
// backpointers and at the final position.
Prediction ViterbiDecode(const ScoreLattice& lattice,
                         C2Mode mode = C2Mode::kLiteral);

enum class Measure { kC1, kC2 };

std::string_view MeasureName(Measure measure);
Measure ParseMeasure(std::string_view name);

}  // namespace neradapt

#endif  // NERADAPT_CRF_CONFIDENCE_H_
