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

#include "neradapt/crf_confidence.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "neradapt/errors.h"

namespace neradapt {
namespace {

void CheckPath(const ScoreLattice& lattice,
               std::span<const std::size_t> tags) {
  lattice.Validate();
  if (tags.size() != lattice.length()) {
    throw ValidationError(lattice.sentence_ref + ": tag sequence has " +
                          std::to_string(tags.size()) +
                          " entries, lattice has " +
                          std::to_string(lattice.length()) + " positions");
  }
  for (std::size_t tag : tags) {
    if (tag >= lattice.num_tags()) {
      throw ValidationError(lattice.sentence_ref + ": tag index " +
                            std::to_string(tag) + " out of range");
    }
  }
}

double LogSumExp(std::span<const double> values) {
  const double max = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - max);
  return max + std::log(sum);
}

double TransitionInto(const ScoreLattice& lattice,
                      std::span<const std::size_t> tags, std::size_t position,
                      std::size_t tag) {
  return position == 0 ? lattice.start_scores[tag]
                       : lattice.transition(tags[position - 1], tag);
}

}  // namespace

double SequenceScore(const ScoreLattice& lattice,
                     std::span<const std::size_t> tags) {
  CheckPath(lattice, tags);
  double score = lattice.start_scores[tags.front()];
  for (std::size_t i = 0; i < tags.size(); ++i) {
    score += lattice.emission(i, tags[i]);
    if (i > 0) score += lattice.transition(tags[i - 1], tags[i]);
  }
  return score + lattice.stop_scores[tags.back()];
}

double SequenceScore(const ScoreLattice& lattice,
                     std::span<const std::string> tags) {
  return SequenceScore(lattice, lattice.TagIndices(tags));
}

double LogPartition(const ScoreLattice& lattice) {
  lattice.Validate();
  const std::size_t n = lattice.num_tags();
  const std::size_t length = lattice.length();
  std::vector<double> alpha(n);
  for (std::size_t y = 0; y < n; ++y) {
    alpha[y] = lattice.start_scores[y] + lattice.emission(0, y);
  }
  std::vector<double> next(n);
  std::vector<double> terms(n);
  for (std::size_t i = 1; i < length; ++i) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t prev = 0; prev < n; ++prev) {
        terms[prev] = alpha[prev] + lattice.transition(prev, y);
      }
      next[y] = LogSumExp(terms) + lattice.emission(i, y);
    }
    alpha.swap(next);
  }
  for (std::size_t y = 0; y < n; ++y) alpha[y] += lattice.stop_scores[y];
  return LogSumExp(alpha);
}

double ConfidenceC1(const ScoreLattice& lattice,
                    std::span<const std::size_t> tags) {
  return std::exp(SequenceScore(lattice, tags) - LogPartition(lattice));
}

double ConfidenceC1(const ScoreLattice& lattice,
                    std::span<const std::string> tags) {
  return ConfidenceC1(lattice, lattice.TagIndices(tags));
}

std::string_view C2ModeName(C2Mode mode) {
  return mode == C2Mode::kLiteral ? "literal" : "exp";
}

C2Mode ParseC2Mode(std::string_view name) {
  if (name == "literal") return C2Mode::kLiteral;
  if (name == "exp") return C2Mode::kExp;
  throw ValidationError("unknown c2 mode '" + std::string(name) + "'");
}

std::vector<double> PositionScores(const ScoreLattice& lattice,
                                   std::span<const std::size_t> tags,
                                   C2Mode mode) {
  CheckPath(lattice, tags);
  const std::size_t n = lattice.num_tags();
  std::vector<double> ratios(tags.size());
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < tags.size(); ++i) {
    for (std::size_t y = 0; y < n; ++y) {
      terms[y] = lattice.emission(i, y) + TransitionInto(lattice, tags, i, y);
    }
    const double numerator = terms[tags[i]];
    if (mode == C2Mode::kExp) {
      ratios[i] = std::exp(numerator - LogSumExp(terms));
      continue;
    }
    double denominator = 0.0;
    for (double t : terms) denominator += t;
    if (!(denominator > 0.0)) {
      throw DomainError(lattice.sentence_ref +
                            ": non-positive c2 denominator at position " +
                            std::to_string(i) +
                            " (literal c2 needs non-negative scores)",
                        i);
    }
    ratios[i] = numerator / denominator;
  }
  return ratios;
}

double ConfidenceC2(const ScoreLattice& lattice,
                    std::span<const std::size_t> tags, C2Mode mode) {
  const std::vector<double> ratios = PositionScores(lattice, tags, mode);
  return *std::min_element(ratios.begin(), ratios.end());
}

double ConfidenceC2(const ScoreLattice& lattice,
                    std::span<const std::string> tags, C2Mode mode) {
  return ConfidenceC2(lattice, lattice.TagIndices(tags), mode);
}

Prediction ViterbiDecode(const ScoreLattice& lattice, C2Mode mode) {
  lattice.Validate();
  const std::size_t n = lattice.num_tags();
  const std::size_t length = lattice.length();

  std::vector<double> best(n);
  for (std::size_t y = 0; y < n; ++y) {
    best[y] = lattice.start_scores[y] + lattice.emission(0, y);
  }
  std::vector<std::size_t> backpointers(length * n, 0);
  std::vector<double> next(n);
  for (std::size_t i = 1; i < length; ++i) {
    for (std::size_t y = 0; y < n; ++y) {
      double top = -std::numeric_limits<double>::infinity();
      std::size_t arg = 0;
      for (std::size_t prev = 0; prev < n; ++prev) {
        const double s = best[prev] + lattice.transition(prev, y);
        if (s > top) {
          top = s;
          arg = prev;
        }
      }
      next[y] = top + lattice.emission(i, y);
      backpointers[i * n + y] = arg;
    }
    best.swap(next);
  }
  double top = -std::numeric_limits<double>::infinity();
  std::size_t last = 0;
  for (std::size_t y = 0; y < n; ++y) {
    const double s = best[y] + lattice.stop_scores[y];
    if (s > top) {
      top = s;
      last = y;
    }
  }

  Prediction prediction;
  prediction.sentence_ref = lattice.sentence_ref;
  prediction.tag_indices.resize(length);
  prediction.tag_indices[length - 1] = last;
  for (std::size_t i = length - 1; i > 0; --i) {
    prediction.tag_indices[i - 1] =
        backpointers[i * n + prediction.tag_indices[i]];
  }
  for (std::size_t tag : prediction.tag_indices) {
    prediction.tags.push_back(lattice.tag_set[tag]);
  }
  prediction.c1 = ConfidenceC1(lattice, prediction.tag_indices);
  try {
    prediction.c2 = ConfidenceC2(lattice, prediction.tag_indices, mode);
  } catch (const DomainError&) {
    prediction.c2.reset();
  }
  return prediction;
}

std::string_view MeasureName(Measure measure) {
  return measure == Measure::kC1 ? "c1" : "c2";
}

Measure ParseMeasure(std::string_view name) {
  if (name == "c1") return Measure::kC1;
  if (name == "c2") return Measure::kC2;
  throw ValidationError("unknown confidence measure '" + std::string(name) +
                        "' (expected c1 or c2)");
}

}  // namespace neradapt
