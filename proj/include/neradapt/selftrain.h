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

#ifndef NERADAPT_SELFTRAIN_H_
#define NERADAPT_SELFTRAIN_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "neradapt/corpus.h"
#include "neradapt/crf_confidence.h"

namespace neradapt {

// An automatically annotated sentence. The sentence's domain_tag names the
// source it was drawn from.
struct PoolEntry {
  Sentence sentence;
  double c1 = 0.0;
  double c2 = 0.0;

  double confidence(Measure measure) const {
    return measure == Measure::kC1 ? c1 : c2;
  }
};

struct AnnotatedPool {
  TagScheme scheme = TagScheme::kIobes;
  std::vector<PoolEntry> entries;
};

struct SelectionSpec {
  Measure measure = Measure::kC1;
  double threshold = 0.0;
  double target_ratio = 1.0;
  std::uint64_t seed = 0;

  void Validate() const;
  // round(target_ratio * original_size)
  std::size_t TargetCount(std::size_t original_size) const;
};

// Builds pool entries by decoding each lattice; the i-th lattice labels the
// i-th sentence. Decoded paths that break the scheme's transition rules are
// repaired. Throws ValidationError on count or length mismatches, or when c2
// is undefined on a lattice.
AnnotatedPool AnnotatePool(std::span<const Sentence> sentences,
                           std::span<const ScoreLattice> lattices,
                           const std::string& domain_tag,
                           C2Mode c2_mode = C2Mode::kLiteral);

// Entries whose chosen measure is >= threshold, in their original order.
AnnotatedPool FilterPool(const AnnotatedPool& pool, Measure measure,
                         double threshold);

// Draws k sentences without replacement, spread as evenly as possible over
// the pool's domains. Throws ValidationError if the pool has fewer than k
// entries.
std::vector<Sentence> SampleBalanced(const AnnotatedPool& pool, std::size_t k,
                                     std::uint64_t seed);

// `original` followed by `selected`. Throws ValidationError if the schemes
// differ.
Corpus MergeTraining(const Corpus& original,
                     std::span<const Sentence> selected,
                     TagScheme selected_scheme);

// Pool entry as one JSON line: {"sentence_ref", "domain", "tokens", "tags",
// "c1", "c2"}.
std::string FormatPoolRecord(const PoolEntry& entry);
PoolEntry ParsePoolRecord(std::string_view line);

}  // namespace neradapt

#endif  // NERADAPT_SELFTRAIN_H_
