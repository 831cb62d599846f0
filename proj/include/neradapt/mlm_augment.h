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

#ifndef NERADAPT_MLM_AUGMENT_H_
#define NERADAPT_MLM_AUGMENT_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "neradapt/corpus.h"
#include "neradapt/crf_confidence.h"
#include "neradapt/mlm_bridge.h"

namespace neradapt {

enum class MaskStrategy {
  kEntity,         // one length-one entity span
  kContext,        // O tokens directly before and after entity spans
  kRandomContext,  // a random subset of all O tokens
  kMixed,          // between two and all tokens, regardless of tag
};

enum class GenerationOrder {
  kIndependent,  // every mask is predicted against the original sentence
  kConditional,  // every mask sees the replacements chosen before it
};

enum class Criterion {
  kTopToken,  // highest probability
  kJoint,     // probability times character edit distance
};

std::string_view StrategyName(MaskStrategy strategy);
MaskStrategy ParseStrategy(std::string_view name);
std::string_view OrderName(GenerationOrder order);
GenerationOrder ParseOrder(std::string_view name);
std::string_view CriterionName(Criterion criterion);
Criterion ParseCriterion(std::string_view name);

struct MaskPlan {
  std::string sentence_ref;
  std::vector<std::size_t> positions;  // strictly increasing
  MaskStrategy strategy = MaskStrategy::kEntity;
};

// Chooses the positions to mask, or nullopt when the strategy does not apply
// to the sentence (no length-one entity, no O context, fewer than two
// tokens). Deterministic in `seed`.
std::optional<MaskPlan> PlanMasks(const Sentence& sentence, TagScheme scheme,
                                  MaskStrategy strategy, std::uint64_t seed);

struct AugmentConfig {
  MaskStrategy strategy = MaskStrategy::kEntity;
  GenerationOrder order = GenerationOrder::kIndependent;
  Criterion criterion = Criterion::kTopToken;
  std::size_t top_k = 5;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct Replacement {
  std::size_t position = 0;
  std::string original;
  Candidate chosen;
};

// A synthetic sentence: the origin's tags with some tokens replaced.
struct AugmentedSentence {
  Sentence sentence;  // source_id is this sentence's own reference
  std::string origin_ref;
  std::vector<Replacement> replacements;  // sorted by position
  double min_token_prob = 0.0;

  // The origin's tokens, recovered by undoing every replacement.
  Sentence Origin() const;
};

// Picks among non-empty `candidates`. `context` is the token sequence the
// query was made on (unmasked); the joint criterion scores
//   prob * Levenshtein(join(context), join(context with candidate at position))
// over space-joined tokens. Ties go to the higher probability, then to the
// lexicographically smaller token. Throws ValidationError when empty.
Candidate ApplyCriterion(std::span<const Candidate> candidates,
                         const std::vector<std::string>& context,
                         std::size_t position, Criterion criterion);

// Runs the plan against the backend, one single-mask query per position, left
// to right. Candidates equal to the original token are never chosen; a
// position with no other candidate keeps its token. Returns nullopt if no
// position changed.
std::optional<AugmentedSentence> Generate(const Sentence& sentence,
                                          const MaskPlan& plan,
                                          const AugmentConfig& config,
                                          MlmClient& client);

// Plans and generates for every sentence of the corpus, in order. Sentence i
// draws its plan from the substream (config.seed, "augment/plan", i).
std::vector<AugmentedSentence> AugmentCorpus(const Corpus& corpus,
                                             const AugmentConfig& config,
                                             MlmClient& client);

// Reverts replacements with probability below `threshold` and drops the
// sentences left without any replacement.
std::vector<AugmentedSentence> FilterByTokenProb(
    std::span<const AugmentedSentence> augmented, double threshold = 0.5);

// Keeps the sentences whose copied tag sequence scores at least `threshold`
// under `measure` on the lattice with the sentence's reference. Tags are
// converted into the lattice's scheme first. Throws ValidationError when a
// lattice is missing.
std::vector<AugmentedSentence> FilterByConfidence(
    std::span<const AugmentedSentence> augmented, TagScheme scheme,
    const std::map<std::string, ScoreLattice>& lattices, Measure measure,
    double threshold, C2Mode c2_mode = C2Mode::kLiteral);

struct AugmentReport {
  std::size_t original_sentences = 0;
  std::size_t augmented_sentences = 0;
  double delta_sentences_percent = 0.0;
  double mean_replaced = 0.0;

  std::string ToKeyValue() const;
};

AugmentReport BuildAugmentReport(std::size_t original_sentences,
                                 std::span<const AugmentedSentence> augmented);

// Sidecar provenance, one JSON object per augmented sentence:
//   {"ref", "origin_ref", "replacements": [{"position", "original", "token",
//    "prob"}], "min_token_prob"}
std::string FormatProvenanceRecord(const AugmentedSentence& augmented);

// Pairs each sentence of an augmented corpus with its provenance line. Throws
// ValidationError when counts differ or a replaced token does not match.
std::vector<AugmentedSentence> AttachProvenance(
    const Corpus& augmented_corpus, std::span<const std::string> lines);

}  // namespace neradapt

#endif  // NERADAPT_MLM_AUGMENT_H_
