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

#include "neradapt/mlm_augment.h"

#include <algorithm>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "neradapt/errors.h"
#include "neradapt/levenshtein.h"
#include "neradapt/random.h"

namespace neradapt {

std::string_view StrategyName(MaskStrategy strategy) {
  switch (strategy) {
    case MaskStrategy::kEntity:
      return "entity";
    case MaskStrategy::kContext:
      return "context";
    case MaskStrategy::kRandomContext:
      return "random_context";
    case MaskStrategy::kMixed:
      return "mixed";
  }
  return "?";
}

MaskStrategy ParseStrategy(std::string_view name) {
  if (name == "entity") return MaskStrategy::kEntity;
  if (name == "context") return MaskStrategy::kContext;
  if (name == "random_context") return MaskStrategy::kRandomContext;
  if (name == "mixed") return MaskStrategy::kMixed;
  throw ValidationError("unknown mask strategy '" + std::string(name) +
                        "' (entity, context, random_context, mixed)");
}

std::string_view OrderName(GenerationOrder order) {
  return order == GenerationOrder::kIndependent ? "independent"
                                                : "conditional";
}

GenerationOrder ParseOrder(std::string_view name) {
  if (name == "independent") return GenerationOrder::kIndependent;
  if (name == "conditional") return GenerationOrder::kConditional;
  throw ValidationError("unknown generation order '" + std::string(name) +
                        "'");
}

std::string_view CriterionName(Criterion criterion) {
  return criterion == Criterion::kTopToken ? "top_token" : "joint";
}

Criterion ParseCriterion(std::string_view name) {
  if (name == "top_token") return Criterion::kTopToken;
  if (name == "joint") return Criterion::kJoint;
  throw ValidationError("unknown criterion '" + std::string(name) + "'");
}

void AugmentConfig::Validate() const {
  if (top_k < 1) throw ValidationError("top_k must be at least 1");
}

namespace {

std::string Join(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

bool UsableToken(std::string_view token) {
  return !token.empty() &&
         token.find_first_of(" \t\r\n") == std::string_view::npos &&
         token != kMaskToken;
}

std::vector<std::size_t> OutsidePositions(const Sentence& sentence) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    if (sentence.tokens[i].tag == kOutsideTag) out.push_back(i);
  }
  return out;
}

double MinProb(const std::vector<Replacement>& replacements) {
  double min = std::numeric_limits<double>::infinity();
  for (const Replacement& r : replacements) min = std::min(min, r.chosen.prob);
  return replacements.empty() ? 0.0 : min;
}

}  // namespace

std::optional<MaskPlan> PlanMasks(const Sentence& sentence, TagScheme scheme,
                                  MaskStrategy strategy, std::uint64_t seed) {
  Rng rng(seed);
  MaskPlan plan;
  plan.sentence_ref = sentence.source_id;
  plan.strategy = strategy;
  const std::size_t length = sentence.size();

  switch (strategy) {
    case MaskStrategy::kEntity: {
      std::vector<std::size_t> singles;
      for (const EntitySpan& span : ExtractSpans(sentence, scheme)) {
        if (span.length() == 1) singles.push_back(span.start);
      }
      if (singles.empty()) return std::nullopt;
      plan.positions.push_back(singles[rng.Index(singles.size())]);
      break;
    }
    case MaskStrategy::kContext: {
      auto is_outside = [&](std::size_t i) {
        return sentence.tokens[i].tag == kOutsideTag;
      };
      for (const EntitySpan& span : ExtractSpans(sentence, scheme)) {
        if (span.start > 0 && is_outside(span.start - 1)) {
          plan.positions.push_back(span.start - 1);
        }
        if (span.end + 1 < length && is_outside(span.end + 1)) {
          plan.positions.push_back(span.end + 1);
        }
      }
      std::sort(plan.positions.begin(), plan.positions.end());
      plan.positions.erase(
          std::unique(plan.positions.begin(), plan.positions.end()),
          plan.positions.end());
      if (plan.positions.empty()) return std::nullopt;
      break;
    }
    case MaskStrategy::kRandomContext: {
      const std::vector<std::size_t> outside = OutsidePositions(sentence);
      if (outside.empty()) return std::nullopt;
      const std::size_t count = rng.UniformInt(1, outside.size());
      for (std::size_t k : rng.SampleWithoutReplacement(outside.size(), count)) {
        plan.positions.push_back(outside[k]);
      }
      std::sort(plan.positions.begin(), plan.positions.end());
      break;
    }
    case MaskStrategy::kMixed: {
      if (length < 2) return std::nullopt;
      const std::size_t count = rng.UniformInt(2, length);
      plan.positions = rng.SampleWithoutReplacement(length, count);
      std::sort(plan.positions.begin(), plan.positions.end());
      break;
    }
  }
  return plan;
}

Sentence AugmentedSentence::Origin() const {
  Sentence origin = sentence;
  origin.source_id = origin_ref;
  for (const Replacement& r : replacements) {
    origin.tokens.at(r.position).text = r.original;
  }
  return origin;
}

Candidate ApplyCriterion(std::span<const Candidate> candidates,
                         const std::vector<std::string>& context,
                         std::size_t position, Criterion criterion) {
  if (candidates.empty()) {
    throw ValidationError("no candidates to choose from");
  }
  const std::string rendered = Join(context);
  auto score = [&](const Candidate& c) {
    if (criterion == Criterion::kTopToken) return c.prob;
    std::vector<std::string> changed = context;
    changed.at(position) = c.token;
    return c.prob * static_cast<double>(Levenshtein(rendered, Join(changed)));
  };
  std::size_t best = 0;
  double best_score = score(candidates[0]);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    const double s = score(c);
    const Candidate& b = candidates[best];
    const bool better =
        s > best_score ||
        (s == best_score &&
         (c.prob > b.prob || (c.prob == b.prob && c.token < b.token)));
    if (better) {
      best = i;
      best_score = s;
    }
  }
  return candidates[best];
}

std::optional<AugmentedSentence> Generate(const Sentence& sentence,
                                          const MaskPlan& plan,
                                          const AugmentConfig& config,
                                          MlmClient& client) {
  const std::vector<std::string> original = sentence.texts();
  std::vector<std::string> current = original;
  AugmentedSentence out;
  for (std::size_t position : plan.positions) {
    if (position >= original.size()) {
      throw ValidationError(sentence.source_id + ": mask position " +
                            std::to_string(position) + " outside sentence");
    }
    const std::vector<std::string>& context =
        config.order == GenerationOrder::kIndependent ? original : current;
    std::vector<Candidate> candidates;
    try {
      candidates = client.Predict(context, position);
    } catch (const ProtocolError& e) {
      throw ProtocolError(sentence.source_id + ": " + e.what());
    } catch (const TransportError& e) {
      throw TransportError(sentence.source_id + ": " + e.what());
    } catch (const BackendError& e) {
      throw BackendError(sentence.source_id + ": " + e.what());
    }
    std::erase_if(candidates, [&](const Candidate& c) {
      return c.token == original[position] || !UsableToken(c.token);
    });
    if (candidates.empty()) continue;
    const Candidate chosen =
        ApplyCriterion(candidates, context, position, config.criterion);
    current[position] = chosen.token;
    out.replacements.push_back({position, original[position], chosen});
  }
  if (out.replacements.empty()) return std::nullopt;

  out.sentence = sentence;
  out.sentence.source_id = sentence.source_id + "#aug";
  for (std::size_t i = 0; i < current.size(); ++i) {
    out.sentence.tokens[i].text = current[i];
  }
  out.origin_ref = sentence.source_id;
  out.min_token_prob = MinProb(out.replacements);
  return out;
}

std::vector<AugmentedSentence> AugmentCorpus(const Corpus& corpus,
                                             const AugmentConfig& config,
                                             MlmClient& client) {
  config.Validate();
  std::vector<AugmentedSentence> out;
  for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
    const Sentence& sentence = corpus.sentences[i];
    const auto plan =
        PlanMasks(sentence, corpus.scheme, config.strategy,
                  DeriveSeed(config.seed, "augment/plan", i));
    if (!plan) continue;
    if (auto augmented = Generate(sentence, *plan, config, client)) {
      out.push_back(std::move(*augmented));
    }
  }
  return out;
}

std::vector<AugmentedSentence> FilterByTokenProb(
    std::span<const AugmentedSentence> augmented, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ValidationError("token probability threshold must lie in [0, 1]");
  }
  std::vector<AugmentedSentence> out;
  for (const AugmentedSentence& a : augmented) {
    AugmentedSentence kept = a;
    kept.replacements.clear();
    for (const Replacement& r : a.replacements) {
      if (r.chosen.prob >= threshold) {
        kept.replacements.push_back(r);
      } else {
        kept.sentence.tokens.at(r.position).text = r.original;
      }
    }
    if (kept.replacements.empty()) continue;
    kept.min_token_prob = MinProb(kept.replacements);
    out.push_back(std::move(kept));
  }
  return out;
}

std::vector<AugmentedSentence> FilterByConfidence(
    std::span<const AugmentedSentence> augmented, TagScheme scheme,
    const std::map<std::string, ScoreLattice>& lattices, Measure measure,
    double threshold, C2Mode c2_mode) {
  std::vector<AugmentedSentence> out;
  for (const AugmentedSentence& a : augmented) {
    const auto it = lattices.find(a.sentence.source_id);
    if (it == lattices.end()) {
      throw ValidationError("no lattice for augmented sentence '" +
                            a.sentence.source_id + "'");
    }
    const ScoreLattice& lattice = it->second;
    const auto tags =
        ConvertTags(a.sentence.tags(), scheme, InferScheme(lattice.tag_set));
    const double confidence = measure == Measure::kC1
                                  ? ConfidenceC1(lattice, tags)
                                  : ConfidenceC2(lattice, tags, c2_mode);
    if (confidence >= threshold) out.push_back(a);
  }
  return out;
}

std::string AugmentReport::ToKeyValue() const {
  std::ostringstream out;
  out.precision(10);
  out << "original_sentences=" << original_sentences << '\n'
      << "augmented_sentences=" << augmented_sentences << '\n'
      << "delta_sentences_percent=" << delta_sentences_percent << '\n'
      << "mean_replaced_tokens=" << mean_replaced << '\n';
  return out.str();
}

AugmentReport BuildAugmentReport(
    std::size_t original_sentences,
    std::span<const AugmentedSentence> augmented) {
  AugmentReport report;
  report.original_sentences = original_sentences;
  report.augmented_sentences = augmented.size();
  if (original_sentences > 0) {
    report.delta_sentences_percent =
        100.0 * static_cast<double>(augmented.size()) /
        static_cast<double>(original_sentences);
  }
  if (!augmented.empty()) {
    std::size_t replaced = 0;
    for (const AugmentedSentence& a : augmented) {
      replaced += a.replacements.size();
    }
    report.mean_replaced =
        static_cast<double>(replaced) / static_cast<double>(augmented.size());
  }
  return report;
}

std::string FormatProvenanceRecord(const AugmentedSentence& augmented) {
  nlohmann::ordered_json record;
  record["ref"] = augmented.sentence.source_id;
  record["origin_ref"] = augmented.origin_ref;
  nlohmann::ordered_json replacements = nlohmann::ordered_json::array();
  for (const Replacement& r : augmented.replacements) {
    nlohmann::ordered_json item;
    item["position"] = r.position;
    item["original"] = r.original;
    item["token"] = r.chosen.token;
    item["prob"] = r.chosen.prob;
    replacements.push_back(std::move(item));
  }
  record["replacements"] = std::move(replacements);
  record["min_token_prob"] = augmented.min_token_prob;
  return record.dump();
}

std::vector<AugmentedSentence> AttachProvenance(
    const Corpus& augmented_corpus, std::span<const std::string> lines) {
  if (lines.size() != augmented_corpus.sentences.size()) {
    throw ValidationError("augmented corpus has " +
                          std::to_string(augmented_corpus.sentences.size()) +
                          " sentences but provenance has " +
                          std::to_string(lines.size()) + " records");
  }
  std::vector<AugmentedSentence> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    AugmentedSentence a;
    a.sentence = augmented_corpus.sentences[i];
    try {
      const auto record = nlohmann::json::parse(lines[i]);
      a.sentence.source_id = record.at("ref").get<std::string>();
      a.origin_ref = record.at("origin_ref").get<std::string>();
      for (const auto& item : record.at("replacements")) {
        Replacement r;
        r.position = item.at("position").get<std::size_t>();
        r.original = item.at("original").get<std::string>();
        r.chosen = {item.at("token").get<std::string>(),
                    item.at("prob").get<double>()};
        a.replacements.push_back(std::move(r));
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("provenance record " + std::to_string(i + 1) + ": " +
                       e.what());
    }
    for (const Replacement& r : a.replacements) {
      if (r.position >= a.sentence.size() ||
          a.sentence.tokens[r.position].text != r.chosen.token) {
        throw ValidationError("provenance record " + std::to_string(i + 1) +
                              " does not match sentence " +
                              augmented_corpus.sentences[i].source_id);
      }
    }
    if (a.replacements.empty()) {
      throw ValidationError("provenance record " + std::to_string(i + 1) +
                            " has no replacements");
    }
    a.min_token_prob = MinProb(a.replacements);
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace neradapt
