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

#include "neradapt/selftrain.h"

#include <cmath>
#include <map>

#include "json.hpp"
#include "neradapt/errors.h"
#include "neradapt/random.h"

namespace neradapt {

void SelectionSpec::Validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ValidationError("selection threshold must lie in [0, 1]");
  }
  if (!(target_ratio >= 0.0) || !std::isfinite(target_ratio)) {
    throw ValidationError("selection ratio must be a non-negative number");
  }
}

std::size_t SelectionSpec::TargetCount(std::size_t original_size) const {
  return static_cast<std::size_t>(
      std::llround(target_ratio * static_cast<double>(original_size)));
}

AnnotatedPool AnnotatePool(std::span<const Sentence> sentences,
                           std::span<const ScoreLattice> lattices,
                           const std::string& domain_tag, C2Mode c2_mode) {
  if (sentences.size() != lattices.size()) {
    throw ValidationError("pool has " + std::to_string(sentences.size()) +
                          " sentences but " + std::to_string(lattices.size()) +
                          " lattices");
  }
  AnnotatedPool pool;
  if (!lattices.empty()) pool.scheme = InferScheme(lattices.front().tag_set);
  pool.entries.reserve(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const ScoreLattice& lattice = lattices[i];
    if (lattice.length() != sentences[i].size()) {
      throw ValidationError(lattice.sentence_ref + ": lattice has " +
                            std::to_string(lattice.length()) +
                            " positions, sentence " +
                            sentences[i].source_id + " has " +
                            std::to_string(sentences[i].size()) + " tokens");
    }
    const Prediction prediction = ViterbiDecode(lattice, c2_mode);
    if (!prediction.c2) {
      throw ValidationError(lattice.sentence_ref +
                            ": c2 undefined (non-positive denominator); use "
                            "non-negative scores or the exp c2 mode");
    }
    const RepairResult repaired = RepairTags(prediction.tags, pool.scheme);
    PoolEntry entry;
    entry.sentence = sentences[i];
    entry.sentence.domain_tag = domain_tag;
    for (std::size_t t = 0; t < repaired.tags.size(); ++t) {
      entry.sentence.tokens[t].tag = repaired.tags[t];
    }
    entry.c1 = prediction.c1;
    entry.c2 = *prediction.c2;
    pool.entries.push_back(std::move(entry));
  }
  return pool;
}

AnnotatedPool FilterPool(const AnnotatedPool& pool, Measure measure,
                         double threshold) {
  AnnotatedPool out;
  out.scheme = pool.scheme;
  for (const PoolEntry& entry : pool.entries) {
    if (entry.confidence(measure) >= threshold) out.entries.push_back(entry);
  }
  return out;
}

std::vector<Sentence> SampleBalanced(const AnnotatedPool& pool, std::size_t k,
                                     std::uint64_t seed) {
  if (pool.entries.size() < k) {
    throw ValidationError("cannot sample " + std::to_string(k) +
                          " sentences from a pool of " +
                          std::to_string(pool.entries.size()) + " (short by " +
                          std::to_string(k - pool.entries.size()) + ")");
  }
  if (k == 0) return {};

  // Domains in order of first appearance.
  std::vector<std::vector<std::size_t>> domains;
  std::map<std::string, std::size_t> domain_index;
  for (std::size_t i = 0; i < pool.entries.size(); ++i) {
    const std::string& tag = pool.entries[i].sentence.domain_tag;
    auto [it, inserted] = domain_index.try_emplace(tag, domains.size());
    if (inserted) domains.emplace_back();
    domains[it->second].push_back(i);
  }

  Rng rng(seed);
  std::vector<std::size_t> order(domains.size());
  for (std::size_t d = 0; d < order.size(); ++d) order[d] = d;
  rng.Shuffle(order);

  const std::size_t count = domains.size();
  std::vector<std::size_t> quota(count, k / count);
  for (std::size_t r = 0; r < k % count; ++r) ++quota[order[r]];

  std::size_t deficit = 0;
  for (std::size_t d = 0; d < count; ++d) {
    if (quota[d] > domains[d].size()) {
      deficit += quota[d] - domains[d].size();
      quota[d] = domains[d].size();
    }
  }
  while (deficit > 0) {
    for (std::size_t d : order) {
      if (deficit == 0) break;
      if (quota[d] < domains[d].size()) {
        ++quota[d];
        --deficit;
      }
    }
  }

  std::vector<Sentence> selected;
  selected.reserve(k);
  for (std::size_t d : order) {
    std::vector<std::size_t>& members = domains[d];
    rng.Shuffle(members);
    for (std::size_t j = 0; j < quota[d]; ++j) {
      selected.push_back(pool.entries[members[j]].sentence);
    }
  }
  return selected;
}

Corpus MergeTraining(const Corpus& original,
                     std::span<const Sentence> selected,
                     TagScheme selected_scheme) {
  if (original.scheme != selected_scheme) {
    throw ValidationError("cannot merge " +
                          std::string(SchemeName(selected_scheme)) +
                          " sentences into a " +
                          std::string(SchemeName(original.scheme)) + " corpus");
  }
  Corpus merged = original;
  merged.sentences.insert(merged.sentences.end(), selected.begin(),
                          selected.end());
  return merged;
}

std::string FormatPoolRecord(const PoolEntry& entry) {
  nlohmann::ordered_json record;
  record["sentence_ref"] = entry.sentence.source_id;
  record["domain"] = entry.sentence.domain_tag;
  record["tokens"] = entry.sentence.texts();
  record["tags"] = entry.sentence.tags();
  record["c1"] = entry.c1;
  record["c2"] = entry.c2;
  return record.dump();
}

PoolEntry ParsePoolRecord(std::string_view line) {
  PoolEntry entry;
  try {
    const auto record = nlohmann::json::parse(line);
    entry.sentence.source_id = record.at("sentence_ref").get<std::string>();
    entry.sentence.domain_tag = record.value("domain", std::string());
    const auto tokens = record.at("tokens").get<std::vector<std::string>>();
    const auto tags = record.at("tags").get<std::vector<std::string>>();
    if (tokens.size() != tags.size() || tokens.empty()) {
      throw ValidationError(entry.sentence.source_id +
                            ": tokens and tags differ in length or are empty");
    }
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      entry.sentence.tokens.push_back({tokens[i], tags[i]});
    }
    entry.c1 = record.at("c1").get<double>();
    entry.c2 = record.at("c2").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad pool record: ") + e.what());
  }
  return entry;
}

}  // namespace neradapt
