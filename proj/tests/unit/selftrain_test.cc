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

#include <gtest/gtest.h>

#include <map>

#include "neradapt/errors.h"

namespace neradapt {
namespace {

Sentence Make(const std::string& word, const std::string& domain = "") {
  Sentence s;
  s.tokens = {{word, "O"}};
  s.source_id = word;
  s.domain_tag = domain;
  return s;
}

AnnotatedPool Pool(std::vector<double> c1s, const std::string& domain = "d") {
  AnnotatedPool pool;
  for (std::size_t i = 0; i < c1s.size(); ++i) {
    pool.entries.push_back(
        {Make(domain + std::to_string(i), domain), c1s[i], 1.0 - c1s[i]});
  }
  return pool;
}

TEST(FilterPool, Examples) {
  const AnnotatedPool pool = Pool({0.3, 0.5, 0.9});
  EXPECT_EQ(FilterPool(pool, Measure::kC1, 0.0).entries.size(), 3u);
  EXPECT_TRUE(FilterPool(pool, Measure::kC1, 1.01).entries.empty());
  const auto kept = FilterPool(pool, Measure::kC1, 0.5);
  ASSERT_EQ(kept.entries.size(), 2u);
  EXPECT_EQ(kept.entries[0].c1, 0.5);
  EXPECT_EQ(kept.entries[1].c1, 0.9);
  EXPECT_EQ(FilterPool(pool, Measure::kC2, 0.5).entries.size(), 2u);
}

TEST(SampleBalanced, Examples) {
  const AnnotatedPool pool = Pool({0.1, 0.2, 0.3, 0.4});
  EXPECT_TRUE(SampleBalanced(pool, 0, 1).empty());
  const auto all = SampleBalanced(pool, 4, 1);
  EXPECT_EQ(all.size(), 4u);
  std::set<std::string> ids;
  for (const auto& s : all) ids.insert(s.source_id);
  EXPECT_EQ(ids.size(), 4u);
  EXPECT_THROW(SampleBalanced(pool, 5, 1), ValidationError);
}

TEST(SampleBalanced, EqualDomainsSplitEvenly) {
  AnnotatedPool pool = Pool(std::vector<double>(10, 0.5), "news");
  const AnnotatedPool other = Pool(std::vector<double>(10, 0.5), "forum");
  pool.entries.insert(pool.entries.end(), other.entries.begin(),
                      other.entries.end());
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::map<std::string, int> per_domain;
    for (const auto& s : SampleBalanced(pool, 10, seed)) ++per_domain[s.domain_tag];
    EXPECT_EQ(per_domain["news"], 5);
    EXPECT_EQ(per_domain["forum"], 5);
  }
}

TEST(SampleBalanced, ShortDomainDeficitRedistributed) {
  AnnotatedPool pool = Pool({0.5}, "tiny");
  const AnnotatedPool big = Pool(std::vector<double>(10, 0.5), "big");
  pool.entries.insert(pool.entries.end(), big.entries.begin(), big.entries.end());
  std::map<std::string, int> per_domain;
  for (const auto& s : SampleBalanced(pool, 6, 3)) ++per_domain[s.domain_tag];
  EXPECT_EQ(per_domain["tiny"], 1);
  EXPECT_EQ(per_domain["big"], 5);
}

TEST(SampleBalanced, Deterministic) {
  const AnnotatedPool pool = Pool(std::vector<double>(30, 0.5));
  const auto a = SampleBalanced(pool, 12, 77);
  const auto b = SampleBalanced(pool, 12, 77);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].source_id, b[i].source_id);
  const auto c = SampleBalanced(pool, 12, 78);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs |= a[i].source_id != c[i].source_id;
  EXPECT_TRUE(differs);
}

TEST(SelectionSpec, TargetCountAndValidation) {
  SelectionSpec spec;
  spec.target_ratio = 1.0;
  EXPECT_EQ(spec.TargetCount(3394), 3394u);
  spec.target_ratio = 0.0;
  EXPECT_EQ(spec.TargetCount(3394), 0u);
  spec.target_ratio = -1.0;
  EXPECT_THROW(spec.Validate(), ValidationError);
}

TEST(MergeTraining, Examples) {
  Corpus original;
  original.scheme = TagScheme::kBio;
  for (int i = 0; i < 3; ++i) original.sentences.push_back(Make("o" + std::to_string(i)));
  EXPECT_TRUE(MergeTraining(original, {}, TagScheme::kBio).SameContent(original));
  const std::vector<Sentence> selected{Make("s0"), Make("s1"), Make("s2")};
  EXPECT_EQ(MergeTraining(original, selected, TagScheme::kBio).size(), 6u);
  EXPECT_THROW(MergeTraining(original, selected, TagScheme::kIobes),
               ValidationError);
}

TEST(AnnotatePool, DecodesAndScores) {
  Sentence s;
  s.tokens = {{"Berlin", "O"}, {"is", "O"}};
  s.source_id = "p:1-2";
  ScoreLattice l;
  l.sentence_ref = "p:1-2";
  l.tag_set = {"O", "S-LOC"};
  l.emissions = {0.1, 3.0, 2.0, 0.2};
  l.transitions = {0.5, 0.5, 0.5, 0.5};
  l.start_scores = {0.1, 0.1};
  l.stop_scores = {0.1, 0.1};
  const AnnotatedPool pool =
      AnnotatePool(std::vector<Sentence>{s}, std::vector<ScoreLattice>{l}, "web");
  ASSERT_EQ(pool.entries.size(), 1u);
  EXPECT_EQ(pool.scheme, TagScheme::kIobes);
  EXPECT_EQ(pool.entries[0].sentence.tags(),
            (std::vector<std::string>{"S-LOC", "O"}));
  EXPECT_EQ(pool.entries[0].sentence.domain_tag, "web");
  EXPECT_GT(pool.entries[0].c1, 0.5);
  EXPECT_NEAR(pool.entries[0].c2, std::min(3.1 / 3.2, 2.5 / 3.2), 1e-12);

  EXPECT_THROW(AnnotatePool(std::vector<Sentence>{s, s},
                            std::vector<ScoreLattice>{l}, "web"),
               ValidationError);
}

TEST(PoolRecord, RoundTrip) {
  PoolEntry e{Make("w", "news"), 0.25, 0.75};
  e.sentence.tokens.push_back({"Paris", "S-LOC"});
  const PoolEntry back = ParsePoolRecord(FormatPoolRecord(e));
  EXPECT_TRUE(back.sentence.SameContent(e.sentence));
  EXPECT_EQ(back.sentence.domain_tag, "news");
  EXPECT_EQ(back.sentence.source_id, e.sentence.source_id);
  EXPECT_EQ(back.c1, 0.25);
  EXPECT_EQ(back.c2, 0.75);
}

}  // namespace
}  // namespace neradapt
