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

#include "neradapt/levenshtein.h"

#include <gtest/gtest.h>

#include <random>

#include "support/oracles.h"

namespace neradapt {
namespace {

TEST(Levenshtein, Examples) {
  EXPECT_EQ(Levenshtein("", "abc"), 3u);
  EXPECT_EQ(Levenshtein("same", "same"), 0u);
  EXPECT_EQ(Levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(Levenshtein("a cat sat", "a dog sat"), 3u);
  EXPECT_EQ(Levenshtein("a cat sat", "a hippopotamus sat"), 11u);
}

TEST(Levenshtein, CountsCodePointsNotBytes) {
  EXPECT_EQ(Levenshtein("über", "uber"), 1u);
  EXPECT_EQ(Levenshtein("中文", "中"), 1u);
  EXPECT_EQ(DecodeUtf8("aé中").size(), 3u);
}

TEST(Levenshtein, MatchesDpOracle) {
  std::mt19937_64 gen(17);
  for (int i = 0; i < 500; ++i) {
    const auto a = testing::RandomText(gen, 20);
    const auto b = testing::RandomText(gen, 20);
    ASSERT_EQ(Levenshtein(testing::EncodeUtf8(a), testing::EncodeUtf8(b)),
              testing::DpLevenshtein(a, b));
  }
}

}  // namespace
}  // namespace neradapt
