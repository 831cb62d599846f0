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

#include "neradapt/lattice.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "neradapt/errors.h"

namespace neradapt {
namespace {

TEST(Lattice, RecordRoundTrip) {
  ScoreLattice l = ScoreLattice::Uniform(2, 3, 0.25);
  l.sentence_ref = "s:1-2";
  l.emissions[4] = -1.5;
  const ScoreLattice back = ParseLatticeRecord(FormatLatticeRecord(l));
  EXPECT_EQ(back.sentence_ref, "s:1-2");
  EXPECT_EQ(back.tag_set, l.tag_set);
  EXPECT_EQ(back.emissions, l.emissions);
  EXPECT_EQ(back.transitions, l.transitions);
  EXPECT_EQ(back.start_scores, l.start_scores);
  EXPECT_EQ(back.stop_scores, l.stop_scores);
  EXPECT_EQ(back.length(), 2u);
}

TEST(Lattice, ValidationErrors) {
  ScoreLattice l = ScoreLattice::Uniform(2, 2, 0.0);
  l.transitions.pop_back();
  EXPECT_THROW(l.Validate(), ValidationError);
  l = ScoreLattice::Uniform(2, 2, 0.0);
  l.tag_set[1] = "T0";
  EXPECT_THROW(l.Validate(), ValidationError);
  l = ScoreLattice::Uniform(2, 2, 0.0);
  l.emissions[0] = NAN;
  EXPECT_THROW(l.Validate(), ValidationError);
  EXPECT_THROW(ParseLatticeRecord("{\"tag_set\": []}"), ParseError);
  EXPECT_THROW(ParseLatticeRecord("not json"), ParseError);
}

TEST(Lattice, FileSkipsBlankLinesAndNamesBadLine) {
  const std::string path = ::testing::TempDir() + "lattices.jsonl";
  {
    std::ofstream out(path);
    out << FormatLatticeRecord(ScoreLattice::Uniform(1, 2, 0.0)) << "\n\n"
        << FormatLatticeRecord(ScoreLattice::Uniform(2, 2, 0.0)) << "\n";
  }
  EXPECT_EQ(ReadLatticeFile(path).size(), 2u);
  {
    std::ofstream out(path);
    out << FormatLatticeRecord(ScoreLattice::Uniform(1, 2, 0.0)) << "\n{\n";
  }
  try {
    ReadLatticeFile(path);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos) << e.what();
  }
  std::remove(path.c_str());
  EXPECT_THROW(ReadLatticeFile(path), IoError);
}

TEST(Lattice, TagIndex) {
  const ScoreLattice l = ScoreLattice::Uniform(1, 3, 0.0);
  EXPECT_EQ(l.TagIndex("T2"), 2u);
  EXPECT_THROW(l.TagIndex("X"), ValidationError);
}

}  // namespace
}  // namespace neradapt
