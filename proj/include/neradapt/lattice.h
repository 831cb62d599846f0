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

#ifndef NERADAPT_LATTICE_H_
#define NERADAPT_LATTICE_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace neradapt {

// Scores exported by an external linear-chain CRF tagger for one sentence.
// All scores are log-domain. The transition matrix is indexed
// [previous tag][current tag]; start and stop scores model the transitions
// from the virtual start state and into the virtual stop state.
struct ScoreLattice {
  std::string sentence_ref;
  std::vector<std::string> tag_set;
  std::vector<double> emissions;    // length() x num_tags(), row-major
  std::vector<double> transitions;  // num_tags() x num_tags(), row-major
  std::vector<double> start_scores;
  std::vector<double> stop_scores;

  std::size_t num_tags() const { return tag_set.size(); }
  std::size_t length() const {
    return tag_set.empty() ? 0 : emissions.size() / tag_set.size();
  }

  double emission(std::size_t position, std::size_t tag) const {
    return emissions[position * num_tags() + tag];
  }
  double transition(std::size_t previous, std::size_t current) const {
    return transitions[previous * num_tags() + current];
  }

  // Throws ValidationError on empty dimensions, size mismatches, duplicate
  // tags, or non-finite scores.
  void Validate() const;

  // Throws ValidationError naming the tag if it is not in tag_set.
  std::size_t TagIndex(std::string_view tag) const;
  std::vector<std::size_t> TagIndices(std::span<const std::string> tags) const;

  // Builds a lattice of the given shape with every score set to `value`.
  static ScoreLattice Uniform(std::size_t length, std::size_t num_tags,
                              double value);
};

// One JSON object per line:
//   {"sentence_ref": ..., "tag_set": [...], "emissions": [T*N numbers],
//    "transitions": [N*N], "start_scores": [N], "stop_scores": [N]}
ScoreLattice ParseLatticeRecord(std::string_view line);
std::string FormatLatticeRecord(const ScoreLattice& lattice);

std::vector<ScoreLattice> ReadLatticeFile(const std::string& path);
std::string FormatLatticeFile(std::span<const ScoreLattice> lattices);

}  // namespace neradapt

#endif  // NERADAPT_LATTICE_H_
