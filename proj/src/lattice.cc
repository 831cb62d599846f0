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

#include <cmath>
#include <fstream>
#include <set>

#include "json.hpp"
#include "neradapt/errors.h"

namespace neradapt {

using nlohmann::ordered_json;

void ScoreLattice::Validate() const {
  const std::size_t n = num_tags();
  if (n == 0) throw ValidationError(sentence_ref + ": empty tag set");
  if (emissions.empty() || emissions.size() % n != 0) {
    throw ValidationError(sentence_ref + ": emission matrix has " +
                          std::to_string(emissions.size()) +
                          " entries, not a positive multiple of " +
                          std::to_string(n));
  }
  if (transitions.size() != n * n) {
    throw ValidationError(sentence_ref + ": transition matrix must be " +
                          std::to_string(n) + "x" + std::to_string(n));
  }
  if (start_scores.size() != n || stop_scores.size() != n) {
    throw ValidationError(sentence_ref +
                          ": start/stop score vectors must have one entry "
                          "per tag");
  }
  std::set<std::string_view> seen;
  for (const std::string& tag : tag_set) {
    if (!seen.insert(tag).second) {
      throw ValidationError(sentence_ref + ": duplicate tag '" + tag + "'");
    }
  }
  for (const auto* values :
       {&emissions, &transitions, &start_scores, &stop_scores}) {
    for (double v : *values) {
      if (!std::isfinite(v)) {
        throw ValidationError(sentence_ref + ": non-finite score");
      }
    }
  }
}

std::size_t ScoreLattice::TagIndex(std::string_view tag) const {
  for (std::size_t i = 0; i < tag_set.size(); ++i) {
    if (tag_set[i] == tag) return i;
  }
  throw ValidationError(sentence_ref + ": unknown tag '" + std::string(tag) +
                        "'");
}

std::vector<std::size_t> ScoreLattice::TagIndices(
    std::span<const std::string> tags) const {
  std::vector<std::size_t> out;
  out.reserve(tags.size());
  for (const std::string& tag : tags) out.push_back(TagIndex(tag));
  return out;
}

ScoreLattice ScoreLattice::Uniform(std::size_t length, std::size_t num_tags,
                                   double value) {
  ScoreLattice lattice;
  for (std::size_t i = 0; i < num_tags; ++i) {
    lattice.tag_set.push_back("T" + std::to_string(i));
  }
  lattice.emissions.assign(length * num_tags, value);
  lattice.transitions.assign(num_tags * num_tags, value);
  lattice.start_scores.assign(num_tags, value);
  lattice.stop_scores.assign(num_tags, value);
  return lattice;
}

ScoreLattice ParseLatticeRecord(std::string_view line) {
  ScoreLattice lattice;
  try {
    const ordered_json record = ordered_json::parse(line);
    lattice.sentence_ref = record.at("sentence_ref").get<std::string>();
    lattice.tag_set = record.at("tag_set").get<std::vector<std::string>>();
    lattice.emissions = record.at("emissions").get<std::vector<double>>();
    lattice.transitions = record.at("transitions").get<std::vector<double>>();
    lattice.start_scores =
        record.at("start_scores").get<std::vector<double>>();
    lattice.stop_scores = record.at("stop_scores").get<std::vector<double>>();
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("bad lattice record: ") + e.what());
  }
  lattice.Validate();
  return lattice;
}

std::string FormatLatticeRecord(const ScoreLattice& lattice) {
  ordered_json record;
  record["sentence_ref"] = lattice.sentence_ref;
  record["tag_set"] = lattice.tag_set;
  record["emissions"] = lattice.emissions;
  record["transitions"] = lattice.transitions;
  record["start_scores"] = lattice.start_scores;
  record["stop_scores"] = lattice.stop_scores;
  return record.dump();
}

std::vector<ScoreLattice> ReadLatticeFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lattice file '" + path + "'");
  std::vector<ScoreLattice> lattices;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      lattices.push_back(ParseLatticeRecord(line));
    } catch (const ParseError& e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError(path + ":" + std::to_string(line_no) + ": " +
                            e.what());
    }
  }
  return lattices;
}

std::string FormatLatticeFile(std::span<const ScoreLattice> lattices) {
  std::string out;
  for (const ScoreLattice& lattice : lattices) {
    out += FormatLatticeRecord(lattice);
    out.push_back('\n');
  }
  return out;
}

}  // namespace neradapt
