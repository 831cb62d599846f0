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

#ifndef NERADAPT_CORPUS_H_
#define NERADAPT_CORPUS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "neradapt/tags.h"

namespace neradapt {

struct Token {
  std::string text;
  std::string tag;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::string source_id;  // "<file>:<first line>-<last line>" when parsed
  std::string domain_tag;

  std::size_t size() const { return tokens.size(); }
  std::vector<std::string> texts() const;
  std::vector<std::string> tags() const;

  // Content equality: tokens and tags only, provenance ignored.
  bool SameContent(const Sentence& other) const {
    return tokens == other.tokens;
  }
};

struct Corpus {
  std::string name;
  TagScheme scheme = TagScheme::kBio;
  std::vector<Sentence> sentences;
  // Number of tags rewritten by the transition repair while parsing.
  std::size_t repaired_tags = 0;

  std::size_t size() const { return sentences.size(); }
  bool SameContent(const Corpus& other) const;
};

enum class ColumnSeparator { kWhitespace, kTab };

struct FormatConfig {
  int token_column = 0;
  int tag_column = 1;
  ColumnSeparator separator = ColumnSeparator::kWhitespace;
  // Lines starting with this prefix are skipped (GermEval "#" headers).
  std::optional<std::string> comment_prefix;
  // Lines whose token column equals this marker are dropped.
  std::optional<std::string> document_boundary_marker = "-DOCSTART-";

  // Throws ValidationError if the columns collide or are negative.
  void Validate() const;
};

struct ParseOptions {
  // Turns tag transition repairs into ValidationErrors.
  bool strict = false;
  // Receives one message per repaired tag; may be empty.
  std::vector<std::string>* warnings = nullptr;
};

// Parses a column-format document. Blank lines separate sentences; the
// sentence's source_id is "<name>:<first line>-<last line>" (1-based).
Corpus ParseCorpus(std::string_view text, const FormatConfig& config,
                   TagScheme scheme, std::string_view name = "",
                   const ParseOptions& options = {});

Corpus ReadCorpusFile(const std::string& path, const FormatConfig& config,
                      TagScheme scheme, const ParseOptions& options = {});

// Writes one token per line, a blank line after every sentence. Columns other
// than the token and tag columns are filled with "_".
std::string WriteCorpus(const Corpus& corpus, const FormatConfig& config);

// Validates the corpus and returns a copy with every sentence converted.
Corpus ConvertCorpus(const Corpus& corpus, TagScheme to);

std::vector<EntitySpan> ExtractSpans(const Sentence& sentence,
                                     TagScheme scheme);

struct StatsReport {
  std::size_t sentence_count = 0;
  std::size_t entity_count = 0;
  std::size_t token_count = 0;
  std::size_t entity_type_count = 0;
  std::size_t labelled_token_count = 0;
  double labelled_token_fraction = 0.0;
  std::size_t repaired_tags = 0;

  // "key=value" lines in a fixed order.
  std::string ToKeyValue() const;
};

StatsReport CorpusStats(const Corpus& corpus);

}  // namespace neradapt

#endif  // NERADAPT_CORPUS_H_
