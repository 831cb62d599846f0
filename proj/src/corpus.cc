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

#include "neradapt/corpus.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "neradapt/errors.h"

namespace neradapt {

std::vector<std::string> Sentence::texts() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) out.push_back(t.text);
  return out;
}

std::vector<std::string> Sentence::tags() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) out.push_back(t.tag);
  return out;
}

bool Corpus::SameContent(const Corpus& other) const {
  if (scheme != other.scheme || sentences.size() != other.sentences.size()) {
    return false;
  }
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (!sentences[i].SameContent(other.sentences[i])) return false;
  }
  return true;
}

void FormatConfig::Validate() const {
  if (token_column < 0 || tag_column < 0) {
    throw ValidationError("column indices must be non-negative");
  }
  if (token_column == tag_column) {
    throw ValidationError("token and tag column must differ");
  }
}

namespace {

std::vector<std::string_view> SplitColumns(std::string_view line,
                                           ColumnSeparator separator) {
  std::vector<std::string_view> columns;
  if (separator == ColumnSeparator::kTab) {
    std::size_t begin = 0;
    while (true) {
      const std::size_t tab = line.find('\t', begin);
      columns.push_back(line.substr(begin, tab - begin));
      if (tab == std::string_view::npos) break;
      begin = tab + 1;
    }
    return columns;
  }
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t begin = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > begin) columns.push_back(line.substr(begin, i - begin));
  }
  return columns;
}

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

struct PendingSentence {
  std::vector<Token> tokens;
  std::vector<std::size_t> lines;

  void Clear() {
    tokens.clear();
    lines.clear();
  }
};

class CorpusBuilder {
 public:
  CorpusBuilder(std::string_view name, TagScheme scheme,
                const ParseOptions& options)
      : options_(options) {
    corpus_.name = std::string(name);
    corpus_.scheme = scheme;
  }

  void Flush(PendingSentence& pending) {
    if (pending.tokens.empty()) return;
    Sentence sentence;
    sentence.tokens = std::move(pending.tokens);
    sentence.source_id = corpus_.name + ":" +
                         std::to_string(pending.lines.front()) + "-" +
                         std::to_string(pending.lines.back());
    CheckTags(sentence, pending.lines);
    corpus_.sentences.push_back(std::move(sentence));
    pending.Clear();
  }

  Corpus Finish() { return std::move(corpus_); }

 private:
  void CheckTags(Sentence& sentence, const std::vector<std::size_t>& lines) {
    const std::vector<std::string> tags = sentence.tags();
    const auto issue = FindInvalidTag(tags, corpus_.scheme);
    if (!issue) return;
    const std::string where =
        corpus_.name + ":" + std::to_string(lines[issue->position]);
    if (issue->grammar || options_.strict) {
      throw ValidationError(where + ": invalid " +
                            std::string(SchemeName(corpus_.scheme)) +
                            " tag '" + issue->tag + "'");
    }
    const RepairResult repair = RepairTags(tags, corpus_.scheme);
    for (std::size_t pos : repair.repaired_positions) {
      if (options_.warnings) {
        options_.warnings->push_back(
            corpus_.name + ":" + std::to_string(lines[pos]) + ": repaired '" +
            sentence.tokens[pos].tag + "' -> '" + repair.tags[pos] + "'");
      }
      sentence.tokens[pos].tag = repair.tags[pos];
    }
    corpus_.repaired_tags += repair.repaired_positions.size();
  }

  const ParseOptions& options_;
  Corpus corpus_;
};

}  // namespace

Corpus ParseCorpus(std::string_view text, const FormatConfig& config,
                   TagScheme scheme, std::string_view name,
                   const ParseOptions& options) {
  config.Validate();
  const auto needed =
      static_cast<std::size_t>(std::max(config.token_column, config.tag_column));
  CorpusBuilder builder(name, scheme, options);
  PendingSentence pending;

  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (IsBlank(line)) {
      builder.Flush(pending);
      continue;
    }
    if (config.comment_prefix && line.starts_with(*config.comment_prefix)) {
      continue;
    }
    const auto columns = SplitColumns(line, config.separator);
    if (config.document_boundary_marker && !columns.empty() &&
        columns[std::min(columns.size() - 1,
                         static_cast<std::size_t>(config.token_column))] ==
            *config.document_boundary_marker) {
      builder.Flush(pending);
      continue;
    }
    if (columns.size() <= needed) {
      throw ParseError(std::string(name) + ":" + std::to_string(line_no) +
                       ": expected at least " + std::to_string(needed + 1) +
                       " columns, found " + std::to_string(columns.size()));
    }
    Token token{std::string(columns[config.token_column]),
                std::string(columns[config.tag_column])};
    if (token.text.empty()) {
      throw ParseError(std::string(name) + ":" + std::to_string(line_no) +
                       ": empty token");
    }
    pending.tokens.push_back(std::move(token));
    pending.lines.push_back(line_no);
  }
  builder.Flush(pending);
  return builder.Finish();
}

Corpus ReadCorpusFile(const std::string& path, const FormatConfig& config,
                      TagScheme scheme, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ParseCorpus(buffer.str(), config, scheme,
                     std::filesystem::path(path).filename().string(), options);
}

std::string WriteCorpus(const Corpus& corpus, const FormatConfig& config) {
  config.Validate();
  const char sep = config.separator == ColumnSeparator::kTab ? '\t' : ' ';
  const int columns = std::max(config.token_column, config.tag_column) + 1;
  std::string out;
  for (const Sentence& sentence : corpus.sentences) {
    for (const Token& token : sentence.tokens) {
      for (int c = 0; c < columns; ++c) {
        if (c > 0) out.push_back(sep);
        if (c == config.token_column) {
          out += token.text;
        } else if (c == config.tag_column) {
          out += token.tag;
        } else {
          out.push_back('_');
        }
      }
      out.push_back('\n');
    }
    out.push_back('\n');
  }
  return out;
}

Corpus ConvertCorpus(const Corpus& corpus, TagScheme to) {
  Corpus out = corpus;
  out.scheme = to;
  for (Sentence& sentence : out.sentences) {
    const auto tags = ConvertTags(sentence.tags(), corpus.scheme, to);
    for (std::size_t i = 0; i < tags.size(); ++i) {
      sentence.tokens[i].tag = tags[i];
    }
  }
  return out;
}

std::vector<EntitySpan> ExtractSpans(const Sentence& sentence,
                                     TagScheme scheme) {
  return SpansFromTags(sentence.tags(), scheme);
}

std::string StatsReport::ToKeyValue() const {
  std::ostringstream out;
  out << "sentences=" << sentence_count << '\n'
      << "tokens=" << token_count << '\n'
      << "entities=" << entity_count << '\n'
      << "entity_types=" << entity_type_count << '\n'
      << "labelled_tokens=" << labelled_token_count << '\n'
      << "labelled_fraction=" << labelled_token_fraction << '\n'
      << "repaired_tags=" << repaired_tags << '\n';
  return out.str();
}

StatsReport CorpusStats(const Corpus& corpus) {
  StatsReport report;
  std::set<std::string> types;
  report.sentence_count = corpus.sentences.size();
  for (const Sentence& sentence : corpus.sentences) {
    report.token_count += sentence.size();
    for (const Token& token : sentence.tokens) {
      if (token.tag != kOutsideTag) ++report.labelled_token_count;
    }
    for (EntitySpan& span : ExtractSpans(sentence, corpus.scheme)) {
      ++report.entity_count;
      types.insert(std::move(span.type));
    }
  }
  report.entity_type_count = types.size();
  report.labelled_token_fraction =
      report.token_count == 0
          ? 0.0
          : static_cast<double>(report.labelled_token_count) /
                static_cast<double>(report.token_count);
  report.repaired_tags = corpus.repaired_tags;
  return report;
}

}  // namespace neradapt
