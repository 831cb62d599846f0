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

#include "cli/config.h"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "json.hpp"
#include "neradapt/errors.h"

namespace neradapt::cli {
namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

void RejectUnknownKeys(const Json& object, std::string_view where,
                       std::initializer_list<std::string_view> known) {
  if (!object.is_object()) {
    throw ValidationError("config: '" + std::string(where) +
                          "' must be an object");
  }
  const std::set<std::string_view> allowed(known);
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) {
      throw ValidationError("config: unknown key '" + key + "' in '" +
                            std::string(where) + "'");
    }
  }
}

fs::path ResolvePath(const Json& value, const fs::path& base) {
  fs::path p(value.get<std::string>());
  return p.is_absolute() ? p : base / p;
}

template <typename T>
void Read(const Json& object, const char* key, T& out) {
  if (object.contains(key) && !object.at(key).is_null()) {
    out = object.at(key).get<T>();
  }
}

void ReadPath(const Json& object, const char* key, const fs::path& base,
              fs::path& out) {
  if (object.contains(key) && !object.at(key).is_null()) {
    out = ResolvePath(object.at(key), base);
  }
}

FormatConfig ParseFormat(const Json& j) {
  RejectUnknownKeys(j, "format",
                    {"token_column", "tag_column", "separator",
                     "comment_prefix", "document_boundary"});
  FormatConfig format;
  Read(j, "token_column", format.token_column);
  Read(j, "tag_column", format.tag_column);
  if (j.contains("separator")) {
    const auto sep = j.at("separator").get<std::string>();
    if (sep == "tab") {
      format.separator = ColumnSeparator::kTab;
    } else if (sep == "whitespace") {
      format.separator = ColumnSeparator::kWhitespace;
    } else {
      throw ValidationError("config: separator must be 'tab' or 'whitespace'");
    }
  }
  if (j.contains("comment_prefix")) {
    const auto& v = j.at("comment_prefix");
    format.comment_prefix =
        v.is_null() ? std::nullopt : std::optional(v.get<std::string>());
  }
  if (j.contains("document_boundary")) {
    const auto& v = j.at("document_boundary");
    format.document_boundary_marker =
        v.is_null() ? std::nullopt : std::optional(v.get<std::string>());
  }
  format.Validate();
  return format;
}

void ParseCalibration(const Json& j, const fs::path& base,
                      CalibrationSettings& out) {
  RejectUnknownKeys(j, "calibration",
                    {"measures", "split", "lattices", "examples", "grid_step",
                     "delta", "t_prime", "c2_mode"});
  if (j.contains("measures")) {
    out.measures.clear();
    for (const auto& m : j.at("measures")) {
      out.measures.push_back(ParseMeasure(m.get<std::string>()));
    }
  }
  Read(j, "split", out.split);
  ReadPath(j, "lattices", base, out.lattices);
  if (j.contains("examples")) {
    for (const auto& [measure, path] : j.at("examples").items()) {
      ParseMeasure(measure);
      out.examples[measure] = ResolvePath(path, base);
    }
  }
  Read(j, "grid_step", out.grid_step);
  Read(j, "delta", out.delta);
  if (j.contains("t_prime")) {
    for (const auto& [measure, value] : j.at("t_prime").items()) {
      ParseMeasure(measure);
      out.t_prime_override[measure] = value.get<double>();
    }
  }
  if (j.contains("c2_mode")) {
    out.c2_mode = ParseC2Mode(j.at("c2_mode").get<std::string>());
  }
}

void ParseSelection(const Json& j, const fs::path& base,
                    SelectionSettings& out) {
  RejectUnknownKeys(j, "selection",
                    {"measure", "threshold", "ratio", "split", "pool",
                     "c2_mode"});
  if (j.contains("measure")) {
    out.measure = ParseMeasure(j.at("measure").get<std::string>());
  }
  if (j.contains("threshold")) {
    const auto& t = j.at("threshold");
    if (t.is_number()) {
      std::ostringstream s;
      s.precision(17);
      s << t.get<double>();
      out.threshold = s.str();
    } else {
      out.threshold = t.get<std::string>();
    }
  }
  Read(j, "ratio", out.ratio);
  Read(j, "split", out.split);
  if (j.contains("pool")) {
    for (const auto& source : j.at("pool")) {
      RejectUnknownKeys(source, "selection.pool[]",
                        {"domain", "corpus", "lattices", "records"});
      PoolSource p;
      Read(source, "domain", p.domain);
      ReadPath(source, "corpus", base, p.corpus);
      ReadPath(source, "lattices", base, p.lattices);
      ReadPath(source, "records", base, p.records);
      if (p.records.empty() && (p.corpus.empty() || p.lattices.empty())) {
        throw ValidationError(
            "config: every pool source needs 'records' or both 'corpus' and "
            "'lattices'");
      }
      out.pool.push_back(std::move(p));
    }
  }
  if (j.contains("c2_mode")) {
    out.c2_mode = ParseC2Mode(j.at("c2_mode").get<std::string>());
  }
}

void ParseBackend(const Json& j, const fs::path& base, BackendSettings& out) {
  RejectUnknownKeys(j, "backend",
                    {"transport", "command", "address", "timeout_ms",
                     "mock_script"});
  Read(j, "transport", out.transport);
  Read(j, "command", out.command);
  Read(j, "address", out.address);
  Read(j, "timeout_ms", out.timeout_ms);
  ReadPath(j, "mock_script", base, out.mock_script);
}

void ParseAugment(const Json& j, AugmentSettings& out) {
  RejectUnknownKeys(j, "augment",
                    {"split", "strategy", "order", "criterion", "top_k"});
  Read(j, "split", out.split);
  if (j.contains("strategy")) {
    out.strategy = ParseStrategy(j.at("strategy").get<std::string>());
  }
  if (j.contains("order")) {
    out.order = ParseOrder(j.at("order").get<std::string>());
  }
  if (j.contains("criterion")) {
    out.criterion = ParseCriterion(j.at("criterion").get<std::string>());
  }
  Read(j, "top_k", out.top_k);
}

ConfidenceFilterSettings ParseConfidenceFilter(const Json& j,
                                               const fs::path& base) {
  RejectUnknownKeys(j, "filter.confidence",
                    {"measure", "threshold", "lattices", "c2_mode"});
  ConfidenceFilterSettings out;
  if (j.contains("measure")) {
    out.measure = ParseMeasure(j.at("measure").get<std::string>());
  }
  Read(j, "threshold", out.threshold);
  ReadPath(j, "lattices", base, out.lattices);
  if (j.contains("c2_mode")) {
    out.c2_mode = ParseC2Mode(j.at("c2_mode").get<std::string>());
  }
  return out;
}

void ParseFilter(const Json& j, const fs::path& base, FilterSettings& out) {
  RejectUnknownKeys(j, "filter",
                    {"input", "provenance", "token_prob", "confidence"});
  ReadPath(j, "input", base, out.input);
  ReadPath(j, "provenance", base, out.provenance);
  if (j.contains("token_prob") && !j.at("token_prob").is_null()) {
    out.token_prob = j.at("token_prob").get<double>();
  }
  if (j.contains("confidence") && !j.at("confidence").is_null()) {
    out.confidence = ParseConfidenceFilter(j.at("confidence"), base);
  }
}

void ParseReport(const Json& j, const fs::path& base, ReportSettings& out) {
  RejectUnknownKeys(j, "report",
                    {"split", "corpus", "lattices", "high", "low", "c2_mode"});
  Read(j, "split", out.split);
  ReadPath(j, "corpus", base, out.corpus);
  ReadPath(j, "lattices", base, out.lattices);
  Read(j, "high", out.high);
  Read(j, "low", out.low);
  if (j.contains("c2_mode")) {
    out.c2_mode = ParseC2Mode(j.at("c2_mode").get<std::string>());
  }
}

}  // namespace

std::optional<fs::path> PipelineConfig::CorpusPath(
    const std::string& split) const {
  for (const auto& [name, path] : corpora) {
    if (name == split) return path;
  }
  return std::nullopt;
}

PipelineConfig ParseConfig(const std::string& text, const fs::path& base) {
  PipelineConfig config;
  try {
    const Json j = Json::parse(text);
    RejectUnknownKeys(j, "<root>",
                      {"seed", "scheme", "format", "corpora", "output_dir",
                       "strict", "calibration", "selection", "augment",
                       "backend", "filter", "report"});
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("scheme")) {
      config.scheme = ParseScheme(j.at("scheme").get<std::string>());
    }
    if (j.contains("format")) config.format = ParseFormat(j.at("format"));
    if (j.contains("corpora")) {
      for (const auto& [split, path] : j.at("corpora").items()) {
        config.corpora.emplace_back(split, ResolvePath(path, base));
      }
    }
    ReadPath(j, "output_dir", base, config.output_dir);
    Read(j, "strict", config.strict);
    if (j.contains("calibration")) {
      ParseCalibration(j.at("calibration"), base, config.calibration);
    }
    if (j.contains("selection")) {
      ParseSelection(j.at("selection"), base, config.selection);
    }
    if (j.contains("augment")) ParseAugment(j.at("augment"), config.augment);
    if (j.contains("backend")) {
      ParseBackend(j.at("backend"), base, config.backend);
    }
    if (j.contains("filter")) ParseFilter(j.at("filter"), base, config.filter);
    if (j.contains("report")) ParseReport(j.at("report"), base, config.report);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return config;
}

PipelineConfig LoadConfig(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str(), path.parent_path());
}

}  // namespace neradapt::cli
