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

#ifndef NERADAPT_CLI_CONFIG_H_
#define NERADAPT_CLI_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "neradapt/corpus.h"
#include "neradapt/crf_confidence.h"
#include "neradapt/mlm_augment.h"

namespace neradapt::cli {

struct PoolSource {
  std::string domain;
  std::filesystem::path corpus;    // unlabeled sentences, column format
  std::filesystem::path lattices;  // one lattice per sentence, same order
  std::filesystem::path records;   // or: pre-annotated pool records
};

struct CalibrationSettings {
  std::vector<Measure> measures = {Measure::kC1, Measure::kC2};
  std::string split = "dev";
  std::filesystem::path lattices;
  // Pre-scored examples ("confidence<TAB>0|1" lines) per measure name.
  std::map<std::string, std::filesystem::path> examples;
  double grid_step = 0.01;
  double delta = 0.01;
  std::map<std::string, double> t_prime_override;
  C2Mode c2_mode = C2Mode::kLiteral;
};

struct SelectionSettings {
  Measure measure = Measure::kC1;
  // A number, or "t_hat" / "t_prime" to read the calibrated value.
  std::string threshold = "t_hat";
  double ratio = 1.0;
  std::string split = "train";
  std::vector<PoolSource> pool;
  C2Mode c2_mode = C2Mode::kLiteral;
};

struct BackendSettings {
  std::string transport;  // mock | stdio | tcp; empty: environment
  std::string command;
  std::string address;
  int timeout_ms = 30000;
  std::filesystem::path mock_script;
};

struct AugmentSettings {
  std::string split = "train";
  MaskStrategy strategy = MaskStrategy::kEntity;
  GenerationOrder order = GenerationOrder::kIndependent;
  Criterion criterion = Criterion::kTopToken;
  std::size_t top_k = 5;
};

struct ConfidenceFilterSettings {
  Measure measure = Measure::kC1;
  double threshold = 0.0;
  std::filesystem::path lattices;
  C2Mode c2_mode = C2Mode::kLiteral;
};

struct FilterSettings {
  std::filesystem::path input;       // default <out>/augmented.conll
  std::filesystem::path provenance;  // default <input>.provenance.jsonl
  std::optional<double> token_prob;
  std::optional<ConfidenceFilterSettings> confidence;
};

struct ReportSettings {
  std::string split = "dev";
  std::filesystem::path corpus;  // overrides split when set
  std::filesystem::path lattices;
  double high = 0.6;
  double low = 0.4;
  C2Mode c2_mode = C2Mode::kLiteral;
};

struct PipelineConfig {
  std::optional<std::uint64_t> seed;
  TagScheme scheme = TagScheme::kBio;
  FormatConfig format;
  std::vector<std::pair<std::string, std::filesystem::path>> corpora;
  std::filesystem::path output_dir = "out";
  bool strict = false;

  CalibrationSettings calibration;
  SelectionSettings selection;
  AugmentSettings augment;
  BackendSettings backend;
  FilterSettings filter;
  ReportSettings report;

  std::optional<std::filesystem::path> CorpusPath(
      const std::string& split) const;
};

// Parses the JSON configuration. Relative paths are resolved against
// `base_dir`. Throws ValidationError or ParseError.
PipelineConfig ParseConfig(const std::string& text,
                           const std::filesystem::path& base_dir);

PipelineConfig LoadConfig(const std::filesystem::path& path);

}  // namespace neradapt::cli

#endif  // NERADAPT_CLI_CONFIG_H_
