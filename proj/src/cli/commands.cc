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

#include "cli/commands.h"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli/output_set.h"
#include "neradapt/calibration.h"
#include "neradapt/errors.h"
#include "neradapt/lattice.h"
#include "neradapt/mock_backend.h"
#include "neradapt/random.h"
#include "neradapt/selftrain.h"
#include "neradapt/stream_backend.h"

namespace neradapt::cli {
namespace {

namespace fs = std::filesystem;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool strict = false;
  std::string scheme;
  std::vector<std::string> inputs;
};

struct CommandFlags {
  std::string to_scheme;
  std::optional<double> threshold_value;
  std::string threshold_name;
  std::optional<double> ratio;
  std::string strategy;
  std::string order;
  std::string criterion;
  std::optional<double> token_prob;
  std::optional<double> min_confidence;
  std::optional<double> t_prime;
  std::size_t queries = 1000;
};

struct Context {
  PipelineConfig config;
  std::uint64_t seed = 0;
  std::ostream& out;
  std::ostream& err;
};

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> ReadLines(const fs::path& path) {
  std::istringstream in(ReadFile(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

Corpus LoadCorpus(const Context& ctx, const fs::path& path) {
  std::vector<std::string> warnings;
  ParseOptions options;
  options.strict = ctx.config.strict;
  options.warnings = &warnings;
  Corpus corpus = ReadCorpusFile(path.string(), ctx.config.format,
                                 ctx.config.scheme, options);
  for (const std::string& w : warnings) ctx.err << "warning: " << w << '\n';
  return corpus;
}

Corpus LoadSplit(const Context& ctx, const std::string& split) {
  const auto path = ctx.config.CorpusPath(split);
  if (!path) {
    throw ValidationError("config declares no corpus for split '" + split +
                          "'");
  }
  return LoadCorpus(ctx, *path);
}

// (name, path) pairs: explicit --input files, else every declared split.
std::vector<std::pair<std::string, fs::path>> Targets(
    const Context& ctx, const std::vector<std::string>& inputs) {
  std::vector<std::pair<std::string, fs::path>> targets;
  for (const std::string& input : inputs) {
    targets.emplace_back(fs::path(input).filename().string(), input);
  }
  if (targets.empty()) {
    for (const auto& [split, path] : ctx.config.corpora) {
      targets.emplace_back(split, path);
    }
  }
  if (targets.empty()) {
    throw ValidationError("no corpora: declare 'corpora' or pass --input");
  }
  return targets;
}

std::string FormatDouble(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

std::optional<double> ParseNumber(const std::string& text) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

std::map<std::string, std::string> ReadKeyValue(const fs::path& path) {
  std::map<std::string, std::string> out;
  for (const std::string& line : ReadLines(path)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

// ---------------------------------------------------------------- stats

int CmdStats(Context& ctx, const CommonFlags& common) {
  OutputSet outputs(ctx.config.output_dir);
  ctx.out << "name\tsentences\ttokens\tentities\tentity_types\tlabelled_pct\n";
  for (const auto& [name, path] : Targets(ctx, common.inputs)) {
    const StatsReport report = CorpusStats(LoadCorpus(ctx, path));
    outputs.Stage(name + ".stats", report.ToKeyValue());
    ctx.out << name << '\t' << report.sentence_count << '\t'
            << report.token_count << '\t' << report.entity_count << '\t'
            << report.entity_type_count << '\t' << std::fixed
            << std::setprecision(1) << 100.0 * report.labelled_token_fraction
            << std::defaultfloat << std::setprecision(6) << '\n';
  }
  outputs.Commit();
  return kExitOk;
}

// -------------------------------------------------------------- convert

int CmdConvert(Context& ctx, const CommonFlags& common,
               const CommandFlags& flags) {
  if (flags.to_scheme.empty()) {
    throw ValidationError("convert needs --to bio|iobes");
  }
  const TagScheme to = ParseScheme(flags.to_scheme);
  OutputSet outputs(ctx.config.output_dir);
  for (const auto& [name, path] : Targets(ctx, common.inputs)) {
    const Corpus converted = ConvertCorpus(LoadCorpus(ctx, path), to);
    const std::string stem = fs::path(name).stem().string();
    const std::string file =
        stem + "." + std::string(SchemeName(to)) + ".conll";
    outputs.Stage(file, WriteCorpus(converted, ctx.config.format));
    ctx.out << name << " -> " << outputs.PathOf(file).string() << '\n';
  }
  outputs.Commit();
  return kExitOk;
}

// ------------------------------------------------------------ calibrate

std::vector<ScoredExample> ReadScoredExamples(const fs::path& path) {
  std::vector<ScoredExample> examples;
  std::size_t line_no = 0;
  for (const std::string& line : ReadLines(path)) {
    ++line_no;
    if (line.starts_with("#")) continue;
    std::istringstream fields(line);
    std::string confidence;
    std::string correct;
    fields >> confidence >> correct;
    const auto value = ParseNumber(confidence);
    if (!value || !(correct == "0" || correct == "1" || correct == "true" ||
                    correct == "false")) {
      throw ParseError(path.string() + ": record " + std::to_string(line_no) +
                       ": expected '<confidence> <0|1>'");
    }
    examples.push_back({*value, correct == "1" || correct == "true"});
  }
  return examples;
}

// Decodes every lattice and compares the whole path with the gold tags.
std::vector<ScoredExample> ScoreAgainstGold(const Corpus& gold,
                                            std::span<const ScoreLattice> lattices,
                                            Measure measure, C2Mode c2_mode) {
  if (gold.size() != lattices.size()) {
    throw ValidationError("gold corpus has " + std::to_string(gold.size()) +
                          " sentences but " + std::to_string(lattices.size()) +
                          " lattices were given");
  }
  std::vector<ScoredExample> examples;
  examples.reserve(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const ScoreLattice& lattice = lattices[i];
    const Prediction prediction = ViterbiDecode(lattice, c2_mode);
    const auto gold_tags = ConvertTags(gold.sentences[i].tags(), gold.scheme,
                                       InferScheme(lattice.tag_set));
    if (gold_tags.size() != prediction.tags.size()) {
      throw ValidationError(lattice.sentence_ref + ": lattice length differs "
                            "from gold sentence " +
                            gold.sentences[i].source_id);
    }
    const double confidence =
        measure == Measure::kC1
            ? prediction.c1
            : ConfidenceC2(lattice, prediction.tag_indices, c2_mode);
    examples.push_back({confidence, prediction.tags == gold_tags});
  }
  return examples;
}

int CmdCalibrate(Context& ctx, const CommandFlags& flags) {
  const CalibrationSettings& settings = ctx.config.calibration;
  OutputSet outputs(ctx.config.output_dir);
  std::optional<Corpus> gold;
  std::vector<ScoreLattice> lattices;
  for (Measure measure : settings.measures) {
    const std::string name(MeasureName(measure));
    std::vector<ScoredExample> examples;
    if (const auto it = settings.examples.find(name);
        it != settings.examples.end()) {
      examples = ReadScoredExamples(it->second);
    } else {
      if (settings.lattices.empty()) {
        throw ValidationError(
            "calibration needs 'lattices' for the dev split or pre-scored "
            "'examples' for " + name);
      }
      if (!gold) {
        gold = LoadSplit(ctx, settings.split);
        lattices = ReadLatticeFile(settings.lattices.string());
      }
      examples = ScoreAgainstGold(*gold, lattices, measure, settings.c2_mode);
    }
    const CalibrationCurve curve = Sweep(examples, settings.grid_step, name);
    Thresholds thresholds = SelectThresholds(curve, settings.delta);
    std::optional<double> manual = flags.t_prime;
    if (!manual) {
      if (const auto it = settings.t_prime_override.find(name);
          it != settings.t_prime_override.end()) {
        manual = it->second;
      }
    }
    if (manual) {
      thresholds.t_prime = *manual;
      thresholds.cer_at_t_prime = Cer(examples, *manual);
    }
    outputs.Stage("cer_" + name + ".tsv", curve.ToTsv());
    outputs.Stage("thresholds_" + name + ".txt", thresholds.ToKeyValue());
    ctx.out << name << ": t_hat=" << FormatDouble(thresholds.t_hat)
            << " cer=" << FormatDouble(thresholds.cer_at_t_hat);
    if (thresholds.t_prime) {
      ctx.out << " t_prime=" << FormatDouble(*thresholds.t_prime);
    }
    ctx.out << " (" << examples.size() << " examples)\n";
  }
  outputs.Commit();
  return kExitOk;
}

// --------------------------------------------------------------- select

double ResolveThreshold(const Context& ctx, const SelectionSettings& settings,
                        const CommandFlags& flags) {
  if (flags.threshold_value) return *flags.threshold_value;
  const std::string& spec =
      flags.threshold_name.empty() ? settings.threshold : flags.threshold_name;
  if (const auto value = ParseNumber(spec)) return *value;
  if (spec != "t_hat" && spec != "t_prime") {
    throw ValidationError("selection threshold must be a number, 't_hat' or "
                          "'t_prime', got '" + spec + "'");
  }
  const fs::path path = ctx.config.output_dir /
                        ("thresholds_" +
                         std::string(MeasureName(settings.measure)) + ".txt");
  if (!fs::exists(path)) {
    throw ValidationError("threshold '" + spec + "' needs " + path.string() +
                          "; run `calibrate` first");
  }
  const auto values = ReadKeyValue(path);
  const auto it = values.find(spec);
  if (it == values.end()) {
    throw ValidationError(path.string() + " has no " + spec);
  }
  const auto value = ParseNumber(it->second);
  if (!value) throw ParseError(path.string() + ": bad value for " + spec);
  return *value;
}

AnnotatedPool LoadPool(const Context& ctx, const SelectionSettings& settings) {
  if (settings.pool.empty()) {
    throw ValidationError("selection declares no pool sources");
  }
  AnnotatedPool pool;
  std::optional<TagScheme> scheme;
  for (const PoolSource& source : settings.pool) {
    AnnotatedPool part;
    if (!source.records.empty()) {
      std::vector<std::string> tags;
      for (const std::string& line : ReadLines(source.records)) {
        PoolEntry entry = ParsePoolRecord(line);
        if (!source.domain.empty()) entry.sentence.domain_tag = source.domain;
        for (const Token& t : entry.sentence.tokens) tags.push_back(t.tag);
        part.entries.push_back(std::move(entry));
      }
      part.scheme = InferScheme(tags);
    } else {
      const Corpus sentences = LoadCorpus(ctx, source.corpus);
      const auto lattices = ReadLatticeFile(source.lattices.string());
      part = AnnotatePool(sentences.sentences, lattices, source.domain,
                          settings.c2_mode);
    }
    if (part.entries.empty()) continue;
    if (scheme && *scheme != part.scheme) {
      throw ValidationError("pool sources use different tagging schemes");
    }
    scheme = part.scheme;
    for (const PoolEntry& entry : part.entries) {
      ValidateTags(entry.sentence.tags(), part.scheme);
    }
    pool.entries.insert(pool.entries.end(), part.entries.begin(),
                        part.entries.end());
  }
  pool.scheme = scheme.value_or(TagScheme::kIobes);
  return pool;
}

int CmdSelect(Context& ctx, const CommandFlags& flags) {
  SelectionSettings settings = ctx.config.selection;
  if (flags.ratio) settings.ratio = *flags.ratio;
  SelectionSpec spec;
  spec.measure = settings.measure;
  spec.threshold = ResolveThreshold(ctx, settings, flags);
  spec.target_ratio = settings.ratio;
  spec.seed = DeriveSeed(ctx.seed, "select/sample");
  spec.Validate();

  const Corpus original = LoadSplit(ctx, settings.split);
  const std::size_t k = spec.TargetCount(original.size());
  AnnotatedPool pool;
  AnnotatedPool eligible;
  std::vector<Sentence> selected;
  if (k > 0) {
    pool = LoadPool(ctx, settings);
    eligible = FilterPool(pool, spec.measure, spec.threshold);
    selected = SampleBalanced(eligible, k, spec.seed);
    for (Sentence& sentence : selected) {
      const auto tags =
          ConvertTags(sentence.tags(), pool.scheme, original.scheme);
      for (std::size_t i = 0; i < tags.size(); ++i) {
        sentence.tokens[i].tag = tags[i];
      }
    }
  }
  const Corpus merged = MergeTraining(original, selected, original.scheme);

  OutputSet outputs(ctx.config.output_dir);
  outputs.Stage(settings.split + ".selftrain.conll",
                WriteCorpus(merged, ctx.config.format));
  std::string records;
  for (const PoolEntry& entry : pool.entries) {
    records += FormatPoolRecord(entry) + "\n";
  }
  outputs.Stage("pool.jsonl", records);
  std::ostringstream report;
  report << "measure=" << MeasureName(spec.measure) << '\n'
         << "threshold=" << FormatDouble(spec.threshold) << '\n'
         << "ratio=" << FormatDouble(spec.target_ratio) << '\n'
         << "original_sentences=" << original.size() << '\n'
         << "pool_sentences=" << pool.entries.size() << '\n'
         << "eligible_sentences=" << eligible.entries.size() << '\n'
         << "selected_sentences=" << selected.size() << '\n'
         << "merged_sentences=" << merged.size() << '\n';
  outputs.Stage("select_report.txt", report.str());
  outputs.Commit();
  ctx.out << report.str();
  return kExitOk;
}

// -------------------------------------------------------------- augment

int CmdAugment(Context& ctx, const CommandFlags& flags) {
  AugmentSettings settings = ctx.config.augment;
  if (!flags.strategy.empty()) settings.strategy = ParseStrategy(flags.strategy);
  if (!flags.order.empty()) settings.order = ParseOrder(flags.order);
  if (!flags.criterion.empty()) {
    settings.criterion = ParseCriterion(flags.criterion);
  }
  AugmentConfig config;
  config.strategy = settings.strategy;
  config.order = settings.order;
  config.criterion = settings.criterion;
  config.top_k = settings.top_k;
  config.seed = DeriveSeed(ctx.seed, "augment");
  config.Validate();

  const Corpus original = LoadSplit(ctx, settings.split);
  auto backend = MakeBackend(ctx.config.backend);
  MlmClient client(*backend, config.top_k);
  const auto augmented = AugmentCorpus(original, config, client);

  Corpus synthetic;
  synthetic.name = "augmented";
  synthetic.scheme = original.scheme;
  std::string provenance;
  for (const AugmentedSentence& a : augmented) {
    synthetic.sentences.push_back(a.sentence);
    provenance += FormatProvenanceRecord(a) + "\n";
  }
  AugmentReport report = BuildAugmentReport(original.size(), augmented);
  std::string report_text = "strategy=" +
                            std::string(StrategyName(config.strategy)) +
                            "\norder=" + std::string(OrderName(config.order)) +
                            "\ncriterion=" +
                            std::string(CriterionName(config.criterion)) +
                            "\n" + report.ToKeyValue();

  OutputSet outputs(ctx.config.output_dir);
  outputs.Stage("augmented.conll", WriteCorpus(synthetic, ctx.config.format));
  outputs.Stage("augmented.provenance.jsonl", provenance);
  outputs.Stage("augment_report.txt", report_text);
  outputs.Commit();
  ctx.out << report_text;
  return kExitOk;
}

// --------------------------------------------------------------- filter

int CmdFilter(Context& ctx, const CommandFlags& flags) {
  FilterSettings settings = ctx.config.filter;
  if (flags.token_prob) settings.token_prob = *flags.token_prob;
  if (flags.min_confidence) {
    if (!settings.confidence) {
      throw ValidationError(
          "--min-confidence needs filter.confidence.lattices in the config");
    }
    settings.confidence->threshold = *flags.min_confidence;
  }
  const fs::path input = settings.input.empty()
                             ? ctx.config.output_dir / "augmented.conll"
                             : settings.input;
  const fs::path provenance =
      settings.provenance.empty()
          ? input.parent_path() /
                (input.stem().string() + ".provenance.jsonl")
          : settings.provenance;

  const Corpus corpus = LoadCorpus(ctx, input);
  std::vector<AugmentedSentence> kept =
      AttachProvenance(corpus, ReadLines(provenance));
  std::ostringstream report;
  report << "input_sentences=" << kept.size() << '\n';
  if (settings.token_prob) {
    kept = FilterByTokenProb(kept, *settings.token_prob);
    report << "token_prob_threshold=" << FormatDouble(*settings.token_prob)
           << '\n'
           << "after_token_prob=" << kept.size() << '\n';
  }
  if (settings.confidence) {
    const ConfidenceFilterSettings& c = *settings.confidence;
    if (c.lattices.empty()) {
      throw ValidationError("filter.confidence needs 'lattices'");
    }
    std::map<std::string, ScoreLattice> by_ref;
    for (ScoreLattice& lattice : ReadLatticeFile(c.lattices.string())) {
      std::string ref = lattice.sentence_ref;
      by_ref.emplace(std::move(ref), std::move(lattice));
    }
    kept = FilterByConfidence(kept, corpus.scheme, by_ref, c.measure,
                              c.threshold, c.c2_mode);
    report << "confidence_measure=" << MeasureName(c.measure) << '\n'
           << "confidence_threshold=" << FormatDouble(c.threshold) << '\n'
           << "after_confidence=" << kept.size() << '\n';
  }
  if (const auto train = ctx.config.CorpusPath(ctx.config.augment.split)) {
    const Corpus original = LoadCorpus(ctx, *train);
    report << BuildAugmentReport(original.size(), kept).ToKeyValue();
  }

  Corpus filtered;
  filtered.scheme = corpus.scheme;
  std::string records;
  for (const AugmentedSentence& a : kept) {
    filtered.sentences.push_back(a.sentence);
    records += FormatProvenanceRecord(a) + "\n";
  }
  OutputSet outputs(ctx.config.output_dir);
  outputs.Stage("filtered.conll", WriteCorpus(filtered, ctx.config.format));
  outputs.Stage("filtered.provenance.jsonl", records);
  outputs.Stage("filter_report.txt", report.str());
  outputs.Commit();
  ctx.out << report.str();
  return kExitOk;
}

// --------------------------------------------------------------- report

int CmdReport(Context& ctx) {
  const ReportSettings& settings = ctx.config.report;
  const Corpus corpus = settings.corpus.empty()
                            ? LoadSplit(ctx, settings.split)
                            : LoadCorpus(ctx, settings.corpus);
  if (settings.lattices.empty()) {
    throw ValidationError("report needs 'lattices'");
  }
  const auto lattices = ReadLatticeFile(settings.lattices.string());
  if (lattices.size() != corpus.size()) {
    throw ValidationError("report corpus has " + std::to_string(corpus.size()) +
                          " sentences but " + std::to_string(lattices.size()) +
                          " lattices were given");
  }
  std::vector<std::vector<TokenJudgement>> judgements;
  judgements.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const ScoreLattice& lattice = lattices[i];
    const Prediction prediction = ViterbiDecode(lattice, settings.c2_mode);
    const auto gold = ConvertTags(corpus.sentences[i].tags(), corpus.scheme,
                                  InferScheme(lattice.tag_set));
    if (gold.size() != prediction.tags.size()) {
      throw ValidationError(lattice.sentence_ref +
                            ": lattice length differs from sentence " +
                            corpus.sentences[i].source_id);
    }
    const auto scores =
        PositionScores(lattice, prediction.tag_indices, settings.c2_mode);
    std::vector<TokenJudgement> sentence;
    for (std::size_t t = 0; t < scores.size(); ++t) {
      sentence.push_back({scores[t], prediction.tags[t] == gold[t]});
    }
    judgements.push_back(std::move(sentence));
  }
  const ConfidenceErrorReport report =
      BuildConfidenceErrorReport(judgements, settings.high, settings.low);
  OutputSet outputs(ctx.config.output_dir);
  outputs.Stage("confidence_errors.tsv", report.SentencesTsv());
  outputs.Stage("confidence_errors.txt", report.ToKeyValue());
  outputs.Commit();
  ctx.out << report.ToKeyValue();
  return kExitOk;
}

// ---------------------------------------------------------------- probe

int CmdProbe(Context& ctx, const CommandFlags& flags) {
  std::vector<std::vector<std::string>> sentences;
  if (const auto path = ctx.config.CorpusPath(ctx.config.augment.split)) {
    for (const Sentence& s : LoadCorpus(ctx, *path).sentences) {
      sentences.push_back(s.texts());
    }
  }
  if (sentences.empty()) {
    sentences = {{"The", "company", "said", "on", "Monday", "."},
                 {"Pepsi", "is", "better", "than", "Coke", "."},
                 {"I", "am", "going", "to", "see", "the", "Vikings", "."}};
  }
  auto backend = MakeBackend(ctx.config.backend);
  const LoopbackResult result =
      RunLoopback(*backend, sentences, flags.queries, ctx.config.augment.top_k);
  ctx.out << "queries=" << result.queries << "\nreplies=" << result.replies
          << "\nfailures=" << result.failures.size() << '\n';
  for (const std::string& failure : result.failures) {
    ctx.err << "probe: " << failure << '\n';
  }
  return result.ok() ? kExitOk : kExitBackend;
}

void AddCommonFlags(CLI::App* cmd, CommonFlags& common) {
  cmd->add_option("--config", common.config, "Pipeline configuration (JSON)");
  cmd->add_option("--seed", common.seed, "Seed (overrides the config)");
  cmd->add_option("--out", common.out, "Output directory");
  cmd->add_flag("--strict", common.strict,
                "Reject invalid tag transitions instead of repairing them");
  cmd->add_option("--scheme", common.scheme, "Input tagging scheme");
}

}  // namespace

std::unique_ptr<MlmBackend> MakeBackend(const BackendSettings& settings) {
  auto env = [](const char* name) -> std::string {
    const char* value = std::getenv(name);
    return value ? value : "";
  };
  std::string transport = settings.transport;
  if (transport.empty()) transport = env(kTransportEnv);
  if (transport.empty()) {
    if (!settings.mock_script.empty()) {
      transport = "mock";
    } else if (!settings.command.empty() || !env(kCommandEnv).empty()) {
      transport = "stdio";
    } else if (!settings.address.empty() || !env(kAddressEnv).empty()) {
      transport = "tcp";
    }
  }
  const std::chrono::milliseconds timeout(settings.timeout_ms);
  if (transport == "mock") {
    if (settings.mock_script.empty()) {
      throw ValidationError("mock backend needs backend.mock_script");
    }
    return MockBackend::FromJson(ReadFile(settings.mock_script));
  }
  if (transport == "stdio") {
    const std::string command =
        settings.command.empty() ? env(kCommandEnv) : settings.command;
    if (command.empty()) {
      throw ValidationError("stdio backend needs backend.command or $" +
                            std::string(kCommandEnv));
    }
    return std::make_unique<ProcessBackend>(command, timeout);
  }
  if (transport == "tcp") {
    const std::string address =
        settings.address.empty() ? env(kAddressEnv) : settings.address;
    if (address.empty()) {
      throw ValidationError("tcp backend needs backend.address or $" +
                            std::string(kAddressEnv));
    }
    return std::make_unique<TcpBackend>(address, timeout);
  }
  if (transport.empty()) throw ValidationError("no masked-LM backend configured");
  throw ValidationError("unknown backend transport '" + transport +
                        "' (mock, stdio, tcp)");
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Self-training and masked-LM augmentation for NER corpora",
               "neradapt"};
  app.require_subcommand(1);
  CommonFlags common;
  CommandFlags flags;

  CLI::App* stats = app.add_subcommand("stats", "Corpus statistics");
  CLI::App* convert = app.add_subcommand("convert", "BIO <-> IOBES conversion");
  CLI::App* calibrate =
      app.add_subcommand("calibrate", "CER sweep and threshold selection");
  CLI::App* select =
      app.add_subcommand("select", "Confidence-filtered self-training data");
  CLI::App* augment = app.add_subcommand("augment", "Masked-LM augmentation");
  CLI::App* filter = app.add_subcommand("filter", "Filter augmented data");
  CLI::App* report = app.add_subcommand("report", "Confidence/error analysis");
  CLI::App* probe =
      app.add_subcommand("probe", "Protocol conformance check of the backend");
  for (CLI::App* cmd :
       {stats, convert, calibrate, select, augment, filter, report, probe}) {
    AddCommonFlags(cmd, common);
  }
  for (CLI::App* cmd : {stats, convert}) {
    cmd->add_option("--input", common.inputs, "Corpus files to process");
  }
  convert->add_option("--to", flags.to_scheme, "Target scheme (bio|iobes)");
  calibrate->add_option("--t-prime", flags.t_prime,
                        "Manual relaxed threshold");
  select->add_option("--threshold", flags.threshold_value, "Threshold value");
  select->add_option("--threshold-from", flags.threshold_name,
                     "Calibrated threshold to use (t_hat|t_prime)");
  select->add_option("--ratio", flags.ratio,
                     "Selected sentences per original sentence");
  augment->add_option("--strategy", flags.strategy,
                      "entity|context|random_context|mixed");
  augment->add_option("--order", flags.order, "independent|conditional");
  augment->add_option("--criterion", flags.criterion, "top_token|joint");
  filter->add_option("--token-prob", flags.token_prob,
                     "Minimum token probability");
  filter->add_option("--min-confidence", flags.min_confidence,
                     "Minimum sentence confidence");
  probe->add_option("--queries", flags.queries, "Number of probe queries");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "neradapt: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    PipelineConfig config;
    if (!common.config.empty()) config = LoadConfig(common.config);
    if (common.seed) config.seed = common.seed;
    if (!common.out.empty()) config.output_dir = common.out;
    if (common.strict) config.strict = true;
    if (!common.scheme.empty()) config.scheme = ParseScheme(common.scheme);
    if (!config.seed) {
      throw ValidationError("a seed is required (config 'seed' or --seed)");
    }
    Context ctx{std::move(config), 0, out, err};
    ctx.seed = *ctx.config.seed;

    if (stats->parsed()) return CmdStats(ctx, common);
    if (convert->parsed()) return CmdConvert(ctx, common, flags);
    if (calibrate->parsed()) return CmdCalibrate(ctx, flags);
    if (select->parsed()) return CmdSelect(ctx, flags);
    if (augment->parsed()) return CmdAugment(ctx, flags);
    if (filter->parsed()) return CmdFilter(ctx, flags);
    if (report->parsed()) return CmdReport(ctx);
    if (probe->parsed()) return CmdProbe(ctx, flags);
  } catch (const IoError& e) {
    err << "neradapt: " << e.what() << '\n';
    return kExitIo;
  } catch (const ProtocolError& e) {
    err << "neradapt: protocol: " << e.what() << '\n';
    return kExitBackend;
  } catch (const TransportError& e) {
    err << "neradapt: backend: " << e.what() << '\n';
    return kExitBackend;
  } catch (const BackendError& e) {
    err << "neradapt: backend: " << e.what() << '\n';
    return kExitBackend;
  } catch (const Error& e) {
    err << "neradapt: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace neradapt::cli
