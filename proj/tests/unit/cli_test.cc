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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "neradapt/corpus.h"
#include "neradapt/mlm_augment.h"
#include "neradapt/tags.h"

namespace neradapt::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

const fs::path kFixtures = FIXTURE_DIR;

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> Lines(const fs::path& p) {
  std::istringstream in(Slurp(p));
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::path(::testing::TempDir()) /
           (std::string("cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    config_ = Json::parse(Slurp(kFixtures / "pipeline.json"));
    config_["output_dir"] = (dir_ / "out").string();
  }

  // Writes the config with fixture-relative paths made absolute.
  fs::path WriteConfig(const std::string& name = "config.json") {
    const fs::path path = dir_ / name;
    Json c = config_;
    auto fix = [](Json& v) {
      if (v.is_string() && !fs::path(v.get<std::string>()).is_absolute()) {
        v = (kFixtures / v.get<std::string>()).string();
      }
    };
    for (auto& [k, v] : c["corpora"].items()) fix(v);
    fix(c["calibration"]["lattices"]);
    for (auto& source : c["selection"]["pool"]) {
      fix(source["corpus"]);
      fix(source["lattices"]);
    }
    fix(c["backend"]["mock_script"]);
    fix(c["report"]["lattices"]);
    std::ofstream(path) << c.dump(2);
    return path;
  }

  int Run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return RunCli(args, out_, err_);
  }

  fs::path Out(const std::string& name) const { return dir_ / "out" / name; }

  fs::path dir_;
  Json config_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, StatsOnFixture) {
  ASSERT_EQ(Run({"stats", "--config", WriteConfig()}), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("train\t50\t"), std::string::npos) << out_.str();
  EXPECT_NE(Slurp(Out("train.stats")).find("sentences=50"), std::string::npos);
}

TEST_F(CliTest, EmptyCorpusGivesZeroedReport) {
  std::ofstream(dir_ / "empty.conll") << "";
  ASSERT_EQ(Run({"stats", "--seed", "1", "--out", (dir_ / "out").string(),
                 "--input", (dir_ / "empty.conll").string()}),
            kExitOk)
      << err_.str();
  const std::string report = Slurp(Out("empty.conll.stats"));
  EXPECT_NE(report.find("sentences=0"), std::string::npos) << report;
  EXPECT_NE(report.find("entities=0"), std::string::npos) << report;
  EXPECT_NE(report.find("labelled_fraction=0\n"), std::string::npos) << report;
}

TEST_F(CliTest, BadPathNamesThePath) {
  const std::string missing = (dir_ / "missing.conll").string();
  EXPECT_EQ(Run({"stats", "--seed", "1", "--out", (dir_ / "out").string(),
                 "--input", missing}),
            kExitIo);
  EXPECT_NE(err_.str().find(missing), std::string::npos) << err_.str();
  EXPECT_EQ(Run({"stats", "--config", (dir_ / "none.json").string()}), kExitIo);
}

TEST_F(CliTest, SeedIsRequired) {
  config_.erase("seed");
  EXPECT_EQ(Run({"stats", "--config", WriteConfig()}), kExitValidation);
  EXPECT_NE(err_.str().find("seed"), std::string::npos);
}

TEST_F(CliTest, UnknownConfigKeyRejected) {
  config_["bogus"] = 1;
  EXPECT_EQ(Run({"stats", "--config", WriteConfig()}), kExitValidation);
  EXPECT_NE(err_.str().find("bogus"), std::string::npos);
}

TEST_F(CliTest, UnknownFlagRejected) {
  EXPECT_EQ(Run({"stats", "--frobnicate"}), kExitValidation);
  EXPECT_EQ(Run({}), kExitValidation);
}

TEST_F(CliTest, ConvertRoundTrip) {
  const fs::path config = WriteConfig();
  ASSERT_EQ(Run({"convert", "--config", config, "--to", "iobes"}), kExitOk)
      << err_.str();
  const std::string iobes = Slurp(Out("train.iobes.conll"));
  EXPECT_NE(iobes.find("S-ORG"), std::string::npos);
  ASSERT_EQ(Run({"convert", "--config", config, "--scheme", "iobes", "--to",
                 "bio", "--input", Out("train.iobes.conll")}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(Slurp(Out("train.iobes.bio.conll")),
            Slurp(kFixtures / "train.bio.conll"));
}

TEST_F(CliTest, CalibrateWritesCurveAndThresholds) {
  ASSERT_EQ(Run({"calibrate", "--config", WriteConfig()}), kExitOk)
      << err_.str();
  EXPECT_EQ(Lines(Out("cer_c1.tsv")).size(), 101u);
  const std::string t = Slurp(Out("thresholds_c1.txt"));
  EXPECT_NE(t.find("t_hat="), std::string::npos) << t;
  ASSERT_EQ(Run({"calibrate", "--config", WriteConfig(), "--t-prime", "0.2"}),
            kExitOk);
  EXPECT_NE(Slurp(Out("thresholds_c1.txt")).find("t_prime=0.2\n"),
            std::string::npos);
}

TEST_F(CliTest, CalibrateFromScoredExamples) {
  std::ofstream(dir_ / "scored.tsv") << "# confidence correct\n0.9\t1\n0.8\t1\n"
                                        "0.2\t0\n0.1\t0\n";
  config_["calibration"]["examples"] = {{"c1", (dir_ / "scored.tsv").string()}};
  config_["calibration"]["measures"] = {"c1"};
  ASSERT_EQ(Run({"calibrate", "--config", WriteConfig()}), kExitOk)
      << err_.str();
  EXPECT_NE(Slurp(Out("thresholds_c1.txt")).find("cer_at_t_hat=0\n"),
            std::string::npos);
}

TEST_F(CliTest, SelectRatioZeroIsIdentity) {
  ASSERT_EQ(Run({"select", "--config", WriteConfig(), "--ratio", "0",
                 "--threshold", "0.5"}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(Slurp(Out("train.selftrain.conll")),
            Slurp(kFixtures / "train.bio.conll"));
}

TEST_F(CliTest, SelectIsByteIdenticalOnRerun) {
  const fs::path config = WriteConfig();
  ASSERT_EQ(Run({"calibrate", "--config", config}), kExitOk) << err_.str();
  ASSERT_EQ(Run({"select", "--config", config}), kExitOk) << err_.str();
  const std::string first = Slurp(Out("train.selftrain.conll"));
  const std::string pool = Slurp(Out("pool.jsonl"));
  ASSERT_EQ(Run({"select", "--config", config}), kExitOk);
  EXPECT_EQ(Slurp(Out("train.selftrain.conll")), first);
  EXPECT_EQ(Slurp(Out("pool.jsonl")), pool);
  const Corpus merged = ReadCorpusFile(Out("train.selftrain.conll"), {},
                                       TagScheme::kBio);
  EXPECT_EQ(merged.size(), 55u);
  ASSERT_EQ(Run({"select", "--config", config, "--seed", "8"}), kExitOk);
  EXPECT_NE(Slurp(Out("train.selftrain.conll")), first);
}

TEST_F(CliTest, SelectShortfallFails) {
  EXPECT_EQ(Run({"select", "--config", WriteConfig(), "--threshold", "0.99",
                 "--ratio", "1"}),
            kExitValidation);
  EXPECT_FALSE(fs::exists(Out("train.selftrain.conll")));
}

TEST_F(CliTest, AugmentEntityReplacesOnlyLengthOneSpans) {
  const fs::path config = WriteConfig();
  ASSERT_EQ(Run({"augment", "--config", config}), kExitOk) << err_.str();
  const std::string corpus = Slurp(Out("augmented.conll"));
  const std::string provenance = Slurp(Out("augmented.provenance.jsonl"));
  const Corpus original =
      ReadCorpusFile(kFixtures / "train.bio.conll", {}, TagScheme::kBio);
  std::map<std::string, const Sentence*> by_ref;
  for (const Sentence& s : original.sentences) by_ref[s.source_id] = &s;
  for (const std::string& line : Lines(Out("augmented.provenance.jsonl"))) {
    const Json record = Json::parse(line);
    const Sentence& origin = *by_ref.at(record["origin_ref"]);
    const auto spans = SpansFromTags(origin.tags(), TagScheme::kBio);
    ASSERT_EQ(record["replacements"].size(), 1u);
    const std::size_t pos = record["replacements"][0]["position"];
    bool single = false;
    for (const EntitySpan& s : spans) single |= s.start == pos && s.end == pos;
    EXPECT_TRUE(single) << line;
  }
  ASSERT_EQ(Run({"augment", "--config", config}), kExitOk);
  EXPECT_EQ(Slurp(Out("augmented.conll")), corpus);
  EXPECT_EQ(Slurp(Out("augmented.provenance.jsonl")), provenance);
}

TEST_F(CliTest, AugmentContextWithoutEntitiesIsEmpty) {
  std::ofstream(dir_ / "plain.conll") << "a O\nb O\n\nc O\n\n";
  config_["corpora"]["train"] = (dir_ / "plain.conll").string();
  ASSERT_EQ(Run({"augment", "--config", WriteConfig(), "--strategy", "context"}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(Slurp(Out("augmented.conll")), "");
  EXPECT_NE(out_.str().find("delta_sentences_percent=0\n"), std::string::npos)
      << out_.str();
}

TEST_F(CliTest, FilterTokenProb) {
  const fs::path config = WriteConfig();
  ASSERT_EQ(Run({"augment", "--config", config, "--strategy", "mixed"}),
            kExitOk)
      << err_.str();
  ASSERT_EQ(Run({"filter", "--config", config, "--token-prob", "0"}), kExitOk)
      << err_.str();
  EXPECT_EQ(Slurp(Out("filtered.conll")), Slurp(Out("augmented.conll")));
  ASSERT_EQ(Run({"filter", "--config", config, "--token-prob", "0.5"}),
            kExitOk);
  for (const std::string& line : Lines(Out("filtered.provenance.jsonl"))) {
    EXPECT_GE(Json::parse(line)["min_token_prob"].get<double>(), 0.5);
  }
  EXPECT_LT(Lines(Out("filtered.provenance.jsonl")).size(),
            Lines(Out("augmented.provenance.jsonl")).size());
}

TEST_F(CliTest, ReportWritesAnalysis) {
  ASSERT_EQ(Run({"report", "--config", WriteConfig()}), kExitOk) << err_.str();
  EXPECT_EQ(Lines(Out("confidence_errors.tsv")).size(), 13u);
  EXPECT_NE(Slurp(Out("confidence_errors.txt")).find("sentences=12"),
            std::string::npos);
}

TEST_F(CliTest, ProbeAgainstProcessBackend) {
  config_["backend"] = {{"transport", "stdio"},
                        {"command", std::string(FAKE_MLM_SERVER) + " normal"}};
  ASSERT_EQ(Run({"probe", "--config", WriteConfig()}), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("replies=1000"), std::string::npos);
}

TEST_F(CliTest, BackendFailureExitCode) {
  config_["backend"] = {{"transport", "stdio"},
                        {"command", std::string(FAKE_MLM_SERVER) + " error"}};
  EXPECT_EQ(Run({"augment", "--config", WriteConfig()}), kExitBackend);
  EXPECT_FALSE(fs::exists(Out("augmented.conll")));
  config_["backend"] = {{"transport", "carrier-pigeon"}};
  EXPECT_EQ(Run({"augment", "--config", WriteConfig()}), kExitValidation);
}

}  // namespace
}  // namespace neradapt::cli
