// Copyright 2026 The Catmap Authors.
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

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <gtest/gtest.h>
#include "json.hpp"

#include "catmap/cache.h"
#include "catmap/error.h"
#include "catmap/pipeline.h"
#include "catmap/records.h"
#include "harness.h"

namespace catmap {
namespace {

namespace fs = std::filesystem;

std::string Fixture(const std::string &name) {
  return std::string(CATMAP_FIXTURE_DIR) + "/" + name;
}

PipelineConfig FixtureConfig(const std::string &tag) {
  PipelineConfig c;
  c.target_edges = Fixture("dbpedia_edges.tsv");
  c.target_labels = Fixture("dbpedia_labels.tsv");
  c.source_edges = Fixture("cg_edges.tsv");
  c.source_labels = Fixture("cg_labels.tsv");
  c.members = Fixture("members.tsv");
  c.ner = Fixture("ner.tsv");
  c.lexnames = Fixture("lexnames.tsv");
  c.embeddings = Fixture("embeddings.tsv");
  c.benchmark = Fixture("benchmark.tsv");
  std::string dir = testing::TempDir(tag);
  c.cache_dir = dir + "/cache";
  c.out_dir = dir + "/out";
  return c;
}

std::map<std::string, std::string> ReadDir(const std::string &dir) {
  std::map<std::string, std::string> out;
  for (const auto &e : fs::directory_iterator(dir)) {
    out[e.path().filename().string()] = ReadFileOrThrow(e.path().string());
  }
  return out;
}

const std::vector<Stage> kAll = {Stage::kLoad,      Stage::kParse,
                                 Stage::kMatch,     Stage::kType,
                                 Stage::kPropagate, Stage::kResolve,
                                 Stage::kEvaluate,  Stage::kEmit};

TEST(Cache, Sha256KnownVector) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cache, KeyFieldsAreLengthPrefixed) {
  auto a = KeyBuilder().Add("x", "ab").Add("y", "c").Finish();
  auto b = KeyBuilder().Add("x", "a").Add("y", "bc").Finish();
  EXPECT_NE(a, b);
  EXPECT_EQ(a, KeyBuilder().Add("x", "ab").Add("y", "c").Finish());
  EXPECT_NE(KeyBuilder().Add("t", 0.95).Finish(),
            KeyBuilder().Add("t", 0.9500001).Finish());
}

TEST(Cache, StageCacheReadWrite) {
  StageCache cache(testing::TempDir("cache") + "/c");
  EXPECT_FALSE(cache.Has("parse", "k1", "tsv"));
  EXPECT_FALSE(cache.Read("parse", "k1", "tsv"));
  cache.Write("parse", "k1", "tsv", "hello\n");
  EXPECT_TRUE(cache.Has("parse", "k1", "tsv"));
  EXPECT_EQ(cache.Read("parse", "k1", "tsv"), "hello\n");
  EXPECT_EQ(cache.PathOf("parse", "k1", "tsv"), cache.dir() + "/parse/k1.tsv");
  EXPECT_THROW(ReadFileOrThrow(cache.dir() + "/nope"), Error);
}

TEST(Stages, NamesAndInputs) {
  for (Stage s : kAll) EXPECT_EQ(ParseStage(StageName(s)), s);
  EXPECT_FALSE(ParseStage("train"));
  EXPECT_TRUE(StageInputs(Stage::kLoad).empty());
  EXPECT_EQ(StageInputs(Stage::kMatch),
            (std::vector<Stage>{Stage::kLoad, Stage::kParse}));
}

TEST(Config, Validate) {
  PipelineConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.tau_sim = 0.99;
  EXPECT_THROW(c.Validate(), Error);
  c = PipelineConfig();
  c.epsilon_tie = -0.1;
  EXPECT_THROW(c.Validate(), Error);
  c = PipelineConfig();
  c.threads = 0;
  EXPECT_THROW(c.Validate(), Error);
}

TEST(Pipeline, FixtureEndToEnd) {
  auto cfg = FixtureConfig("e2e");
  Pipeline p(cfg);
  auto result = p.Run({Stage::kEmit, Stage::kEvaluate});
  ASSERT_EQ(result.stages.size(), 8u);
  for (const auto &s : result.stages) EXPECT_FALSE(s.cache_hit);
  p.WriteOutputs(result);
  auto metrics =
      nlohmann::json::parse(ReadFileOrThrow(cfg.out_dir + "/metrics.json"));
  EXPECT_EQ(metrics["accuracy"], 1.0);

  std::ifstream exp(Fixture("expected.tsv"));
  std::map<std::string, std::pair<std::string, std::string>> expected;
  for (std::string line; std::getline(exp, line);) {
    std::stringstream ss(line);
    std::string c, t, r;
    std::getline(ss, c, '\t');
    std::getline(ss, t, '\t');
    std::getline(ss, r, '\t');
    expected[c] = {t, r};
  }
  std::ifstream mf(cfg.out_dir + "/mappings.jsonl");
  auto mappings = ReadMappings(mf);
  ASSERT_EQ(mappings.size(), expected.size());
  for (const auto &m : mappings) {
    const auto &[t, r] = expected.at(m.source_class);
    EXPECT_EQ(m.target_class.value_or("MISSING"), t) << m.source_class;
    EXPECT_EQ(m.rule_fired(), r) << m.source_class;
  }
}

TEST(Pipeline, WarmCacheRecomputesNothing) {
  auto cfg = FixtureConfig("warm");
  std::map<std::string, std::string> first;
  {
    Pipeline p(cfg);
    p.WriteOutputs(p.Run(kAll));
    first = ReadDir(cfg.out_dir);
  }
  fs::remove_all(cfg.out_dir);
  cfg.threads = 4;
  Pipeline p(cfg);
  auto result = p.Run(kAll);
  for (const auto &s : result.stages) EXPECT_TRUE(s.cache_hit) << StageName(s.stage);
  p.WriteOutputs(result);
  auto second = ReadDir(cfg.out_dir);
  ASSERT_EQ(first.size(), second.size());
  for (const auto &[name, bytes] : first) {
    if (name == "run.json") continue;
    EXPECT_EQ(bytes, second.at(name)) << name;
  }
}

TEST(Pipeline, KeysFollowConfigurationNotThreads) {
  auto cfg = FixtureConfig("keys");
  Pipeline a(cfg);
  cfg.threads = 8;
  Pipeline b(cfg);
  EXPECT_EQ(a.KeyOf(Stage::kResolve), b.KeyOf(Stage::kResolve));
  cfg.tau_sim = 0.8;
  Pipeline c(cfg);
  EXPECT_EQ(a.KeyOf(Stage::kMatch), c.KeyOf(Stage::kMatch));
  EXPECT_NE(a.KeyOf(Stage::kResolve), c.KeyOf(Stage::kResolve));
  EXPECT_NE(a.KeyOf(Stage::kEmit), c.KeyOf(Stage::kEmit));
}

TEST(Pipeline, SingleStageNeedsCachedInputs) {
  auto cfg = FixtureConfig("single");
  Pipeline p(cfg);
  try {
    p.RunSingle(Stage::kMatch);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kStageDependency);
    EXPECT_FALSE(e.is_input_error());
    EXPECT_NE(std::string(e.what()).find("load"), std::string::npos);
  }
  p.RunSingle(Stage::kLoad);
  try {
    p.RunSingle(Stage::kMatch);
    FAIL();
  } catch (const Error &e) {
    EXPECT_NE(std::string(e.what()).find("parse"), std::string::npos);
  }
  p.RunSingle(Stage::kParse);
  auto r = p.RunSingle(Stage::kMatch);
  ASSERT_EQ(r.stages.size(), 1u);
  EXPECT_FALSE(r.stages[0].cache_hit);
  EXPECT_TRUE(p.CachedArtifact(Stage::kMatch, "matches.tsv"));
  EXPECT_TRUE(p.RunSingle(Stage::kMatch).stages[0].cache_hit);
}

TEST(Pipeline, MissingInputsAreInputErrors) {
  auto cfg = FixtureConfig("missing");
  cfg.source_edges = cfg.out_dir + "/does-not-exist.tsv";
  Pipeline p(cfg);
  try {
    p.Run({Stage::kLoad});
    FAIL();
  } catch (const Error &e) {
    EXPECT_TRUE(e.is_input_error());
  }
  auto no_vectors = FixtureConfig("novec");
  no_vectors.embeddings.clear();
  Pipeline q(no_vectors);
  EXPECT_THROW(q.Run({Stage::kMatch}), Error);
}

TEST(Pipeline, ManifestIsThreadFree) {
  auto cfg = FixtureConfig("manifest");
  Pipeline p(cfg);
  auto result = p.Run({Stage::kResolve});
  auto m = nlohmann::json::parse(p.Manifest(result));
  EXPECT_FALSE(m.dump().find("threads") != std::string::npos);
  EXPECT_EQ(m["config"]["tau_exact"], 0.95);
  EXPECT_TRUE(m.contains("inputs"));
}

TEST(EvaluateFiles, BaselineRow) {
  auto cfg = FixtureConfig("evalfiles");
  Pipeline p(cfg);
  p.WriteOutputs(p.Run({Stage::kResolve}));
  std::string pred = cfg.out_dir + "/mappings.jsonl";
  auto rows = EvaluateFiles(pred, cfg.benchmark, pred, nullptr);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].metrics.accuracy, 1.0);
  EXPECT_EQ(rows[1].system, "baseline");
  EXPECT_FALSE(rows[0].judgments);
}

}  // namespace
}  // namespace catmap
