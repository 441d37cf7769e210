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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <gtest/gtest.h>
#include "json.hpp"

#include "catmap/cache.h"
#include "harness.h"

namespace catmap {
namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result RunCli(const std::string &args) {
  std::string cmd = std::string(CATMAP_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE *p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string FixtureArgs() {
  const std::string f = CATMAP_FIXTURE_DIR;
  return " --dbpedia-edges " + f + "/dbpedia_edges.tsv --dbpedia-labels " + f +
         "/dbpedia_labels.tsv --cg-edges " + f + "/cg_edges.tsv --cg-labels " +
         f + "/cg_labels.tsv --members " + f + "/members.tsv --ner " + f +
         "/ner.tsv --lexnames " + f + "/lexnames.tsv --embeddings " + f +
         "/embeddings.tsv";
}

TEST(Cli, ParsePrintsPhrases) {
  auto r = RunCli("parse --name 'Opera house in Puerto Rico'");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["root_word"], "house");
  EXPECT_EQ(j["phrases"], (std::vector<std::string>{
                              "house", "Opera house", "house in Puerto Rico"}));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(RunCli("--help").code, 0);
  EXPECT_EQ(RunCli("").code, 1);
  EXPECT_EQ(RunCli("frobnicate").code, 1);
  EXPECT_EQ(RunCli("align --no-such-flag").code, 1);
  EXPECT_EQ(RunCli("parse --name 'of Finland'").code, 1);
  auto dir = testing::TempDir("cli-codes");
  EXPECT_EQ(RunCli("align" + FixtureArgs() + " --tau-sim 0.99 --cache-dir " +
                   dir + "/c --out " + dir + "/o")
                .code,
            1);
  EXPECT_EQ(RunCli("align --cg-edges /nonexistent --cache-dir " + dir +
                   "/c --out " + dir + "/o")
                .code,
            1);
  EXPECT_EQ(RunCli("stage nonsense" + FixtureArgs() + " --cache-dir " + dir +
                   "/c --out " + dir + "/o")
                .code,
            1);
  // Missing upstream artifact: a stage failure.
  EXPECT_EQ(RunCli("stage match" + FixtureArgs() + " --cache-dir " + dir +
                   "/empty --out " + dir + "/o")
                .code,
            2);
}

TEST(Cli, StagesThenEvaluate) {
  auto dir = testing::TempDir("cli-stages");
  std::string common =
      FixtureArgs() + " --cache-dir " + dir + "/c --out " + dir + "/o";
  for (const char *s : {"load", "parse", "match", "type", "propagate",
                        "resolve"}) {
    ASSERT_EQ(RunCli(std::string("stage ") + s + common).code, 0) << s;
  }
  std::string gold = std::string(CATMAP_FIXTURE_DIR) + "/benchmark.tsv";
  auto ev = RunCli("evaluate --gold " + gold + common);
  ASSERT_EQ(ev.code, 0);
  auto metrics = nlohmann::json::parse(ReadFileOrThrow(dir + "/o/metrics.json"));
  EXPECT_EQ(metrics["accuracy"], 1.0);

  ASSERT_EQ(RunCli("emit-dataset" + common).code, 0);
  auto pairs = ReadFileOrThrow(dir + "/o/training_pairs.jsonl");
  EXPECT_NE(pairs.find("\"SIBLING\""), std::string::npos);

  std::string pred = dir + "/o/mappings.jsonl";
  auto cmp = RunCli("evaluate --pred " + pred + " --gold " + gold +
                    " --baseline " + pred + " --report " + dir + "/r.txt");
  ASSERT_EQ(cmp.code, 0);
  auto report = ReadFileOrThrow(dir + "/r.txt");
  EXPECT_NE(report.find("baseline"), std::string::npos);
  EXPECT_NE(report.find("1.000"), std::string::npos);
}

TEST(Cli, EvaluateWithoutResolveIsStageFailure) {
  auto dir = testing::TempDir("cli-eval");
  std::string gold = std::string(CATMAP_FIXTURE_DIR) + "/benchmark.tsv";
  EXPECT_EQ(RunCli("evaluate --gold " + gold + FixtureArgs() +
                   " --cache-dir " + dir + "/c --out " + dir + "/o")
                .code,
            2);
  EXPECT_EQ(RunCli("evaluate --pred " + dir + "/none.jsonl --gold " + gold)
                .code,
            1);
}

}  // namespace
}  // namespace catmap
