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

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "catmap/error.h"
#include "catmap/propagate.h"
#include "oracles.h"

namespace catmap {
namespace {

ConfidentPair Seed(std::string c, std::string t, std::string phrase = "x",
                   PairOrigin o = PairOrigin::kExactName) {
  return {std::move(c), std::move(t), o, 1.0, "", std::move(phrase)};
}

TEST(PropagateDescendants, NearestSeedsWin) {
  // R -> A -> B -> C, R seeded Person, B seeded Athlete.
  auto g = TaxonomyGraph::FromParts(
      ClassSource::kSourceTaxonomy,
      {{"A", "A"}, {"B", "B"}, {"C", "C"}, {"R", "R"}},
      {{"A", "R"}, {"B", "A"}, {"C", "B"}});
  std::vector<ConfidentPair> seeds = {Seed("R", "Person"),
                                      Seed("B", "Athlete")};
  auto out = PropagateDescendants(seeds, g);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].source_class, "A");
  EXPECT_EQ(out[0].target_class, "Person");
  EXPECT_EQ(out[0].via, "R");
  EXPECT_EQ(out[0].origin, PairOrigin::kInherited);
  EXPECT_FALSE(out[0].score);
  EXPECT_EQ(out[1].source_class, "C");
  EXPECT_EQ(out[1].target_class, "Athlete");
}

TEST(PropagateDescendants, EquallyNearSeedsAllContribute) {
  auto g = TaxonomyGraph::FromParts(
      ClassSource::kSourceTaxonomy, {{"P1", "P1"}, {"P2", "P2"}, {"X", "X"}},
      {{"X", "P1"}, {"X", "P2"}});
  std::vector<ConfidentPair> seeds = {Seed("P2", "Organization"),
                                      Seed("P1", "Person"),
                                      Seed("P2", "Person")};
  auto out = PropagateDescendants(seeds, g);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].target_class, "Organization");
  EXPECT_EQ(out[0].via, "P2");
  EXPECT_EQ(out[1].target_class, "Person");
  EXPECT_EQ(out[1].via, "P1");
}

TEST(PropagateDescendants, InheritedInputsIgnoredAndCyclesRejected) {
  auto g = TaxonomyGraph::FromParts(ClassSource::kSourceTaxonomy,
                                    {{"A", "A"}, {"B", "B"}}, {{"B", "A"}});
  ConfidentPair inh = Seed("A", "Person");
  inh.origin = PairOrigin::kInherited;
  std::vector<ConfidentPair> in = {inh};
  EXPECT_TRUE(PropagateDescendants(in, g).empty());
  auto cyc = TaxonomyGraph::FromParts(ClassSource::kSourceTaxonomy,
                                      {{"A", "A"}, {"B", "B"}},
                                      {{"B", "A"}, {"A", "B"}});
  EXPECT_THROW(PropagateDescendants(in, cyc), Error);
}

TEST(PropagateDescendants, RandomDagsAgreeWithPerNodeSearch) {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 150);
    auto dag = oracle::MakeRandomDag(rng, n, 3, 0.05);
    auto g = oracle::ToGraph(dag, ClassSource::kSourceTaxonomy);
    std::map<std::string, std::set<std::string>> seed_targets;
    std::vector<ConfidentPair> seeds;
    for (const auto &id : dag.ids) {
      if (rng() % 5 != 0) continue;
      int k = 1 + static_cast<int>(rng() % 2);
      for (int j = 0; j < k; ++j) {
        std::string t = "T" + std::to_string(rng() % 6);
        if (seed_targets[id].insert(t).second) seeds.push_back(Seed(id, t));
      }
    }
    std::shuffle(seeds.begin(), seeds.end(), rng);
    auto want = oracle::NearestInherited(dag.ids, dag.edges, seed_targets);
    auto got = PropagateDescendants(seeds, g);
    std::map<std::pair<std::string, std::string>, std::string> got_map;
    for (const auto &p : got) {
      got_map[{p.source_class, p.target_class}] = p.via;
    }
    EXPECT_EQ(got_map, want) << "trial " << trial;
    EXPECT_TRUE(std::is_sorted(got.begin(), got.end(), PairLess));
  }
}

class SiblingTest : public ::testing::Test {
 protected:
  // P has children Penn, Virginia, Coach; Q has child Other.
  void SetUp() override {
    graph_ = TaxonomyGraph::FromParts(
        ClassSource::kSourceTaxonomy,
        {{"Coach", "Coach"},
         {"Other", "Other"},
         {"P", "P"},
         {"Penn", "Penn"},
         {"Q", "Q"},
         {"Virginia", "Virginia"}},
        {{"Penn", "P"}, {"Virginia", "P"}, {"Coach", "P"}, {"Other", "Q"}});
    phrases_.resize(graph_.size());
    Set("Penn", {"player", "basketball player", "Penn basketball player"});
    Set("Virginia", {"player", "women's player", "basketball player",
                     "women's basketball player"});
    Set("Coach", {"coach", "basketball coach"});
    Set("Other", {"player", "basketball player"});
  }
  void Set(const std::string &id, std::vector<std::string> p) {
    phrases_[graph_.IndexOf(id)] = RootPhraseSet{p[0], p};
  }
  TaxonomyGraph graph_;
  PhraseTable phrases_;
};

TEST_F(SiblingTest, SharedRootPhraseGainsPair) {
  std::vector<ConfidentPair> seeds = {
      Seed("Penn", "BasketballPlayer", "basketball player")};
  auto out = PropagateSiblings(seeds, graph_, phrases_);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].source_class, "Virginia");
  EXPECT_EQ(out[0].target_class, "BasketballPlayer");
  EXPECT_EQ(out[0].origin, PairOrigin::kSibling);
  EXPECT_EQ(out[0].via, "Penn");
}

TEST_F(SiblingTest, MultiTokenPhraseMustBeShared) {
  std::vector<ConfidentPair> seeds = {
      Seed("Penn", "BasketballPlayer", "Penn basketball player")};
  EXPECT_TRUE(PropagateSiblings(seeds, graph_, phrases_).empty());
  // A single-token match only needs the root word.
  seeds[0].matched_phrase = "player";
  EXPECT_EQ(PropagateSiblings(seeds, graph_, phrases_).size(), 1u);
}

TEST_F(SiblingTest, PairsAlreadyHeldAreNotRepeated) {
  std::vector<ConfidentPair> seeds = {
      Seed("Penn", "BasketballPlayer", "basketball player"),
      Seed("Virginia", "BasketballPlayer", "basketball player",
           PairOrigin::kSimilarity),
      Seed("Virginia", "Athlete", "player")};
  auto out = PropagateSiblings(seeds, graph_, phrases_);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].source_class, "Penn");
  EXPECT_EQ(out[0].target_class, "Athlete");
}

TEST_F(SiblingTest, AugmentKeepsEarlierOrigin) {
  std::vector<ConfidentPair> seeds = {
      Seed("Penn", "BasketballPlayer", "basketball player"),
      Seed("Penn", "BasketballPlayer", "basketball player",
           PairOrigin::kSimilarity)};
  AugmentCounts counts;
  auto out = AugmentDataset(seeds, graph_, phrases_, &counts);
  EXPECT_EQ(counts.input, 2);
  EXPECT_EQ(counts.sibling_pairs, 1);
  EXPECT_EQ(counts.duplicates, 1);
  EXPECT_EQ(counts.output, 2);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].origin, PairOrigin::kExactName);
  EXPECT_EQ(out[1].origin, PairOrigin::kSibling);
}

TEST(PairOrigin, NamesRoundTrip) {
  for (auto o : {PairOrigin::kExactName, PairOrigin::kSimilarity,
                 PairOrigin::kSibling, PairOrigin::kInherited}) {
    EXPECT_EQ(ParsePairOrigin(PairOriginName(o)), o);
  }
  EXPECT_FALSE(ParsePairOrigin("NOPE"));
}

}  // namespace
}  // namespace catmap
