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

#include "catmap/propagate.h"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "catmap/error.h"
#include "catmap/text.h"

namespace catmap {

namespace {

using Index = TaxonomyGraph::Index;

constexpr std::string_view kOriginNames[] = {"EXACT_NAME", "SIMILARITY",
                                             "SIBLING", "INHERITED"};

bool IsSeedOrigin(PairOrigin o) {
  return o == PairOrigin::kExactName || o == PairOrigin::kSimilarity;
}

void RequireAcyclic(const TaxonomyGraph &graph) {
  if (!graph.acyclic()) {
    throw Error(ErrorCode::kInvalidArgument,
                "propagation needs an acyclic graph; run BreakCycles first");
  }
}

// Sorts and keeps the first pair for each (source, target).
void SortAndDedup(std::vector<ConfidentPair> *pairs) {
  std::sort(pairs->begin(), pairs->end(), PairLess);
  pairs->erase(std::unique(pairs->begin(), pairs->end(),
                           [](const ConfidentPair &a, const ConfidentPair &b) {
                             return a.source_class == b.source_class &&
                                    a.target_class == b.target_class;
                           }),
               pairs->end());
}

bool ContainsPhrase(const RootPhraseSet &set, const std::string &folded) {
  for (const auto &p : set.phrases) {
    if (FoldKey(p) == folded) return true;
  }
  return false;
}

}  // namespace

std::string_view PairOriginName(PairOrigin origin) {
  return kOriginNames[static_cast<int>(origin)];
}

std::optional<PairOrigin> ParsePairOrigin(std::string_view name) {
  for (int i = 0; i < 4; ++i) {
    if (kOriginNames[i] == name) return static_cast<PairOrigin>(i);
  }
  return std::nullopt;
}

bool PairLess(const ConfidentPair &a, const ConfidentPair &b) {
  return std::tie(a.source_class, a.target_class, a.origin, a.via) <
         std::tie(b.source_class, b.target_class, b.origin, b.via);
}

std::vector<ConfidentPair> PropagateDescendants(
    std::span<const ConfidentPair> confident, const TaxonomyGraph &graph) {
  RequireAcyclic(graph);
  const size_t n = graph.size();

  // Targets held by each seeded class, sorted and unique.
  std::vector<std::vector<std::string>> seed_targets(n);
  for (const ConfidentPair &p : confident) {
    if (p.origin == PairOrigin::kInherited) continue;
    seed_targets[graph.IndexOf(p.source_class)].push_back(p.target_class);
  }
  for (auto &t : seed_targets) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
  }

  // For every class: distance to the nearest seeded ancestor-or-self and the
  // set of seeds at that distance. Seed sets are interned because most
  // classes share their single parent's set.
  constexpr int kFar = std::numeric_limits<int>::max();
  constexpr int kNoSet = -1;
  std::vector<int> dist(n, kFar);
  std::vector<int> near_set(n, kNoSet);
  std::vector<std::vector<Index>> pool;
  std::map<std::vector<Index>, int> interned;
  auto intern = [&](std::vector<Index> seeds) {
    auto [it, inserted] = interned.try_emplace(seeds, (int)pool.size());
    if (inserted) pool.push_back(std::move(seeds));
    return it->second;
  };

  for (Index i : graph.topological_order()) {
    if (!seed_targets[i].empty()) {
      dist[i] = 0;
      near_set[i] = intern({i});
      continue;
    }
    int best = kFar;
    int set = kNoSet;
    bool merged = false;
    std::vector<Index> merge;
    for (Index p : graph.parents(i)) {
      if (dist[p] == kFar) continue;
      int d = dist[p] + 1;
      if (d < best) {
        best = d;
        set = near_set[p];
        merged = false;
        merge.clear();
      } else if (d == best && near_set[p] != set) {
        if (!merged) {
          merge = pool[set];
          merged = true;
        }
        const auto &extra = pool[near_set[p]];
        merge.insert(merge.end(), extra.begin(), extra.end());
      }
    }
    if (best == kFar) continue;
    if (merged) {
      std::sort(merge.begin(), merge.end());
      merge.erase(std::unique(merge.begin(), merge.end()), merge.end());
      set = intern(std::move(merge));
    }
    dist[i] = best;
    near_set[i] = set;
  }

  std::vector<ConfidentPair> out;
  for (Index i = 0; i < n; ++i) {
    if (dist[i] == kFar || dist[i] == 0) continue;
    // Seeds are in id order, so the first seed to offer a target is the
    // smallest id.
    std::map<std::string, Index> via;
    for (Index s : pool[near_set[i]]) {
      for (const std::string &t : seed_targets[s]) via.try_emplace(t, s);
    }
    for (const auto &[target, seed] : via) {
      out.push_back({graph.id(i), target, PairOrigin::kInherited, std::nullopt,
                     graph.id(seed), ""});
    }
  }
  return out;
}

std::vector<ConfidentPair> PropagateSiblings(
    std::span<const ConfidentPair> confident, const TaxonomyGraph &graph,
    const PhraseTable &root_phrases) {
  if (root_phrases.size() != graph.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "phrase table size does not match the source graph");
  }
  const size_t n = graph.size();
  std::vector<std::pair<Index, const ConfidentPair *>> seeds;
  std::set<std::pair<Index, std::string_view>> seeded;
  for (const ConfidentPair &p : confident) {
    if (!IsSeedOrigin(p.origin)) continue;
    Index c = graph.IndexOf(p.source_class);
    seeds.emplace_back(c, &p);
    seeded.emplace(c, p.target_class);
  }
  std::sort(seeds.begin(), seeds.end(), [](const auto &a, const auto &b) {
    return std::tie(a.first, a.second->target_class) <
           std::tie(b.first, b.second->target_class);
  });

  std::vector<std::string> folded_root(n);
  for (Index i = 0; i < n; ++i) {
    if (root_phrases[i]) folded_root[i] = FoldKey(root_phrases[i]->root_word);
  }

  // parent -> root word -> children, built on first use.
  std::unordered_map<Index, std::unordered_map<std::string, std::vector<Index>>>
      buckets;
  auto bucket_of = [&](Index parent) -> auto & {
    auto [it, inserted] = buckets.try_emplace(parent);
    if (inserted) {
      for (Index s : graph.children(parent)) {
        if (root_phrases[s]) {
          it->second[folded_root[s]].push_back(s);
        }
      }
    }
    return it->second;
  };

  std::set<std::tuple<Index, std::string, std::string, std::string>> done;
  std::vector<ConfidentPair> out;
  for (const auto &[c, pair] : seeds) {
    if (!root_phrases[c]) continue;
    std::string gate;
    if (SplitWhitespace(pair->matched_phrase).size() > 1) {
      gate = FoldKey(pair->matched_phrase);
    }
    for (Index parent : graph.parents(c)) {
      if (!done.emplace(parent, folded_root[c], pair->target_class, gate)
               .second) {
        continue;
      }
      auto &by_root = bucket_of(parent);
      auto it = by_root.find(folded_root[c]);
      if (it == by_root.end()) continue;
      for (Index s : it->second) {
        if (s == c || seeded.count({s, pair->target_class})) continue;
        if (!gate.empty() && !ContainsPhrase(*root_phrases[s], gate)) continue;
        out.push_back({graph.id(s), pair->target_class, PairOrigin::kSibling,
                       pair->score, graph.id(c), ""});
      }
    }
  }
  // Several seeds may reach the same sibling; keep the smallest via.
  SortAndDedup(&out);
  return out;
}

std::vector<ConfidentPair> AugmentDataset(
    std::span<const ConfidentPair> confident, const TaxonomyGraph &graph,
    const PhraseTable &root_phrases, AugmentCounts *counts) {
  auto siblings = PropagateSiblings(confident, graph, root_phrases);
  std::vector<ConfidentPair> out(confident.begin(), confident.end());
  out.insert(out.end(), siblings.begin(), siblings.end());
  const size_t before = out.size();
  SortAndDedup(&out);
  if (counts != nullptr) {
    counts->input = static_cast<int64_t>(confident.size());
    counts->sibling_pairs = static_cast<int64_t>(siblings.size());
    counts->duplicates = static_cast<int64_t>(before - out.size());
    counts->output = static_cast<int64_t>(out.size());
  }
  return out;
}

}  // namespace catmap
