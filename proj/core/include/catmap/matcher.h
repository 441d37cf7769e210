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

#ifndef CATMAP_MATCHER_H_
#define CATMAP_MATCHER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "catmap/embedding.h"
#include "catmap/ontology.h"
#include "catmap/phrase.h"

namespace catmap {

// Default thresholds. A similarity at or above kDefaultTauExact counts as an
// exact match; kDefaultTauSim is the similarity floor for the rule cascade;
// scores within kDefaultEpsilonTie of the best are treated as tied.
inline constexpr double kDefaultTauExact = 0.95;
inline constexpr double kDefaultTauSim = 0.75;
inline constexpr double kDefaultEpsilonTie = 0.01;

struct MatchCandidate {
  std::string target_class;
  std::string matched_phrase;
  double score = 0;

  bool operator==(const MatchCandidate &) const = default;
};

struct MatchDiagnostics {
  int64_t pairs_scored = 0;
  int64_t phrases_without_vector = 0;
  int64_t targets_without_vector = 0;
  int64_t zero_vectors = 0;

  MatchDiagnostics &operator+=(const MatchDiagnostics &o) {
    pairs_scored += o.pairs_scored;
    phrases_without_vector += o.phrases_without_vector;
    targets_without_vector += o.targets_without_vector;
    zero_vectors += o.zero_vectors;
    return *this;
  }
};

// "AmericanFootballTeam" -> "american football team". Breaks before an
// uppercase letter that follows a lowercase one, before the last capital of
// an acronym run that is followed by lowercase ("USPlace" -> "us place"), at
// letter/digit boundaries, and at underscores; then case-folds.
std::string SplitCamelCase(std::string_view target_name);

// Target classes prepared for repeated matching: surface phrase, vector row,
// surface tokens and depth, sorted by class id.
class TargetIndex {
 public:
  struct Entry {
    std::string id;
    std::string surface;
    std::optional<EmbeddingStore::Row> row;
    std::vector<std::string> tokens;  // sorted, unique
    int depth = 0;
  };

  // `targets` holds (class id, surface phrase) pairs; each id must be in
  // `graph`.
  TargetIndex(std::vector<std::pair<std::string, std::string>> targets,
              const EmbeddingStore &store, const TaxonomyGraph &graph);

  // Every class of a target graph, surface = SplitCamelCase(label).
  static TargetIndex FromGraph(const TaxonomyGraph &graph,
                               const EmbeddingStore &store);

  const std::vector<Entry> &entries() const { return entries_; }
  int64_t missing_vectors() const { return missing_vectors_; }

 private:
  std::vector<Entry> entries_;
  int64_t missing_vectors_ = 0;
};

// Scores every (phrase, target) pair that has vectors and returns the best
// target. Targets whose best score is within epsilon_tie of the overall best
// are tie-broken by (1) more tokens shared between the target's surface
// phrase and `full_label`, (2) greater depth, (3) smaller class id. The
// reported phrase is the first phrase reaching the chosen target's best
// score. Returns nullopt when no pair has vectors.
std::optional<MatchCandidate> BestMatch(const RootPhraseSet &phrases,
                                        const TargetIndex &targets,
                                        const EmbeddingStore &store,
                                        double epsilon_tie,
                                        std::string_view full_label,
                                        MatchDiagnostics *diagnostics = nullptr);

// Convenience form that prepares the target index on every call.
std::optional<MatchCandidate> BestMatch(
    const RootPhraseSet &phrases,
    const std::vector<std::pair<std::string, std::string>> &targets,
    const EmbeddingStore &store, double epsilon_tie,
    std::string_view full_label, const TaxonomyGraph &graph,
    MatchDiagnostics *diagnostics = nullptr);

// Closed threshold: score >= tau_exact.
bool IsConfidentExact(const MatchCandidate &candidate, double tau_exact);

// Token set used by the tie-break: FoldKey then split on spaces, unique.
std::vector<std::string> TokenSet(std::string_view text);

}  // namespace catmap

#endif  // CATMAP_MATCHER_H_
