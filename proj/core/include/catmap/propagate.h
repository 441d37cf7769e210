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

#ifndef CATMAP_PROPAGATE_H_
#define CATMAP_PROPAGATE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catmap/ontology.h"
#include "catmap/phrase.h"

namespace catmap {

enum class PairOrigin { kExactName, kSimilarity, kSibling, kInherited };

std::string_view PairOriginName(PairOrigin origin);
std::optional<PairOrigin> ParsePairOrigin(std::string_view name);

// A trusted (source class, target class) mapping. Propagated pairs name the
// seed class they were copied from in `via`; seeds leave it empty.
// `matched_phrase` is the root phrase that produced a seed's match.
struct ConfidentPair {
  std::string source_class;
  std::string target_class;
  PairOrigin origin = PairOrigin::kSimilarity;
  std::optional<double> score;
  std::string via;
  std::string matched_phrase;

  bool operator==(const ConfidentPair &) const = default;
};

// Orders by (source, target, origin, via).
bool PairLess(const ConfidentPair &a, const ConfidentPair &b);

// Root phrases of the source taxonomy, indexed by class index; nullopt for
// classes without a root.
using PhraseTable = std::vector<std::optional<RootPhraseSet>>;

// Copies each confident class's targets to its strict descendants. A class
// inherits from the confident ancestors at the smallest upward distance; a
// class with its own confident pair inherits nothing. Equally near seeds
// all contribute. INHERITED inputs are ignored. Returns only the new
// INHERITED pairs, deduplicated by (source, target) with `via` set to the
// smallest contributing seed id, sorted by PairLess.
std::vector<ConfidentPair> PropagateDescendants(
    std::span<const ConfidentPair> confident, const TaxonomyGraph &graph);

// For each EXACT_NAME / SIMILARITY seed on class c, every other sibling s
// (sharing a parent with c) gains a SIBLING pair to the seed's target when
// its root word equals c's root word (case-insensitive) and, if the seed
// matched on a multi-token phrase, s's phrases contain that phrase too.
// Pairs that s already holds as a seed are not repeated. Returns only the
// new SIBLING pairs, deduplicated by (source, target), sorted.
std::vector<ConfidentPair> PropagateSiblings(
    std::span<const ConfidentPair> confident, const TaxonomyGraph &graph,
    const PhraseTable &root_phrases);

struct AugmentCounts {
  int64_t input = 0;
  int64_t sibling_pairs = 0;
  int64_t duplicates = 0;
  int64_t output = 0;
};

// Input pairs plus PropagateSiblings output, deduplicated by (source,
// target); on a collision the pair with the earlier origin (EXACT_NAME
// first) is kept.
std::vector<ConfidentPair> AugmentDataset(std::span<const ConfidentPair> confident,
                                          const TaxonomyGraph &graph,
                                          const PhraseTable &root_phrases,
                                          AugmentCounts *counts = nullptr);

}  // namespace catmap

#endif  // CATMAP_PROPAGATE_H_
