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

#ifndef CATMAP_STAGES_H_
#define CATMAP_STAGES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "catmap/embedding.h"
#include "catmap/matcher.h"
#include "catmap/ontology.h"
#include "catmap/phrase.h"
#include "catmap/propagate.h"
#include "catmap/resolver.h"
#include "catmap/typing.h"

namespace catmap {

// Batch kernels over every class of a source taxonomy. Results are indexed
// by class index, so they do not depend on the worker count.

struct ParseStats {
  int64_t parsed = 0;
  int64_t annotated = 0;  // taken from the annotation provider
  int64_t no_root = 0;
};

// Class text: the label, or the id when the label is blank, normalized.
std::string ClassText(const OntologyClass &cls);

PhraseTable ParseAll(const TaxonomyGraph &source,
                     const AnnotationProvider *annotations,
                     const ParserResources &resources, int workers,
                     ParseStats *stats = nullptr);

using MatchTable = std::vector<std::optional<MatchCandidate>>;

MatchTable MatchAll(const TaxonomyGraph &source, const PhraseTable &phrases,
                    const TargetIndex &targets, const EmbeddingStore &store,
                    double epsilon_tie, int workers,
                    MatchDiagnostics *diagnostics = nullptr);

struct TypeResult {
  std::optional<NerLabel> ner;
  std::optional<LexName> lexname;
  bool operator==(const TypeResult &) const = default;
};

struct TypeStats {
  int64_t members = 0;
  int64_t untyped_members = 0;
  int64_t majority_classes = 0;
  int64_t lexname_classes = 0;
};

std::vector<TypeResult> TypeAll(const TaxonomyGraph &source,
                                const PhraseTable &phrases,
                                const NerProvider *ner,
                                const LexnameLexicon *lexnames, int workers,
                                TypeStats *stats = nullptr);

// Matches scoring at least tau_exact, as seed pairs. The origin is
// EXACT_NAME when the matched phrase is the target's surface phrase
// (SplitCamelCase of its label) and SIMILARITY otherwise. Sorted by PairLess.
std::vector<ConfidentPair> SeedPairs(const TaxonomyGraph &source,
                                     const MatchTable &matches,
                                     const TaxonomyGraph &target,
                                     double tau_exact);

struct PropagationResult {
  std::vector<ConfidentPair> augmented;  // seeds + SIBLING pairs
  std::vector<ConfidentPair> inherited;  // INHERITED pairs
  AugmentCounts counts;
};

// Sibling augmentation of the seeds, then descendant inheritance from the
// augmented set. `source` must be acyclic.
PropagationResult PropagateAll(const TaxonomyGraph &source,
                               const PhraseTable &phrases,
                               const std::vector<ConfidentPair> &seeds);

// SIBLING pairs of the augmented set merged with the inherited pairs,
// sorted by PairLess.
std::vector<ConfidentPair> HierarchyPairs(const PropagationResult &result);

std::vector<ResolvedMapping> ResolveAll(
    const TaxonomyGraph &source, const MatchTable &matches,
    const std::vector<ConfidentPair> &hierarchy,
    const std::vector<TypeResult> &types, const TaxonomyGraph &target,
    const ResolverOptions &options, int workers);

}  // namespace catmap

#endif  // CATMAP_STAGES_H_
