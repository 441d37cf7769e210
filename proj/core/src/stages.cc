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

#include "catmap/stages.h"

#include <algorithm>

#include "catmap/error.h"
#include "catmap/parallel.h"
#include "catmap/text.h"

namespace catmap {

std::string ClassText(const OntologyClass &cls) {
  return NormalizeLabel(Trim(cls.label).empty() ? cls.id : cls.label);
}

PhraseTable ParseAll(const TaxonomyGraph &source,
                     const AnnotationProvider *annotations,
                     const ParserResources &resources, int workers,
                     ParseStats *stats) {
  PhraseTable table(source.size());
  std::vector<uint8_t> annotated(source.size(), 0);
  ParallelFor(source.size(), workers, [&](size_t i) {
    std::string text = ClassText(source.at(static_cast<TaxonomyGraph::Index>(i)));
    try {
      const ParsedName *given = annotations ? annotations->Find(text) : nullptr;
      if (given) annotated[i] = 1;
      table[i] = ExtractRootPhrases(given ? *given
                                          : HeuristicParse(text, resources));
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kNoRoot) throw;
    }
  });
  if (stats) {
    for (size_t i = 0; i < table.size(); ++i) {
      if (table[i]) {
        ++stats->parsed;
      } else {
        ++stats->no_root;
      }
      stats->annotated += annotated[i];
    }
  }
  return table;
}

MatchTable MatchAll(const TaxonomyGraph &source, const PhraseTable &phrases,
                    const TargetIndex &targets, const EmbeddingStore &store,
                    double epsilon_tie, int workers,
                    MatchDiagnostics *diagnostics) {
  MatchTable table(source.size());
  std::vector<MatchDiagnostics> diag(source.size());
  ParallelFor(source.size(), workers, [&](size_t i) {
    if (!phrases[i]) return;
    table[i] = BestMatch(*phrases[i], targets, store, epsilon_tie,
                         ClassText(source.at(static_cast<TaxonomyGraph::Index>(i))),
                         &diag[i]);
    // The constant target term is summed once below.
    diag[i].targets_without_vector = 0;
  });
  if (diagnostics) {
    for (const auto &d : diag) *diagnostics += d;
    diagnostics->targets_without_vector += targets.missing_vectors();
  }
  return table;
}

std::vector<TypeResult> TypeAll(const TaxonomyGraph &source,
                                const PhraseTable &phrases,
                                const NerProvider *ner,
                                const LexnameLexicon *lexnames, int workers,
                                TypeStats *stats) {
  std::vector<TypeResult> out(source.size());
  std::vector<TypeTally> tallies(source.size());
  ParallelFor(source.size(), workers, [&](size_t i) {
    auto idx = static_cast<TaxonomyGraph::Index>(i);
    if (ner) {
      auto [tally, label] = TallyAndMajority(source, idx, *ner);
      tallies[i] = tally;
      out[i].ner = label;
    }
    if (lexnames && phrases[i]) {
      out[i].lexname = LexnameOfRoot(phrases[i]->root_word, *lexnames);
    }
  });
  if (stats) {
    for (size_t i = 0; i < out.size(); ++i) {
      stats->members += tallies[i].total_members;
      stats->untyped_members += tallies[i].untyped;
      stats->majority_classes += out[i].ner.has_value();
      stats->lexname_classes += out[i].lexname.has_value();
    }
  }
  return out;
}

std::vector<ConfidentPair> SeedPairs(const TaxonomyGraph &source,
                                     const MatchTable &matches,
                                     const TaxonomyGraph &target,
                                     double tau_exact) {
  std::vector<ConfidentPair> seeds;
  for (size_t i = 0; i < matches.size(); ++i) {
    const auto &m = matches[i];
    if (!m || !IsConfidentExact(*m, tau_exact)) continue;
    auto t = target.Find(m->target_class);
    bool same_name =
        t && FoldKey(m->matched_phrase) ==
                 FoldKey(SplitCamelCase(target.at(*t).label));
    ConfidentPair p;
    p.source_class = source.id(static_cast<TaxonomyGraph::Index>(i));
    p.target_class = m->target_class;
    p.origin = same_name ? PairOrigin::kExactName : PairOrigin::kSimilarity;
    p.score = m->score;
    p.matched_phrase = m->matched_phrase;
    seeds.push_back(std::move(p));
  }
  std::sort(seeds.begin(), seeds.end(), PairLess);
  return seeds;
}

PropagationResult PropagateAll(const TaxonomyGraph &source,
                               const PhraseTable &phrases,
                               const std::vector<ConfidentPair> &seeds) {
  if (!source.acyclic()) {
    throw Error(ErrorCode::kInvalidArgument,
                "propagation needs an acyclic source taxonomy");
  }
  PropagationResult r;
  r.augmented = AugmentDataset(seeds, source, phrases, &r.counts);
  r.inherited = PropagateDescendants(r.augmented, source);
  return r;
}

std::vector<ConfidentPair> HierarchyPairs(const PropagationResult &result) {
  std::vector<ConfidentPair> out;
  for (const ConfidentPair &p : result.augmented) {
    if (p.origin == PairOrigin::kSibling) out.push_back(p);
  }
  out.insert(out.end(), result.inherited.begin(), result.inherited.end());
  std::sort(out.begin(), out.end(), PairLess);
  return out;
}

std::vector<ResolvedMapping> ResolveAll(
    const TaxonomyGraph &source, const MatchTable &matches,
    const std::vector<ConfidentPair> &hierarchy,
    const std::vector<TypeResult> &types, const TaxonomyGraph &target,
    const ResolverOptions &options, int workers) {
  std::vector<ResolvedMapping> out(source.size());
  ParallelFor(source.size(), workers, [&](size_t i) {
    const std::string &id = source.id(static_cast<TaxonomyGraph::Index>(i));
    auto lo = std::lower_bound(
        hierarchy.begin(), hierarchy.end(), id,
        [](const ConfidentPair &p, const std::string &s) {
          return p.source_class < s;
        });
    auto hi = lo;
    while (hi != hierarchy.end() && hi->source_class == id) ++hi;
    std::span<const ConfidentPair> mine(
        hierarchy.data() + (lo - hierarchy.begin()),
        static_cast<size_t>(hi - lo));
    const TypeResult &t = types[i];
    out[i] = Resolve(BuildBundle(id, matches[i], mine, t.ner, t.lexname),
                     target, options);
  });
  return out;
}

}  // namespace catmap
