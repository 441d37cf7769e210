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

#ifndef CATMAP_RESOLVER_H_
#define CATMAP_RESOLVER_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catmap/matcher.h"
#include "catmap/ontology.h"
#include "catmap/propagate.h"
#include "catmap/typing.h"

namespace catmap {

// All evidence gathered for one source class.
struct CandidateBundle {
  std::string source_class;
  std::optional<MatchCandidate> exact_or_sim;
  std::vector<ConfidentPair> hierarchy;  // SIBLING / INHERITED only
  std::optional<std::string> ner_class;
  std::optional<LexName> lexname;

  bool operator==(const CandidateBundle &) const = default;
};

enum class Rule { kExact, kRule2, kRule3, kRule4, kMissing };

std::string_view RuleName(Rule rule);

struct ProvenanceEntry {
  std::string channel;  // similarity | sibling | inherited | ner | lexname
  std::string value;    // class id, or the lexname for "lexname"
  std::optional<double> score;

  bool operator==(const ProvenanceEntry &) const = default;
};

struct ResolvedMapping {
  std::string source_class;
  std::optional<std::string> target_class;  // nullopt = MISSING
  Rule rule = Rule::kMissing;
  bool rule1_filtered = false;
  std::optional<double> score;
  std::vector<ProvenanceEntry> provenance;

  // "EXACT", "RULE2", ..., with a "RULE1_FILTERED+" prefix when the
  // person/group filter was active.
  std::string rule_fired() const;

  bool operator==(const ResolvedMapping &) const = default;
};

struct ResolverOptions {
  double tau_exact = kDefaultTauExact;
  double tau_sim = kDefaultTauSim;
  // Subtree roots used by the person/group filter.
  std::string person_class = "Person";
  std::string group_class = "Organization";
};

// Collects the channels for one class. `hierarchy` may hold pairs for other
// classes and seed pairs; only SIBLING/INHERITED pairs of `source_class` are
// kept, sorted.
CandidateBundle BuildBundle(std::string_view source_class,
                            const std::optional<MatchCandidate> &match,
                            std::span<const ConfidentPair> hierarchy,
                            const std::optional<NerLabel> &ner,
                            const std::optional<LexName> &lexname);

// Evaluated in order:
//  EXACT   similarity score >= tau_exact.
//  filter  lexname noun.person keeps only Person and its descendants,
//          noun.group keeps only Organization and its descendants.
//  RULE2   NER class, hierarchy classes and the similarity class (when
//          score >= tau_sim) hold >= 2 distinct classes forming a chain:
//          the deepest.
//  RULE3   a class named by >= 2 channels (similarity only when score >=
//          tau_sim; the hierarchy channel counts once): ties by greater
//          depth, smaller instance count, smaller id.
//  RULE4   the NER class.
//  MISSING otherwise.
// SIBLING candidates outrank INHERITED ones: when any SIBLING pair survives
// the filter, INHERITED pairs are not consulted. Candidates that are not
// classes of `target_graph` are ignored.
ResolvedMapping Resolve(const CandidateBundle &bundle,
                        const TaxonomyGraph &target_graph,
                        const ResolverOptions &options = {});

// Rebuilds the bundle recorded in a mapping's provenance.
CandidateBundle BundleFromProvenance(const ResolvedMapping &mapping);

}  // namespace catmap

#endif  // CATMAP_RESOLVER_H_
