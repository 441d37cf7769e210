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

#include "catmap/resolver.h"

#include <algorithm>
#include <map>
#include <tuple>

#include "catmap/error.h"

namespace catmap {

namespace {

using Index = TaxonomyGraph::Index;

constexpr std::string_view kSimilarity = "similarity";
constexpr std::string_view kSibling = "sibling";
constexpr std::string_view kInherited = "inherited";
constexpr std::string_view kNer = "ner";
constexpr std::string_view kLexname = "lexname";

std::vector<ProvenanceEntry> MakeProvenance(const CandidateBundle &b) {
  std::vector<ProvenanceEntry> out;
  if (b.exact_or_sim) {
    out.push_back({std::string(kSimilarity), b.exact_or_sim->target_class,
                   b.exact_or_sim->score});
  }
  for (const ConfidentPair &p : b.hierarchy) {
    out.push_back({std::string(p.origin == PairOrigin::kSibling ? kSibling
                                                                : kInherited),
                   p.target_class, p.score});
  }
  if (b.ner_class) out.push_back({std::string(kNer), *b.ner_class, std::nullopt});
  if (b.lexname) {
    out.push_back({std::string(kLexname), b.lexname->value, std::nullopt});
  }
  return out;
}

void SortUnique(std::vector<Index> *v) {
  std::sort(v->begin(), v->end());
  v->erase(std::unique(v->begin(), v->end()), v->end());
}

}  // namespace

std::string_view RuleName(Rule rule) {
  switch (rule) {
    case Rule::kExact: return "EXACT";
    case Rule::kRule2: return "RULE2";
    case Rule::kRule3: return "RULE3";
    case Rule::kRule4: return "RULE4";
    case Rule::kMissing: return "MISSING";
  }
  return "MISSING";
}

std::string ResolvedMapping::rule_fired() const {
  std::string out = rule1_filtered ? "RULE1_FILTERED+" : "";
  out.append(RuleName(rule));
  return out;
}

CandidateBundle BuildBundle(std::string_view source_class,
                            const std::optional<MatchCandidate> &match,
                            std::span<const ConfidentPair> hierarchy,
                            const std::optional<NerLabel> &ner,
                            const std::optional<LexName> &lexname) {
  CandidateBundle b;
  b.source_class = std::string(source_class);
  b.exact_or_sim = match;
  for (const ConfidentPair &p : hierarchy) {
    if (p.source_class != source_class) continue;
    if (p.origin != PairOrigin::kSibling && p.origin != PairOrigin::kInherited) {
      continue;
    }
    b.hierarchy.push_back(p);
  }
  std::sort(b.hierarchy.begin(), b.hierarchy.end(), PairLess);
  if (ner) b.ner_class = std::string(NerToTargetClass(*ner));
  b.lexname = lexname;
  return b;
}

ResolvedMapping Resolve(const CandidateBundle &bundle,
                        const TaxonomyGraph &target_graph,
                        const ResolverOptions &options) {
  ResolvedMapping m;
  m.source_class = bundle.source_class;
  m.provenance = MakeProvenance(bundle);
  const TaxonomyGraph &g = target_graph;

  const auto &sim = bundle.exact_or_sim;
  std::optional<Index> sim_class;
  if (sim) sim_class = g.Find(sim->target_class);

  if (sim_class && sim->score >= options.tau_exact) {
    m.target_class = sim->target_class;
    m.rule = Rule::kExact;
    m.score = sim->score;
    return m;
  }

  // Person/group filter.
  std::optional<Index> anchor;
  if (bundle.lexname && bundle.lexname->is_person()) {
    anchor = g.Find(options.person_class);
  } else if (bundle.lexname && bundle.lexname->is_group()) {
    anchor = g.Find(options.group_class);
  }
  m.rule1_filtered = anchor.has_value();
  auto keep = [&](Index c) {
    return !anchor || c == *anchor || g.IsStrictAncestor(*anchor, c);
  };

  if (sim_class && !keep(*sim_class)) sim_class.reset();
  const bool sim_strong = sim_class && sim->score >= options.tau_sim;

  std::vector<Index> siblings, inherited;
  for (const ConfidentPair &p : bundle.hierarchy) {
    auto c = g.Find(p.target_class);
    if (!c || !keep(*c)) continue;
    (p.origin == PairOrigin::kSibling ? siblings : inherited).push_back(*c);
  }
  std::vector<Index> hierarchy = siblings.empty() ? inherited : siblings;
  SortUnique(&hierarchy);

  std::optional<Index> ner;
  if (bundle.ner_class) {
    ner = g.Find(*bundle.ner_class);
    if (ner && !keep(*ner)) ner.reset();
  }

  auto finish = [&](Rule rule, Index cls) {
    m.rule = rule;
    m.target_class = g.id(cls);
    if (sim_class && *sim_class == cls) m.score = sim->score;
    return m;
  };

  // Rule 2.
  std::vector<Index> collected = hierarchy;
  if (ner) collected.push_back(*ner);
  if (sim_strong) collected.push_back(*sim_class);
  SortUnique(&collected);
  if (collected.size() >= 2) {
    if (auto deepest = DeepestIfChain(g, collected)) {
      return finish(Rule::kRule2, *deepest);
    }
  }

  // Rule 3.
  std::map<Index, int> votes;
  if (ner) ++votes[*ner];
  for (Index c : hierarchy) ++votes[c];
  if (sim_strong) ++votes[*sim_class];
  std::optional<Index> agreed;
  auto better = [&](Index a, Index b) {
    int da = g.depth(a), db = g.depth(b);
    if (da != db) return da > db;
    const auto &ca = g.at(a).instance_count;
    const auto &cb = g.at(b).instance_count;
    if (ca && cb && *ca != *cb) return *ca < *cb;
    return g.id(a) < g.id(b);
  };
  for (const auto &[cls, n] : votes) {
    if (n < 2) continue;
    if (!agreed || better(cls, *agreed)) agreed = cls;
  }
  if (agreed) return finish(Rule::kRule3, *agreed);

  // Rule 4.
  if (ner) return finish(Rule::kRule4, *ner);

  m.rule = Rule::kMissing;
  return m;
}

CandidateBundle BundleFromProvenance(const ResolvedMapping &mapping) {
  CandidateBundle b;
  b.source_class = mapping.source_class;
  for (const ProvenanceEntry &e : mapping.provenance) {
    if (e.channel == kSimilarity) {
      b.exact_or_sim = MatchCandidate{e.value, "", e.score.value_or(0)};
    } else if (e.channel == kSibling || e.channel == kInherited) {
      b.hierarchy.push_back({mapping.source_class, e.value,
                             e.channel == kSibling ? PairOrigin::kSibling
                                                   : PairOrigin::kInherited,
                             e.score, "", ""});
    } else if (e.channel == kNer) {
      b.ner_class = e.value;
    } else if (e.channel == kLexname) {
      b.lexname = LexName{e.value};
    } else {
      throw Error(ErrorCode::kMalformedInput,
                  "unknown provenance channel '" + e.channel + "'");
    }
  }
  return b;
}

}  // namespace catmap
