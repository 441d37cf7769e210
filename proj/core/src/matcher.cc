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

#include "catmap/matcher.h"

#include <algorithm>

#include "catmap/error.h"
#include "catmap/text.h"

namespace catmap {

namespace {

bool IsLower(char c) { return c >= 'a' && c <= 'z'; }
bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }
bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsAlpha(char c) { return IsLower(c) || IsUpper(c); }

size_t SharedCount(const std::vector<std::string> &a,
                   const std::vector<std::string> &b) {
  size_t i = 0, j = 0, n = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

}  // namespace

std::string SplitCamelCase(std::string_view name) {
  std::string spaced;
  spaced.reserve(name.size() + 8);
  for (size_t i = 0; i < name.size(); ++i) {
    char c = name[i];
    if (c == '_') {
      spaced.push_back(' ');
      continue;
    }
    if (i > 0) {
      char prev = name[i - 1];
      char next = i + 1 < name.size() ? name[i + 1] : '\0';
      bool boundary = (IsLower(prev) && IsUpper(c)) ||
                      (IsUpper(prev) && IsUpper(c) && IsLower(next)) ||
                      (IsAlpha(prev) && IsDigit(c)) ||
                      (IsDigit(prev) && IsAlpha(c));
      if (boundary) spaced.push_back(' ');
    }
    spaced.push_back(c);
  }
  return FoldKey(spaced);
}

std::vector<std::string> TokenSet(std::string_view text) {
  std::vector<std::string> out;
  const std::string folded = FoldKey(text);
  for (std::string_view t : SplitWhitespace(folded)) {
    out.emplace_back(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TargetIndex::TargetIndex(
    std::vector<std::pair<std::string, std::string>> targets,
    const EmbeddingStore &store, const TaxonomyGraph &graph) {
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end(),
                            [](const auto &a, const auto &b) {
                              return a.first == b.first;
                            }),
                targets.end());
  entries_.reserve(targets.size());
  for (auto &[id, surface] : targets) {
    Entry e;
    e.depth = graph.depth(graph.IndexOf(id));
    e.id = std::move(id);
    e.surface = FoldKey(surface);
    e.row = store.Find(e.surface);
    if (e.row && store.norm(*e.row) == 0) e.row.reset();
    if (!e.row) ++missing_vectors_;
    e.tokens = TokenSet(e.surface);
    entries_.push_back(std::move(e));
  }
}

TargetIndex TargetIndex::FromGraph(const TaxonomyGraph &graph,
                                   const EmbeddingStore &store) {
  std::vector<std::pair<std::string, std::string>> targets;
  targets.reserve(graph.size());
  for (const OntologyClass &c : graph.classes()) {
    targets.emplace_back(c.id, SplitCamelCase(c.label));
  }
  return TargetIndex(std::move(targets), store, graph);
}

std::optional<MatchCandidate> BestMatch(const RootPhraseSet &phrases,
                                        const TargetIndex &targets,
                                        const EmbeddingStore &store,
                                        double epsilon_tie,
                                        std::string_view full_label,
                                        MatchDiagnostics *diagnostics) {
  if (epsilon_tie < 0) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon_tie must be >= 0");
  }
  MatchDiagnostics local;
  MatchDiagnostics &diag = diagnostics ? *diagnostics : local;
  const auto &entries = targets.entries();
  const int dim = store.dim();

  // Best score per target and the phrase that first reached it.
  constexpr int kNoPhrase = -1;
  std::vector<double> best(entries.size(), 0);
  std::vector<int> best_phrase(entries.size(), kNoPhrase);
  for (size_t p = 0; p < phrases.phrases.size(); ++p) {
    auto prow = store.Find(phrases.phrases[p]);
    if (!prow) {
      ++diag.phrases_without_vector;
      continue;
    }
    const double pnorm = store.norm(*prow);
    if (pnorm == 0) {
      ++diag.zero_vectors;
      continue;
    }
    auto pv = store.row(*prow);
    for (size_t t = 0; t < entries.size(); ++t) {
      if (!entries[t].row) continue;
      auto tv = store.row(*entries[t].row);
      double dot = 0;
      for (int i = 0; i < dim; ++i) dot += pv[i] * tv[i];
      double score = dot / (pnorm * store.norm(*entries[t].row));
      ++diag.pairs_scored;
      if (best_phrase[t] == kNoPhrase || score > best[t]) {
        best[t] = score;
        best_phrase[t] = static_cast<int>(p);
      }
    }
  }
  diag.targets_without_vector += targets.missing_vectors();

  double top = 0;
  bool any = false;
  for (size_t t = 0; t < entries.size(); ++t) {
    if (best_phrase[t] == kNoPhrase) continue;
    if (!any || best[t] > top) top = best[t];
    any = true;
  }
  if (!any) return std::nullopt;

  auto label_tokens = TokenSet(full_label);
  size_t chosen = entries.size();
  size_t chosen_shared = 0;
  for (size_t t = 0; t < entries.size(); ++t) {
    if (best_phrase[t] == kNoPhrase || best[t] < top - epsilon_tie) continue;
    size_t shared = SharedCount(entries[t].tokens, label_tokens);
    if (chosen == entries.size()) {
      chosen = t;
      chosen_shared = shared;
      continue;
    }
    // Entries are in ascending id order, so equal keys keep the earlier id.
    if (shared > chosen_shared ||
        (shared == chosen_shared && entries[t].depth > entries[chosen].depth)) {
      chosen = t;
      chosen_shared = shared;
    }
  }
  return MatchCandidate{entries[chosen].id,
                        phrases.phrases[best_phrase[chosen]], best[chosen]};
}

std::optional<MatchCandidate> BestMatch(
    const RootPhraseSet &phrases,
    const std::vector<std::pair<std::string, std::string>> &targets,
    const EmbeddingStore &store, double epsilon_tie,
    std::string_view full_label, const TaxonomyGraph &graph,
    MatchDiagnostics *diagnostics) {
  TargetIndex index(targets, store, graph);
  return BestMatch(phrases, index, store, epsilon_tie, full_label,
                   diagnostics);
}

bool IsConfidentExact(const MatchCandidate &candidate, double tau_exact) {
  return candidate.score >= tau_exact;
}

}  // namespace catmap
