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

#include "catmap/typing.h"

#include "catmap/error.h"
#include "catmap/text.h"

namespace catmap {

namespace {

constexpr std::string_view kLabelNames[kNerLabelCount] = {
    "PERSON", "NORP", "ORG", "FAC", "GPE", "LOC", "PRODUCT", "EVENT",
    "WORK_OF_ART"};

constexpr std::string_view kLabelTargets[kNerLabelCount] = {
    "Person", "Organization", "Organization", "ArchitecturalStructure",
    "Place",  "Place",        "Thing",        "Event",
    "Work"};

bool ValidLexname(std::string_view v) {
  return v.size() > 5 && v.substr(0, 5) == "noun.";
}

}  // namespace

std::string_view NerLabelName(NerLabel label) {
  return kLabelNames[static_cast<int>(label)];
}

std::optional<NerLabel> ParseNerLabel(std::string_view name) {
  for (int i = 0; i < kNerLabelCount; ++i) {
    if (kLabelNames[i] == name) return static_cast<NerLabel>(i);
  }
  return std::nullopt;
}

std::string_view NerToTargetClass(NerLabel label) {
  return kLabelTargets[static_cast<int>(label)];
}

void NerProvider::Add(std::string title, NerLabel label) {
  labels_[std::move(title)] = label;
}

void NerProvider::Load(std::istream &in, const std::string &name) {
  LineReader reader(in, name);
  std::string_view line;
  while (reader.Next(&line)) {
    auto cols = Split(line, '\t');
    if (cols.size() != 2 || cols[0].empty()) {
      throw Error(ErrorCode::kMalformedInput,
                  reader.Where("expected entity_title<TAB>label"));
    }
    auto label = ParseNerLabel(Trim(cols[1]));
    if (!label) {
      throw Error(ErrorCode::kMalformedInput,
                  reader.Where("unknown entity label '" +
                               std::string(Trim(cols[1])) + "'"));
    }
    Add(std::string(cols[0]), *label);
  }
}

std::optional<NerLabel> NerProvider::Find(std::string_view title) const {
  auto it = labels_.find(std::string(title));
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

std::optional<NerLabel> StrictMajority(const TypeTally &tally) {
  for (int i = 0; i < kNerLabelCount; ++i) {
    // counts > total / 2, in integers.
    if (2 * tally.counts[i] > tally.total_members) {
      return static_cast<NerLabel>(i);
    }
  }
  return std::nullopt;
}

std::pair<TypeTally, std::optional<NerLabel>> TallyAndMajority(
    const TaxonomyGraph &graph, TaxonomyGraph::Index cls,
    const NerProvider &provider) {
  TypeTally tally;
  for (const std::string &title : graph.members(cls)) {
    ++tally.total_members;
    if (auto label = provider.Find(title)) {
      ++tally.counts[static_cast<int>(*label)];
    } else {
      ++tally.untyped;
    }
  }
  return {tally, StrictMajority(tally)};
}

std::pair<TypeTally, std::optional<NerLabel>> TallyAndMajority(
    const TaxonomyGraph &graph, std::string_view cls,
    const NerProvider &provider) {
  return TallyAndMajority(graph, graph.IndexOf(cls), provider);
}

void LexnameLexicon::Add(std::string_view lemma,
                         std::vector<std::string> lexnames) {
  entries_[FoldKey(lemma)] = std::move(lexnames);
}

void LexnameLexicon::Load(std::istream &in, const std::string &name) {
  LineReader reader(in, name);
  std::string_view line;
  while (reader.Next(&line)) {
    auto cols = Split(line, '\t');
    if (cols.size() != 2 || Trim(cols[0]).empty()) {
      throw Error(ErrorCode::kMalformedInput,
                  reader.Where("expected lemma<TAB>lexname[,lexname...]"));
    }
    std::vector<std::string> names;
    for (std::string_view v : Split(cols[1], ',')) {
      v = Trim(v);
      if (!ValidLexname(v)) {
        throw Error(ErrorCode::kMalformedInput,
                    reader.Where("bad lexname '" + std::string(v) + "'"));
      }
      names.emplace_back(v);
    }
    Add(Trim(cols[0]), std::move(names));
  }
}

const std::vector<std::string> *LexnameLexicon::Find(
    std::string_view lemma) const {
  auto it = entries_.find(FoldKey(lemma));
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<LexName> LexnameOfRoot(std::string_view root_word,
                                     const LexnameLexicon &lexicon) {
  const auto *names = lexicon.Find(root_word);
  if (names == nullptr || names->empty()) return std::nullopt;
  return LexName{names->front()};
}

}  // namespace catmap
