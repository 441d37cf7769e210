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

#ifndef CATMAP_TYPING_H_
#define CATMAP_TYPING_H_

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "catmap/ontology.h"

namespace catmap {

// Named-entity labels produced by the external recognizer.
enum class NerLabel {
  kPerson,
  kNorp,
  kOrg,
  kFac,
  kGpe,
  kLoc,
  kProduct,
  kEvent,
  kWorkOfArt,
};

inline constexpr int kNerLabelCount = 9;

std::string_view NerLabelName(NerLabel label);
std::optional<NerLabel> ParseNerLabel(std::string_view name);

// Target class for each label: PERSON->Person, NORP/ORG->Organization,
// FAC->ArchitecturalStructure, GPE/LOC->Place, PRODUCT->Thing, EVENT->Event,
// WORK_OF_ART->Work.
std::string_view NerToTargetClass(NerLabel label);

struct TypeTally {
  std::array<int64_t, kNerLabelCount> counts{};
  int64_t total_members = 0;
  int64_t untyped = 0;

  int64_t count(NerLabel l) const { return counts[static_cast<int>(l)]; }
};

// entity title -> label, keyed on the verbatim title.
class NerProvider {
 public:
  // `entity_title<TAB>label`; labels outside the nine-value set are
  // rejected.
  void Load(std::istream &in, const std::string &name = "ner");
  void Add(std::string title, NerLabel label);
  std::optional<NerLabel> Find(std::string_view title) const;
  size_t size() const { return labels_.size(); }

 private:
  std::unordered_map<std::string, NerLabel> labels_;
};

// Tallies provider labels over the class's member titles (unknown titles
// count as untyped) and returns the label whose count is strictly greater
// than half of all members, if any.
std::pair<TypeTally, std::optional<NerLabel>> TallyAndMajority(
    const TaxonomyGraph &graph, TaxonomyGraph::Index cls,
    const NerProvider &provider);
std::pair<TypeTally, std::optional<NerLabel>> TallyAndMajority(
    const TaxonomyGraph &graph, std::string_view cls,
    const NerProvider &provider);

// Majority label of a finished tally, as above.
std::optional<NerLabel> StrictMajority(const TypeTally &tally);

// A lexicographer category such as "noun.person".
struct LexName {
  std::string value;

  bool is_person() const { return value == "noun.person"; }
  bool is_group() const { return value == "noun.group"; }
  bool operator==(const LexName &) const = default;
};

// lemma -> lexnames ordered by sense frequency.
class LexnameLexicon {
 public:
  // `lemma<TAB>lexname[,lexname...]`.
  void Load(std::istream &in, const std::string &name = "lexnames");
  void Add(std::string_view lemma, std::vector<std::string> lexnames);
  const std::vector<std::string> *Find(std::string_view lemma) const;
  size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::vector<std::string>> entries_;
};

// First-listed lexname of the (case-folded) root word, if known.
std::optional<LexName> LexnameOfRoot(std::string_view root_word,
                                     const LexnameLexicon &lexicon);

}  // namespace catmap

#endif  // CATMAP_TYPING_H_
