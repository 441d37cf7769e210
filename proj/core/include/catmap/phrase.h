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

#ifndef CATMAP_PHRASE_H_
#define CATMAP_PHRASE_H_

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace catmap {

// Coarse part-of-speech tags; enough to find the head noun of a class name.
enum class Pos { kNoun, kPropn, kAdj, kAdp, kNum, kCconj, kPart, kOther };

std::string_view PosName(Pos pos);
std::optional<Pos> ParsePos(std::string_view name);

struct Token {
  std::string text;
  Pos pos = Pos::kOther;
  int index = 0;

  bool operator==(const Token &) const = default;
};

// A dependency tree over the tokens of one class name. head_of[root_index]
// == root_index.
struct ParsedName {
  std::vector<Token> tokens;
  std::vector<int> head_of;
  int root_index = 0;

  bool operator==(const ParsedName &) const = default;
};

// Throws kMalformedInput unless `parsed` is a single tree rooted at a noun.
void ValidateParse(const ParsedName &parsed);

// The root word and its candidate phrases, root word first, then modifier
// combinations, then preposition extensions. Deduplicated.
struct RootPhraseSet {
  std::string root_word;
  std::vector<std::string> phrases;

  bool operator==(const RootPhraseSet &) const = default;
};

// Underscores become spaces, whitespace runs collapse, ends are trimmed.
// Casing is preserved. Throws kInvalidArgument if nothing is left.
std::string NormalizeLabel(std::string_view raw);

// Token -> Pos table plus the closed preposition list, both loaded from
// editable data files. Lookups are case-insensitive.
class ParserResources {
 public:
  ParserResources() = default;

  // `token<TAB>pos` lines.
  void LoadLexicon(std::istream &in, const std::string &name = "lexicon");
  // One preposition per line.
  void LoadPrepositions(std::istream &in,
                        const std::string &name = "prepositions");

  void AddLexiconEntry(std::string_view token, Pos pos);
  void AddPreposition(std::string_view token);

  std::optional<Pos> LexiconPos(std::string_view token) const;
  bool IsPreposition(std::string_view token) const;

  size_t lexicon_size() const { return lexicon_.size(); }
  size_t preposition_count() const { return prepositions_.size(); }

 private:
  std::unordered_map<std::string, Pos> lexicon_;
  std::unordered_set<std::string> prepositions_;
};

// Loads `<dir>/pos_lexicon.tsv` and `<dir>/prepositions.txt`.
ParserResources LoadParserResources(const std::string &lexicon_path,
                                    const std::string &prepositions_path);

// Rule-based parse for noun-phrase class names:
//  - tags come from the lexicon, then the preposition list (ADP), numeric
//    and ordinal patterns (NUM), capitalization of non-initial tokens
//    (PROPN), NOUN for the last token before the first preposition, and
//    adjective suffixes (ADJ) or NOUN for the remaining tokens;
//  - the head is the last NOUN/PROPN before the first preposition;
//  - tokens before the first preposition attach to the head, each
//    preposition attaches to the head and heads the tokens up to the next
//    preposition.
// Throws kNoRoot when no noun precedes the first preposition.
ParsedName HeuristicParse(std::string_view name,
                          const ParserResources &resources);

// Precomputed parses keyed by normalized class name, from lines
// `name<TAB>pos_tags<TAB>head_indices` (space-separated tags/indices, one per
// space-separated token of the name). Entries are validated at load time.
class AnnotationProvider {
 public:
  AnnotationProvider() = default;

  void Load(std::istream &in, const std::string &name = "annotations");
  // Validates and stores one entry; throws kMalformedInput when invalid.
  void Add(std::string_view name, std::string_view pos_tags,
           std::string_view head_indices);

  const ParsedName *Find(std::string_view name) const;
  size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, ParsedName> entries_;
};

// The provider entry when there is one, otherwise HeuristicParse.
ParsedName Annotate(std::string_view name, const AnnotationProvider *provider,
                    const ParserResources &resources);

// Largest modifier count for which every combination is enumerated. Above
// it only single modifiers and the full modifier set are emitted.
inline constexpr int kMaxEnumeratedModifiers = 6;

RootPhraseSet ExtractRootPhrases(const ParsedName &parsed);

}  // namespace catmap

#endif  // CATMAP_PHRASE_H_
