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

#include "catmap/phrase.h"

#include <algorithm>
#include <fstream>

#include "catmap/error.h"
#include "catmap/text.h"

namespace catmap {

namespace {

constexpr std::string_view kPosNames[] = {"NOUN", "PROPN", "ADJ",  "ADP",
                                          "NUM",  "CCONJ", "PART", "OTHER"};

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

// "1990", "20th", "1st", "1990s", "3,000", "2.5".
bool LooksNumeric(std::string_view t) {
  size_t i = 0;
  while (i < t.size() && (IsDigit(t[i]) || ((t[i] == ',' || t[i] == '.') &&
                                            i > 0 && i + 1 < t.size()))) {
    ++i;
  }
  if (i == 0 || !IsDigit(t[0])) return false;
  std::string rest = CaseFold(t.substr(i));
  return rest.empty() || rest == "st" || rest == "nd" || rest == "rd" ||
         rest == "th" || rest == "s";
}

bool HasAdjectiveSuffix(std::string_view t) {
  static constexpr std::string_view kSuffixes[] = {
      "ian", "ese", "ish", "ic", "al", "ous", "ive", "ful", "less", "an"};
  std::string folded = CaseFold(t);
  for (std::string_view s : kSuffixes) {
    if (folded.size() > s.size() + 2 &&
        std::string_view(folded).substr(folded.size() - s.size()) == s) {
      return true;
    }
  }
  return false;
}

bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }

bool IsNominal(Pos p) { return p == Pos::kNoun || p == Pos::kPropn; }

void CollectSubtree(const std::vector<std::vector<int>> &children, int node,
                    std::vector<int> *out) {
  out->push_back(node);
  for (int c : children[node]) CollectSubtree(children, c, out);
}

std::string PhraseText(const ParsedName &parsed, std::vector<int> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  std::string out;
  for (int i : indices) {
    if (!out.empty()) out.push_back(' ');
    out.append(parsed.tokens[i].text);
  }
  return out;
}

}  // namespace

std::string_view PosName(Pos pos) {
  return kPosNames[static_cast<int>(pos)];
}

std::optional<Pos> ParsePos(std::string_view name) {
  for (int i = 0; i < 8; ++i) {
    if (kPosNames[i] == name) return static_cast<Pos>(i);
  }
  return std::nullopt;
}

void ValidateParse(const ParsedName &parsed) {
  const int n = static_cast<int>(parsed.tokens.size());
  auto fail = [](const std::string &why) {
    throw Error(ErrorCode::kMalformedInput, "invalid parse: " + why);
  };
  if (n == 0) fail("no tokens");
  if (static_cast<int>(parsed.head_of.size()) != n) {
    fail("head_of has " + std::to_string(parsed.head_of.size()) +
         " entries for " + std::to_string(n) + " tokens");
  }
  for (int i = 0; i < n; ++i) {
    if (parsed.tokens[i].index != i) fail("token indices are not contiguous");
    if (parsed.tokens[i].text.empty()) fail("empty token");
    int h = parsed.head_of[i];
    if (h < 0 || h >= n) fail("head index out of range");
    if (h == i && i != parsed.root_index) fail("more than one root");
  }
  if (parsed.root_index < 0 || parsed.root_index >= n ||
      parsed.head_of[parsed.root_index] != parsed.root_index) {
    fail("root does not point to itself");
  }
  for (int i = 0; i < n; ++i) {
    int x = i;
    for (int steps = 0; x != parsed.root_index; ++steps) {
      if (steps > n) fail("head_of contains a cycle");
      x = parsed.head_of[x];
    }
  }
  if (!IsNominal(parsed.tokens[parsed.root_index].pos)) {
    fail("root token '" + parsed.tokens[parsed.root_index].text +
         "' is not a noun");
  }
}

std::string NormalizeLabel(std::string_view raw) {
  std::string spaced(raw);
  std::replace(spaced.begin(), spaced.end(), '_', ' ');
  std::string out = CollapseWhitespace(spaced);
  if (out.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "label is empty after normalization: '" + std::string(raw) +
                    "'");
  }
  return out;
}

void ParserResources::AddLexiconEntry(std::string_view token, Pos pos) {
  lexicon_[CaseFold(token)] = pos;
}

void ParserResources::AddPreposition(std::string_view token) {
  prepositions_.insert(CaseFold(token));
}

void ParserResources::LoadLexicon(std::istream &in, const std::string &name) {
  LineReader reader(in, name);
  std::string_view line;
  while (reader.Next(&line)) {
    auto cols = Split(line, '\t');
    std::optional<Pos> pos;
    if (cols.size() == 2) pos = ParsePos(Trim(cols[1]));
    if (!pos || Trim(cols[0]).empty()) {
      throw Error(ErrorCode::kMalformedInput,
                  reader.Where("expected token<TAB>POS"));
    }
    AddLexiconEntry(Trim(cols[0]), *pos);
  }
}

void ParserResources::LoadPrepositions(std::istream &in,
                                       const std::string &name) {
  LineReader reader(in, name);
  std::string_view line;
  while (reader.Next(&line)) {
    std::string_view tok = Trim(line);
    if (tok.empty()) continue;
    if (SplitWhitespace(tok).size() != 1) {
      throw Error(ErrorCode::kMalformedInput,
                  reader.Where("expected one token per line"));
    }
    AddPreposition(tok);
  }
}

std::optional<Pos> ParserResources::LexiconPos(std::string_view token) const {
  auto it = lexicon_.find(CaseFold(token));
  if (it == lexicon_.end()) return std::nullopt;
  return it->second;
}

bool ParserResources::IsPreposition(std::string_view token) const {
  return prepositions_.count(CaseFold(token)) > 0;
}

ParserResources LoadParserResources(const std::string &lexicon_path,
                                    const std::string &prepositions_path) {
  ParserResources res;
  std::ifstream lex(lexicon_path);
  if (!lex) throw Error(ErrorCode::kIo, "cannot open " + lexicon_path);
  res.LoadLexicon(lex, lexicon_path);
  std::ifstream preps(prepositions_path);
  if (!preps) throw Error(ErrorCode::kIo, "cannot open " + prepositions_path);
  res.LoadPrepositions(preps, prepositions_path);
  return res;
}

ParsedName HeuristicParse(std::string_view name,
                          const ParserResources &resources) {
  ParsedName parsed;
  auto words = SplitWhitespace(name);
  const int n = static_cast<int>(words.size());
  if (n == 0) throw Error(ErrorCode::kNoRoot, "empty class name");

  std::vector<std::optional<Pos>> tags(n);
  int first_adp = n;
  for (int i = 0; i < n; ++i) {
    std::string_view w = words[i];
    if (auto lex = resources.LexiconPos(w)) {
      tags[i] = *lex;
    } else if (resources.IsPreposition(w)) {
      tags[i] = Pos::kAdp;
    } else if (LooksNumeric(w)) {
      tags[i] = Pos::kNum;
    } else if (i > 0 && IsUpper(w[0])) {
      tags[i] = Pos::kPropn;
    }
    if (tags[i] == Pos::kAdp && first_adp == n) first_adp = i;
  }
  for (int i = 0; i < n; ++i) {
    if (tags[i]) continue;
    if (i == first_adp - 1) {
      tags[i] = Pos::kNoun;
    } else {
      tags[i] = HasAdjectiveSuffix(words[i]) ? Pos::kAdj : Pos::kNoun;
    }
  }

  int head = -1;
  for (int i = first_adp - 1; i >= 0; --i) {
    if (IsNominal(*tags[i])) {
      head = i;
      break;
    }
  }
  if (head < 0) {
    throw Error(ErrorCode::kNoRoot,
                "no noun before the first preposition in '" +
                    std::string(name) + "'");
  }

  parsed.tokens.reserve(n);
  parsed.head_of.assign(n, head);
  for (int i = 0; i < n; ++i) {
    parsed.tokens.push_back({std::string(words[i]), *tags[i], i});
  }
  int current_adp = -1;
  for (int i = first_adp; i < n; ++i) {
    if (*tags[i] == Pos::kAdp) {
      current_adp = i;
      parsed.head_of[i] = head;
    } else {
      parsed.head_of[i] = current_adp;
    }
  }
  parsed.root_index = head;
  return parsed;
}

void AnnotationProvider::Add(std::string_view name, std::string_view pos_tags,
                             std::string_view head_indices) {
  std::string key = NormalizeLabel(name);
  auto words = SplitWhitespace(key);
  auto tags = SplitWhitespace(pos_tags);
  auto heads = SplitWhitespace(head_indices);
  if (tags.size() != words.size() || heads.size() != words.size()) {
    throw Error(ErrorCode::kMalformedInput,
                "annotation for '" + key + "' has " +
                    std::to_string(tags.size()) + " tags and " +
                    std::to_string(heads.size()) + " heads for " +
                    std::to_string(words.size()) + " tokens");
  }
  ParsedName parsed;
  parsed.root_index = -1;
  for (size_t i = 0; i < words.size(); ++i) {
    auto pos = ParsePos(tags[i]);
    int64_t h = 0;
    if (!pos || !ParseInt64(heads[i], &h)) {
      throw Error(ErrorCode::kMalformedInput,
                  "annotation for '" + key + "' has a bad tag or head index");
    }
    int idx = static_cast<int>(i);
    parsed.tokens.push_back({std::string(words[i]), *pos, idx});
    parsed.head_of.push_back(static_cast<int>(h));
    if (h == idx && parsed.root_index < 0) parsed.root_index = idx;
  }
  ValidateParse(parsed);
  entries_[key] = std::move(parsed);
}

void AnnotationProvider::Load(std::istream &in, const std::string &name) {
  LineReader reader(in, name);
  std::string_view line;
  while (reader.Next(&line)) {
    auto cols = Split(line, '\t');
    if (cols.size() != 3) {
      throw Error(ErrorCode::kMalformedInput,
                  reader.Where("expected name<TAB>pos_tags<TAB>head_indices"));
    }
    try {
      Add(cols[0], cols[1], cols[2]);
    } catch (const Error &e) {
      throw Error(e.code(), reader.Where(e.what()));
    }
  }
}

const ParsedName *AnnotationProvider::Find(std::string_view name) const {
  auto it = entries_.find(std::string(name));
  return it == entries_.end() ? nullptr : &it->second;
}

ParsedName Annotate(std::string_view name, const AnnotationProvider *provider,
                    const ParserResources &resources) {
  if (provider != nullptr) {
    if (const ParsedName *entry = provider->Find(name)) {
      ValidateParse(*entry);
      return *entry;
    }
  }
  return HeuristicParse(name, resources);
}

RootPhraseSet ExtractRootPhrases(const ParsedName &parsed) {
  const int n = static_cast<int>(parsed.tokens.size());
  const int root = parsed.root_index;
  std::vector<std::vector<int>> children(n);
  for (int i = 0; i < n; ++i) {
    if (i != root) children[parsed.head_of[i]].push_back(i);
  }

  std::vector<std::vector<int>> modifiers;     // left subtrees of the root
  std::vector<std::vector<int>> prepositions;  // right ADP subtrees
  for (int c : children[root]) {
    std::vector<int> subtree;
    CollectSubtree(children, c, &subtree);
    if (c < root) {
      modifiers.push_back(std::move(subtree));
    } else if (parsed.tokens[c].pos == Pos::kAdp) {
      prepositions.push_back(std::move(subtree));
    }
  }

  RootPhraseSet out;
  out.root_word = parsed.tokens[root].text;
  std::unordered_set<std::string> seen;
  auto emit = [&](std::string phrase) {
    if (seen.insert(phrase).second) out.phrases.push_back(std::move(phrase));
  };
  emit(out.root_word);

  const int k = static_cast<int>(modifiers.size());
  auto emit_subset = [&](const std::vector<int> &picked) {
    std::vector<int> indices{root};
    for (int m : picked) {
      indices.insert(indices.end(), modifiers[m].begin(), modifiers[m].end());
    }
    emit(PhraseText(parsed, std::move(indices)));
  };
  if (k <= kMaxEnumeratedModifiers) {
    // Combinations by size, each size in lexicographic order.
    for (int size = 1; size <= k; ++size) {
      std::vector<int> pick(size);
      for (int i = 0; i < size; ++i) pick[i] = i;
      for (;;) {
        emit_subset(pick);
        int i = size - 1;
        while (i >= 0 && pick[i] == k - size + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  } else {
    for (int m = 0; m < k; ++m) emit_subset({m});
    std::vector<int> all(k);
    for (int m = 0; m < k; ++m) all[m] = m;
    emit_subset(all);
  }

  for (const auto &pp : prepositions) {
    std::vector<int> indices{root};
    indices.insert(indices.end(), pp.begin(), pp.end());
    emit(PhraseText(parsed, std::move(indices)));
  }
  return out;
}

}  // namespace catmap
