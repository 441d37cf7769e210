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

#include "catmap/synthetic.h"

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>

#include "catmap/matcher.h"
#include "catmap/text.h"

namespace catmap {

namespace {

constexpr const char *kSyllables[] = {
    "ka", "lo", "mi", "tu", "re", "sa", "no", "vi", "pe", "du", "ga", "ze",
    "bo", "fi", "ru", "ta", "me", "ko", "li", "na", "po", "se", "hu", "ya"};
constexpr int kSyllableCount = sizeof(kSyllables) / sizeof(kSyllables[0]);

// Distinct pseudo-words of three syllables plus a suffix.
std::vector<std::string> Words(std::mt19937_64 &rng, int count,
                               std::set<std::string> *used,
                               const std::string &suffix) {
  std::uniform_int_distribution<int> pick(0, kSyllableCount - 1);
  std::vector<std::string> out;
  while (static_cast<int>(out.size()) < count) {
    std::string w;
    for (int s = 0; s < 3; ++s) w += kSyllables[pick(rng)];
    w += suffix;
    if (used->insert(w).second) out.push_back(w);
  }
  return out;
}

std::string Capitalize(std::string w) {
  if (!w.empty()) w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

std::string ClassId(int64_t i) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "S%08lld", static_cast<long long>(i));
  return buf;
}

}  // namespace

SyntheticCorpus GenerateSynthetic(const SyntheticOptions &o) {
  std::mt19937_64 rng(o.seed);
  std::set<std::string> used;
  auto heads = Words(rng, o.heads, &used, "");
  auto modifiers = Words(rng, o.modifiers, &used, "al");
  auto places = Words(rng, o.places, &used, "ia");

  SyntheticCorpus c;
  c.dim = o.dim;
  c.resources.AddPreposition("in");
  c.resources.AddPreposition("of");
  c.resources.AddPreposition("from");

  // Target ontology: Thing -> {Person, Organization, Place, Work} -> heads,
  // with the later half of the target heads nested under the earlier half.
  const char *kTop[] = {"Person", "Organization", "Place", "Work"};
  std::vector<OntologyClass> targets = {
      {"Thing", "Thing", ClassSource::kTargetOntology, std::nullopt}};
  std::vector<ClassEdge> target_edges;
  for (const char *t : kTop) {
    targets.push_back({t, t, ClassSource::kTargetOntology, std::nullopt});
    target_edges.push_back({t, "Thing"});
  }
  const int half = o.target_heads / 2;
  for (int h = 0; h < o.target_heads; ++h) {
    std::string id = Capitalize(heads[h]);
    targets.push_back({id, id, ClassSource::kTargetOntology, 100 + h});
    std::string parent =
        h < half ? std::string(kTop[h % 4]) : Capitalize(heads[h - half]);
    target_edges.push_back({id, parent});
  }
  // A few two-word targets nested under their head, e.g. "Xal head".
  const int compounds = std::min(8, half);
  for (int h = 0; h < compounds; ++h) {
    std::string id = Capitalize(modifiers[h % 4]) + Capitalize(heads[h]);
    targets.push_back({id, id, ClassSource::kTargetOntology, 50 + h});
    target_edges.push_back({id, Capitalize(heads[h])});
  }
  c.target = TaxonomyGraph::FromParts(ClassSource::kTargetOntology,
                                      std::move(targets),
                                      std::move(target_edges));

  for (int h = 0; h < o.heads; ++h) {
    int group = (h % half) % 4;
    if (group == 0) c.lexnames.Add(heads[h], {"noun.person"});
    if (group == 1) c.lexnames.Add(heads[h], {"noun.group"});
  }

  std::normal_distribution<double> gauss(0.0, 1.0);
  for (const auto *list : {&heads, &modifiers, &places}) {
    for (const std::string &w : *list) {
      std::vector<double> v(o.dim);
      for (double &x : v) x = gauss(rng);
      c.word_vectors.emplace(FoldKey(w), std::move(v));
    }
  }
  // Heads right after the target heads are near-synonyms of them.
  auto synonym_of = [&](int h) -> int {
    int base = h - o.target_heads;
    return base >= 0 && base < o.target_heads ? base : -1;
  };
  for (int h = o.target_heads; h < o.heads; ++h) {
    int base = synonym_of(h);
    if (base < 0) break;
    std::vector<double> v = c.word_vectors.at(FoldKey(heads[base]));
    for (double &x : v) x += 0.6 * gauss(rng);
    c.word_vectors[FoldKey(heads[h])] = std::move(v);
  }

  std::uniform_int_distribution<int> pick_head(0, o.heads - 1);
  std::uniform_int_distribution<int> pick_mod(0, o.modifiers - 1);
  std::uniform_int_distribution<int> pick_place(0, o.places - 1);
  std::uniform_int_distribution<int> pick_shape(0, 9);
  std::uniform_int_distribution<int> pick_label(0, kNerLabelCount);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<OntologyClass> classes;
  std::vector<ClassEdge> edges;
  std::vector<std::pair<std::string, std::string>> members;
  classes.reserve(o.classes);
  edges.reserve(o.classes + o.classes / 8);
  std::uniform_int_distribution<int> pick_common_mod(0, 3);
  auto modifier = [&]() -> const std::string & {
    return unit(rng) < 0.25 ? modifiers[pick_common_mod(rng)]
                            : modifiers[pick_mod(rng)];
  };
  std::vector<int> head_of(o.classes);
  for (int64_t i = 0; i < o.classes; ++i) {
    std::string id = ClassId(i);
    int64_t p = -1;
    if (i > 0) {
      // Parents come from a window of recent classes so the hierarchy stays
      // shallow and local.
      int64_t window = std::min<int64_t>(i, 64);
      std::uniform_int_distribution<int64_t> back(1, window);
      p = i - back(rng);
      edges.push_back({id, ClassId(p)});
      if (i > 1 && unit(rng) < o.extra_parent_rate) {
        int64_t q = i - back(rng);
        if (q != p) edges.push_back({id, ClassId(q)});
      }
    }
    int h = pick_head(rng);
    if (p >= 0) {
      double roll = unit(rng);
      int parent_head = head_of[p];
      int synonym = parent_head + o.target_heads;
      if (roll < 0.5) {
        h = parent_head;
      } else if (roll < 0.65 && parent_head < o.target_heads &&
                 synonym < o.heads) {
        h = synonym;
      }
    }
    head_of[i] = h;
    const std::string &head = heads[h];
    int shape = pick_shape(rng);
    std::string label;
    if (shape < 3) {
      label = Capitalize(modifier()) + " " + head;
    } else if (shape < 7) {
      label = Capitalize(modifier()) + " " + head + " in " +
              Capitalize(places[pick_place(rng)]);
    } else if (shape < 9) {
      label = Capitalize(head) + " in " + Capitalize(places[pick_place(rng)]);
    } else {
      label = Capitalize(modifier()) + " " + modifier() + " " + head;
    }
    classes.push_back({id, label, ClassSource::kSourceTaxonomy, std::nullopt});
    int member_count = static_cast<int>(i % 3);
    for (int m = 0; m < member_count; ++m) {
      std::string title = "E" + std::to_string(i) + "_" + std::to_string(m);
      int label_index = pick_label(rng);
      if (label_index < kNerLabelCount) {
        c.ner.Add(title, static_cast<NerLabel>(label_index));
      }
      members.emplace_back(id, std::move(title));
    }
  }
  c.source = TaxonomyGraph::FromParts(ClassSource::kSourceTaxonomy,
                                      std::move(classes), std::move(edges),
                                      std::move(members));
  return c;
}

EmbeddingStore EmbedSyntheticPhrases(const SyntheticCorpus &corpus,
                                     const PhraseTable &phrases) {
  EmbeddingStore store(corpus.dim);
  std::vector<double> sum(corpus.dim);
  auto add = [&](const std::string &phrase) {
    std::string key = FoldKey(phrase);
    if (store.Find(key)) return;
    std::fill(sum.begin(), sum.end(), 0.0);
    bool any = false;
    for (std::string_view word : SplitWhitespace(key)) {
      auto it = corpus.word_vectors.find(std::string(word));
      if (it == corpus.word_vectors.end()) continue;
      any = true;
      for (int d = 0; d < corpus.dim; ++d) sum[d] += it->second[d];
    }
    if (any) store.Add(key, sum);
  };
  for (const auto &set : phrases) {
    if (!set) continue;
    for (const std::string &p : set->phrases) add(p);
  }
  for (const OntologyClass &t : corpus.target.classes()) {
    add(SplitCamelCase(t.label));
  }
  return store;
}

}  // namespace catmap
