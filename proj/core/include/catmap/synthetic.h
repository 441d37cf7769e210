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

#ifndef CATMAP_SYNTHETIC_H_
#define CATMAP_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "catmap/embedding.h"
#include "catmap/ontology.h"
#include "catmap/phrase.h"
#include "catmap/propagate.h"
#include "catmap/typing.h"

namespace catmap {

struct SyntheticOptions {
  int64_t classes = 1000;
  uint64_t seed = 20260101;
  int heads = 120;          // distinct root words
  int target_heads = 48;    // root words that name a target class
  int modifiers = 60;
  int places = 80;
  int dim = 32;
  double extra_parent_rate = 0.1;  // chance of a second parent
};

// A generated alignment problem: a source taxonomy of pseudo-word class
// names, a small target ontology, typing resources and word vectors.
// Generation is a pure function of the options.
struct SyntheticCorpus {
  TaxonomyGraph source;
  TaxonomyGraph target;
  ParserResources resources;
  NerProvider ner;
  LexnameLexicon lexnames;
  int dim = 0;
  std::unordered_map<std::string, std::vector<double>> word_vectors;
};

SyntheticCorpus GenerateSynthetic(const SyntheticOptions &options);

// Phrase vectors as sums of word vectors, for every phrase in `phrases` and
// every target surface.
EmbeddingStore EmbedSyntheticPhrases(const SyntheticCorpus &corpus,
                                     const PhraseTable &phrases);

}  // namespace catmap

#endif  // CATMAP_SYNTHETIC_H_
