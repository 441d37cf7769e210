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

#ifndef CATMAP_DATASET_H_
#define CATMAP_DATASET_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "catmap/ontology.h"
#include "catmap/propagate.h"
#include "catmap/resolver.h"

namespace catmap {

// One distant-supervision example: class name text and its target class.
// `rule` is the resolver rule ("EXACT", "RULE2", ...) or the pair origin
// ("SIBLING", ...) for augmentation pairs.
struct TrainingPair {
  std::string source_class;
  std::string label;
  std::string target_class;
  std::string rule;
  std::optional<double> score;
  bool operator==(const TrainingPair &) const = default;
};

struct DatasetStats {
  int64_t resolved = 0;          // non-MISSING mappings seen
  int64_t augmentation = 0;      // augmentation pairs seen
  int64_t duplicates = 0;        // dropped (source, target) repeats
  int64_t below_confidence = 0;  // dropped by min_confidence
  int64_t records = 0;
  bool operator==(const DatasetStats &) const = default;
};

struct DatasetOptions {
  // Records with a score below this are dropped; unscored records are kept.
  double min_confidence = 0;
  // Extra numeric settings echoed into the header line.
  std::vector<std::pair<std::string, double>> settings;
};

// Merges resolver output and augmentation pairs into training records,
// deduplicated by (source, target) with resolver records winning, sorted by
// (source, target). Labels come from `source_graph`, falling back to the
// normalized id.
std::vector<TrainingPair> BuildTrainingPairs(
    std::span<const ResolvedMapping> resolved,
    std::span<const ConfidentPair> augmented, const TaxonomyGraph &source_graph,
    const DatasetOptions &options, DatasetStats *stats);

// Writes a header line {"stats": {...}, "settings": {...}} followed by one
// {"c", "label", "dbo", "rule", "score"} object per line.
DatasetStats EmitTrainingPairs(std::span<const ResolvedMapping> resolved,
                               std::span<const ConfidentPair> augmented,
                               const TaxonomyGraph &source_graph,
                               const DatasetOptions &options, std::ostream &out);

std::string FormatTrainingPair(const TrainingPair &pair);

// Reads a stream written by EmitTrainingPairs.
std::pair<DatasetStats, std::vector<TrainingPair>> ReadTrainingPairs(
    std::istream &in, const std::string &name = "training_pairs");

}  // namespace catmap

#endif  // CATMAP_DATASET_H_
