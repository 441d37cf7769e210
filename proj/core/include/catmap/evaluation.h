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

#ifndef CATMAP_EVALUATION_H_
#define CATMAP_EVALUATION_H_

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catmap/ontology.h"

namespace catmap {

struct BenchmarkEntry {
  std::string source_class;
  std::string gold_target;

  bool operator==(const BenchmarkEntry &) const = default;
};

// `source_class_id<TAB>gold_target_id`; a source may appear only once.
std::vector<BenchmarkEntry> LoadBenchmark(std::istream &in,
                                          const std::string &name = "benchmark");

using Predictions = std::map<std::string, std::optional<std::string>>;

struct ClassMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  int64_t support = 0;  // gold entries of this class
};

// Multi-class scores. A missing prediction is a false negative for the gold
// class and never a false positive. Macro averages run over gold classes
// with support > 0; classes that are only predicted appear in per_class with
// support 0 and are left out of the macro averages.
struct MetricReport {
  double macro_precision = 0;
  double macro_recall = 0;
  double macro_f1 = 0;
  double micro_precision = 0;
  double micro_recall = 0;
  double micro_f1 = 0;
  double accuracy = 0;
  std::map<std::string, ClassMetrics> per_class;

  int64_t total = 0;
  int64_t correct = 0;
  int64_t predicted = 0;  // non-missing predictions

  // Object with exactly the keys macro_precision, macro_recall, macro_f1,
  // micro_precision, micro_recall, micro_f1, accuracy, per_class.
  std::string ToJson() const;
};

// Throws kInvalidArgument when a benchmark source has no prediction entry.
MetricReport Evaluate(const Predictions &predictions,
                      const std::vector<BenchmarkEntry> &benchmark);

enum class Judgment { kCorrect, kWrongNotSpecific, kWrongOther, kMissing };

inline constexpr int kJudgmentCount = 4;

std::string_view JudgmentName(Judgment j);

// CORRECT if equal, MISSING if absent, WRONG_NOT_SPECIFIC if the prediction
// is a strict ancestor of the gold class, else WRONG_OTHER. Throws
// kUnknownId for a gold class outside the graph. A predicted class outside
// the graph is WRONG_OTHER.
Judgment Judge(const std::optional<std::string> &prediction,
               const std::string &gold, const TaxonomyGraph &target_graph);

struct JudgmentCounts {
  std::array<int64_t, kJudgmentCount> counts{};
  int64_t total() const;
  int64_t count(Judgment j) const { return counts[static_cast<int>(j)]; }
};

JudgmentCounts JudgeAll(const Predictions &predictions,
                        const std::vector<BenchmarkEntry> &benchmark,
                        const TaxonomyGraph &target_graph);

}  // namespace catmap

#endif  // CATMAP_EVALUATION_H_
