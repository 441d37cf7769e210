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

#include "catmap/evaluation.h"

#include <set>

#include "catmap/error.h"
#include "catmap/text.h"
#include "json.hpp"

namespace catmap {

namespace {

double Ratio(int64_t num, int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double F1(double p, double r) { return p + r == 0 ? 0.0 : 2 * p * r / (p + r); }

struct Confusion {
  int64_t tp = 0, fp = 0, fn = 0;
};

}  // namespace

std::vector<BenchmarkEntry> LoadBenchmark(std::istream &in,
                                          const std::string &name) {
  std::vector<BenchmarkEntry> out;
  std::set<std::string> seen;
  LineReader reader(in, name);
  std::string_view line;
  while (reader.Next(&line)) {
    auto cols = Split(line, '\t');
    if (cols.size() != 2 || Trim(cols[0]).empty() || Trim(cols[1]).empty()) {
      throw Error(ErrorCode::kMalformedInput,
                  reader.Where("expected source_class_id<TAB>gold_target_id"));
    }
    BenchmarkEntry e{std::string(Trim(cols[0])), std::string(Trim(cols[1]))};
    if (!seen.insert(e.source_class).second) {
      throw Error(ErrorCode::kDuplicateId,
                  reader.Where("source class '" + e.source_class +
                               "' has more than one gold class"));
    }
    out.push_back(std::move(e));
  }
  return out;
}

MetricReport Evaluate(const Predictions &predictions,
                      const std::vector<BenchmarkEntry> &benchmark) {
  std::map<std::string, Confusion> confusion;
  std::map<std::string, int64_t> support;
  MetricReport r;
  for (const BenchmarkEntry &e : benchmark) {
    auto it = predictions.find(e.source_class);
    if (it == predictions.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "no prediction for benchmark class '" + e.source_class + "'");
    }
    const auto &pred = it->second;
    ++support[e.gold_target];
    ++r.total;
    if (pred) ++r.predicted;
    if (pred && *pred == e.gold_target) {
      ++confusion[e.gold_target].tp;
      ++r.correct;
    } else {
      ++confusion[e.gold_target].fn;
      if (pred) ++confusion[*pred].fp;
    }
  }

  Confusion micro;
  double sum_p = 0, sum_r = 0, sum_f = 0;
  int64_t gold_classes = 0;
  for (const auto &[cls, c] : confusion) {
    ClassMetrics m;
    m.precision = Ratio(c.tp, c.tp + c.fp);
    m.recall = Ratio(c.tp, c.tp + c.fn);
    m.f1 = F1(m.precision, m.recall);
    auto s = support.find(cls);
    m.support = s == support.end() ? 0 : s->second;
    r.per_class[cls] = m;
    micro.tp += c.tp;
    micro.fp += c.fp;
    micro.fn += c.fn;
    if (m.support > 0) {
      sum_p += m.precision;
      sum_r += m.recall;
      sum_f += m.f1;
      ++gold_classes;
    }
  }
  if (gold_classes > 0) {
    r.macro_precision = sum_p / static_cast<double>(gold_classes);
    r.macro_recall = sum_r / static_cast<double>(gold_classes);
    r.macro_f1 = sum_f / static_cast<double>(gold_classes);
  }
  r.micro_precision = Ratio(micro.tp, micro.tp + micro.fp);
  r.micro_recall = Ratio(micro.tp, micro.tp + micro.fn);
  r.micro_f1 = F1(r.micro_precision, r.micro_recall);
  r.accuracy = Ratio(r.correct, r.total);
  return r;
}

std::string MetricReport::ToJson() const {
  nlohmann::ordered_json j;
  j["macro_precision"] = macro_precision;
  j["macro_recall"] = macro_recall;
  j["macro_f1"] = macro_f1;
  j["micro_precision"] = micro_precision;
  j["micro_recall"] = micro_recall;
  j["micro_f1"] = micro_f1;
  j["accuracy"] = accuracy;
  nlohmann::ordered_json classes = nlohmann::ordered_json::object();
  for (const auto &[cls, m] : per_class) {
    nlohmann::ordered_json c;
    c["precision"] = m.precision;
    c["recall"] = m.recall;
    c["f1"] = m.f1;
    c["support"] = m.support;
    classes[cls] = std::move(c);
  }
  j["per_class"] = std::move(classes);
  return j.dump(2) + "\n";
}

std::string_view JudgmentName(Judgment j) {
  switch (j) {
    case Judgment::kCorrect: return "CORRECT";
    case Judgment::kWrongNotSpecific: return "WRONG_NOT_SPECIFIC";
    case Judgment::kWrongOther: return "WRONG_OTHER";
    case Judgment::kMissing: return "MISSING";
  }
  return "MISSING";
}

Judgment Judge(const std::optional<std::string> &prediction,
               const std::string &gold, const TaxonomyGraph &target_graph) {
  auto gold_idx = target_graph.IndexOf(gold);
  if (!prediction) return Judgment::kMissing;
  if (*prediction == gold) return Judgment::kCorrect;
  auto pred_idx = target_graph.Find(*prediction);
  if (pred_idx && target_graph.IsStrictAncestor(*pred_idx, gold_idx)) {
    return Judgment::kWrongNotSpecific;
  }
  return Judgment::kWrongOther;
}

int64_t JudgmentCounts::total() const {
  int64_t t = 0;
  for (int64_t c : counts) t += c;
  return t;
}

JudgmentCounts JudgeAll(const Predictions &predictions,
                        const std::vector<BenchmarkEntry> &benchmark,
                        const TaxonomyGraph &target_graph) {
  JudgmentCounts out;
  for (const BenchmarkEntry &e : benchmark) {
    auto it = predictions.find(e.source_class);
    if (it == predictions.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "no prediction for benchmark class '" + e.source_class + "'");
    }
    ++out.counts[static_cast<int>(Judge(it->second, e.gold_target,
                                        target_graph))];
  }
  return out;
}

}  // namespace catmap
