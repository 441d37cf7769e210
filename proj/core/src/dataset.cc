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

#include "catmap/dataset.h"

#include <algorithm>
#include <map>
#include <tuple>

#include "json.hpp"

#include "catmap/error.h"
#include "catmap/phrase.h"
#include "catmap/records.h"
#include "catmap/text.h"

namespace catmap {

namespace {

using nlohmann::ordered_json;

std::string LabelOf(const TaxonomyGraph &graph, const std::string &id) {
  if (auto i = graph.Find(id)) {
    const std::string &label = graph.at(*i).label;
    if (!Trim(label).empty()) return NormalizeLabel(label);
  }
  return NormalizeLabel(id);
}

}  // namespace

std::vector<TrainingPair> BuildTrainingPairs(
    std::span<const ResolvedMapping> resolved,
    std::span<const ConfidentPair> augmented, const TaxonomyGraph &source_graph,
    const DatasetOptions &options, DatasetStats *stats) {
  DatasetStats local;
  std::map<std::pair<std::string, std::string>, TrainingPair> merged;
  auto offer = [&](TrainingPair pair) {
    if (pair.score && *pair.score < options.min_confidence) {
      ++local.below_confidence;
      return;
    }
    auto key = std::make_pair(pair.source_class, pair.target_class);
    if (merged.count(key)) {
      ++local.duplicates;
      return;
    }
    merged.emplace(std::move(key), std::move(pair));
  };

  std::vector<const ResolvedMapping *> mappings;
  for (const ResolvedMapping &m : resolved) {
    if (m.target_class) mappings.push_back(&m);
  }
  std::sort(mappings.begin(), mappings.end(),
            [](const ResolvedMapping *a, const ResolvedMapping *b) {
              return std::tie(a->source_class, *a->target_class) <
                     std::tie(b->source_class, *b->target_class);
            });
  for (const ResolvedMapping *m : mappings) {
    ++local.resolved;
    offer({m->source_class, LabelOf(source_graph, m->source_class),
           *m->target_class, m->rule_fired(), m->score});
  }

  std::vector<ConfidentPair> pairs(augmented.begin(), augmented.end());
  std::sort(pairs.begin(), pairs.end(), PairLess);
  for (const ConfidentPair &p : pairs) {
    ++local.augmentation;
    offer({p.source_class, LabelOf(source_graph, p.source_class),
           p.target_class, std::string(PairOriginName(p.origin)), p.score});
  }

  std::vector<TrainingPair> out;
  out.reserve(merged.size());
  for (auto &[key, pair] : merged) out.push_back(std::move(pair));
  local.records = static_cast<int64_t>(out.size());
  if (stats) *stats = local;
  return out;
}

std::string FormatTrainingPair(const TrainingPair &p) {
  std::string out = "{\"c\": ";
  out += JsonString(p.source_class);
  out += ", \"label\": ";
  out += JsonString(p.label);
  out += ", \"dbo\": ";
  out += JsonString(p.target_class);
  out += ", \"rule\": ";
  out += JsonString(p.rule);
  out += ", \"score\": ";
  out += p.score ? FormatDouble(*p.score) : "null";
  out += '}';
  return out;
}

DatasetStats EmitTrainingPairs(std::span<const ResolvedMapping> resolved,
                               std::span<const ConfidentPair> augmented,
                               const TaxonomyGraph &source_graph,
                               const DatasetOptions &options,
                               std::ostream &out) {
  DatasetStats stats;
  std::vector<TrainingPair> pairs =
      BuildTrainingPairs(resolved, augmented, source_graph, options, &stats);
  ordered_json header;
  header["stats"] = {{"records", stats.records},
                     {"resolved", stats.resolved},
                     {"augmentation", stats.augmentation},
                     {"duplicates", stats.duplicates},
                     {"below_confidence", stats.below_confidence}};
  ordered_json settings = ordered_json::object();
  settings["min_confidence"] = options.min_confidence;
  for (const auto &[key, value] : options.settings) settings[key] = value;
  header["settings"] = settings;
  out << header.dump() << '\n';
  for (const TrainingPair &p : pairs) out << FormatTrainingPair(p) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "failed to write training pairs");
  return stats;
}

std::pair<DatasetStats, std::vector<TrainingPair>> ReadTrainingPairs(
    std::istream &in, const std::string &name) {
  LineReader reader(in, name);
  reader.set_skip_comments(false);
  std::string_view line;
  if (!reader.Next(&line)) {
    throw Error(ErrorCode::kMalformedInput, name + ": missing header line");
  }
  DatasetStats stats;
  std::vector<TrainingPair> pairs;
  try {
    auto header = ordered_json::parse(line);
    const auto &s = header.at("stats");
    stats.records = s.at("records").get<int64_t>();
    stats.resolved = s.at("resolved").get<int64_t>();
    stats.augmentation = s.at("augmentation").get<int64_t>();
    stats.duplicates = s.at("duplicates").get<int64_t>();
    stats.below_confidence = s.at("below_confidence").get<int64_t>();
    while (reader.Next(&line)) {
      auto j = ordered_json::parse(line);
      TrainingPair p;
      p.source_class = j.at("c").get<std::string>();
      p.label = j.at("label").get<std::string>();
      p.target_class = j.at("dbo").get<std::string>();
      p.rule = j.at("rule").get<std::string>();
      if (!j.at("score").is_null()) p.score = j.at("score").get<double>();
      pairs.push_back(std::move(p));
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kMalformedInput, reader.Where(e.what()));
  }
  return {stats, std::move(pairs)};
}

}  // namespace catmap
