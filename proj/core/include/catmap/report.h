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

#ifndef CATMAP_REPORT_H_
#define CATMAP_REPORT_H_

#include <optional>
#include <string>
#include <vector>

#include "catmap/evaluation.h"

namespace catmap {

// One system's scores: a row of the metric table and a column of the
// judgment breakdown.
struct ReportRow {
  std::string system;
  MetricReport metrics;
  // Absent when no target ontology was available to judge against.
  std::optional<JudgmentCounts> judgments;
};

// Plain-text report: a table with the seven metric columns (one row per
// system) followed by judgment counts and percentages per system when the
// first row has judgments.
std::string RenderTextReport(const std::vector<ReportRow> &rows);

// The same content as a JSON document.
std::string RenderJsonReport(const std::vector<ReportRow> &rows);

// Percentage of `count` in `total` rounded to one decimal; 0 when total is 0.
double Percent(int64_t count, int64_t total);

}  // namespace catmap

#endif  // CATMAP_REPORT_H_
