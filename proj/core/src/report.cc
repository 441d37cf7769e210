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

#include "catmap/report.h"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace catmap {

namespace {

constexpr const char *kMetricHeads[] = {"Macro-Pre", "Macro-Rec", "Macro-F1",
                                        "Micro-Pre", "Micro-Rec", "Micro-F1",
                                        "Accuracy"};

std::string Fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string Pad(const std::string &s, size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string PadLeft(const std::string &s, size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

double Percent(int64_t count, int64_t total) {
  if (total == 0) return 0;
  return std::round(1000.0 * static_cast<double>(count) /
                    static_cast<double>(total)) /
         10.0;
}

std::string RenderTextReport(const std::vector<ReportRow> &rows) {
  size_t name_width = 8;
  for (const auto &r : rows) name_width = std::max(name_width, r.system.size());
  name_width += 2;

  std::string out = Pad("System", name_width);
  for (const char *head : kMetricHeads) out += PadLeft(head, 11);
  out += '\n';
  for (const auto &r : rows) {
    const MetricReport &m = r.metrics;
    out += Pad(r.system, name_width);
    for (double v : {m.macro_precision, m.macro_recall, m.macro_f1,
                     m.micro_precision, m.micro_recall, m.micro_f1,
                     m.accuracy}) {
      out += PadLeft(Fixed(v, 3), 11);
    }
    out += '\n';
  }

  if (rows.empty() || !rows.front().judgments) return out;
  out += '\n';
  out += Pad("Judgment", 20);
  for (const auto &r : rows) out += PadLeft(r.system, 20);
  out += '\n';
  for (int j = 0; j < kJudgmentCount; ++j) {
    auto judgment = static_cast<Judgment>(j);
    out += Pad(std::string(JudgmentName(judgment)), 20);
    for (const auto &r : rows) {
      if (!r.judgments) continue;
      int64_t n = r.judgments->count(judgment);
      std::string cell = std::to_string(n) + " (" +
                         Fixed(Percent(n, r.judgments->total()), 1) + "%)";
      out += PadLeft(cell, 20);
    }
    out += '\n';
  }
  out += Pad("Total", 20);
  for (const auto &r : rows) {
    if (r.judgments) out += PadLeft(std::to_string(r.judgments->total()), 20);
  }
  out += '\n';
  return out;
}

std::string RenderJsonReport(const std::vector<ReportRow> &rows) {
  nlohmann::ordered_json doc;
  doc["macro_average_over"] = "gold classes with support > 0";
  doc["missing_policy"] = "false negative for the gold class only";
  nlohmann::ordered_json systems = nlohmann::ordered_json::array();
  for (const auto &r : rows) {
    nlohmann::ordered_json s;
    s["system"] = r.system;
    s["metrics"] = nlohmann::ordered_json::parse(r.metrics.ToJson());
    if (r.judgments) {
      nlohmann::ordered_json judgments;
      for (int j = 0; j < kJudgmentCount; ++j) {
        auto judgment = static_cast<Judgment>(j);
        judgments[std::string(JudgmentName(judgment))] = {
            {"count", r.judgments->count(judgment)},
            {"percent", Percent(r.judgments->count(judgment),
                                r.judgments->total())}};
      }
      s["judgments"] = judgments;
      s["total"] = r.judgments->total();
    }
    systems.push_back(s);
  }
  doc["systems"] = systems;
  return doc.dump(2) + "\n";
}

}  // namespace catmap
