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

#include "catmap/records.h"

#include "json.hpp"

#include "catmap/error.h"
#include "catmap/text.h"

namespace catmap {

namespace {

using nlohmann::json;

std::string OptionalNumber(const std::optional<double> &v) {
  return v ? FormatDouble(*v) : "null";
}

std::optional<double> NumberOrNull(const json &j, const char *what) {
  if (j.is_null()) return std::nullopt;
  if (!j.is_number()) {
    throw Error(ErrorCode::kMalformedInput,
                std::string("expected a number or null for ") + what);
  }
  return j.get<double>();
}

}  // namespace

std::string FormatDouble(double v) { return json(v).dump(); }

std::string JsonString(std::string_view s) { return json(s).dump(); }

std::string FormatMappingRecord(const ResolvedMapping &m) {
  std::string out = "{\"c\": ";
  out += JsonString(m.source_class);
  out += ", \"dbo\": ";
  out += m.target_class ? JsonString(*m.target_class) : "null";
  out += ", \"rule\": ";
  out += JsonString(m.rule_fired());
  out += ", \"score\": ";
  out += OptionalNumber(m.score);
  out += ", \"provenance\": [";
  for (size_t i = 0; i < m.provenance.size(); ++i) {
    const auto &e = m.provenance[i];
    if (i) out += ", ";
    out += '[';
    out += JsonString(e.channel);
    out += ", ";
    out += JsonString(e.value);
    out += ", ";
    out += OptionalNumber(e.score);
    out += ']';
  }
  out += "]}";
  return out;
}

ResolvedMapping ParseMappingRecord(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kMalformedInput,
                std::string("mapping record is not JSON: ") + e.what());
  }
  auto fail = [](const std::string &why) {
    throw Error(ErrorCode::kMalformedInput, "mapping record: " + why);
  };
  if (!j.is_object() || !j.contains("c") || !j["c"].is_string()) {
    fail("missing string field \"c\"");
  }
  ResolvedMapping m;
  m.source_class = j["c"].get<std::string>();
  if (j.contains("dbo") && !j["dbo"].is_null()) {
    if (!j["dbo"].is_string()) fail("\"dbo\" must be a string or null");
    m.target_class = j["dbo"].get<std::string>();
  }
  std::string rule = j.value("rule", std::string(m.target_class ? "" : "MISSING"));
  constexpr std::string_view kPrefix = "RULE1_FILTERED+";
  if (rule.rfind(kPrefix, 0) == 0) {
    m.rule1_filtered = true;
    rule = rule.substr(kPrefix.size());
  }
  bool known = false;
  for (Rule r : {Rule::kExact, Rule::kRule2, Rule::kRule3, Rule::kRule4,
                 Rule::kMissing}) {
    if (RuleName(r) == rule) {
      m.rule = r;
      known = true;
    }
  }
  if (!known) fail("unknown rule '" + rule + "'");
  if ((m.rule == Rule::kMissing) == m.target_class.has_value()) {
    fail("\"dbo\" must be null exactly when the rule is MISSING");
  }
  if (j.contains("score")) m.score = NumberOrNull(j["score"], "score");
  if (j.contains("provenance")) {
    if (!j["provenance"].is_array()) fail("\"provenance\" must be an array");
    for (const json &e : j["provenance"]) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_string() ||
          !e[1].is_string()) {
        fail("provenance entries are [channel, id, score]");
      }
      m.provenance.push_back({e[0].get<std::string>(), e[1].get<std::string>(),
                              NumberOrNull(e[2], "provenance score")});
    }
  }
  return m;
}

void WriteMappings(const std::vector<ResolvedMapping> &mappings,
                   std::ostream &out) {
  for (const auto &m : mappings) out << FormatMappingRecord(m) << '\n';
}

std::vector<ResolvedMapping> ReadMappings(std::istream &in,
                                          const std::string &name) {
  std::vector<ResolvedMapping> out;
  LineReader reader(in, name);
  reader.set_skip_comments(false);
  std::string_view line;
  while (reader.Next(&line)) {
    try {
      out.push_back(ParseMappingRecord(line));
    } catch (const Error &e) {
      throw Error(e.code(), reader.Where(e.what()));
    }
  }
  return out;
}

std::map<std::string, std::optional<std::string>> PredictionsFromMappings(
    const std::vector<ResolvedMapping> &mappings) {
  std::map<std::string, std::optional<std::string>> out;
  for (const auto &m : mappings) out[m.source_class] = m.target_class;
  return out;
}

}  // namespace catmap
