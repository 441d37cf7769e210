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

#ifndef CATMAP_RECORDS_H_
#define CATMAP_RECORDS_H_

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "catmap/resolver.h"

namespace catmap {

// One line of the mappings stream:
// {"c": "<id>", "dbo": "<id>"|null, "rule": "<RULE>", "score": <float|null>,
//  "provenance": [["<channel>", "<id>", <score|null>], ...]}
std::string FormatMappingRecord(const ResolvedMapping &mapping);
ResolvedMapping ParseMappingRecord(std::string_view line);

void WriteMappings(const std::vector<ResolvedMapping> &mappings,
                   std::ostream &out);
std::vector<ResolvedMapping> ReadMappings(std::istream &in,
                                          const std::string &name = "mappings");

// Predictions keyed by source class, as consumed by Evaluate.
std::map<std::string, std::optional<std::string>> PredictionsFromMappings(
    const std::vector<ResolvedMapping> &mappings);

// Shortest round-trip text for a double ("null" is never produced here).
std::string FormatDouble(double v);

// JSON string literal with escaping.
std::string JsonString(std::string_view s);

}  // namespace catmap

#endif  // CATMAP_RECORDS_H_
