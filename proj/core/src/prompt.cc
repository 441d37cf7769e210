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

#include "catmap/prompt.h"

#include <cmath>

#include "catmap/error.h"
#include "catmap/text.h"

namespace catmap {

namespace {

constexpr std::string_view kMask = "[MASK]";

}  // namespace

PromptRendering RenderPrompt(std::string_view label, PromptTemplate template_id,
                             int placeholders_front, int placeholders_back,
                             const std::optional<std::string> &hint) {
  if (placeholders_front < 0 || placeholders_back < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "placeholder counts must be non-negative");
  }
  const bool t2 = template_id == PromptTemplate::kT2;
  if (t2 && !hint) {
    throw Error(ErrorCode::kInvalidArgument, "template T2 needs a hint");
  }
  if (!t2 && hint) {
    throw Error(ErrorCode::kInvalidArgument, "template T1 takes no hint");
  }
  std::string clean_label = CollapseWhitespace(label);
  if (clean_label.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty prompt label");
  }
  if (clean_label.find(kMask) != std::string::npos ||
      (hint && hint->find(kMask) != std::string::npos)) {
    throw Error(ErrorCode::kInvalidArgument,
                "prompt label or hint contains [MASK]");
  }

  std::vector<std::string> tokens;
  int p = 1;
  for (int i = 0; i < placeholders_front; ++i, ++p) {
    tokens.push_back("[P_" + std::to_string(p) + "]");
  }
  tokens.push_back("Category");
  for (int i = 0; i < placeholders_back; ++i, ++p) {
    tokens.push_back("[P_" + std::to_string(p) + "]");
  }
  tokens.push_back(".");
  tokens.push_back(clean_label);
  if (t2) {
    tokens.push_back(".");
    tokens.push_back(CollapseWhitespace(*hint));
  }
  tokens.emplace_back(kMask);
  return {template_id, Join(tokens, " ")};
}

VerbalizerTable LoadVerbalizers(std::istream &in, const std::string &name) {
  VerbalizerTable table;
  LineReader reader(in, name);
  std::string_view line;
  while (reader.Next(&line)) {
    auto cols = Split(line, '\t');
    if (cols.size() != 2 || Trim(cols[0]).empty()) {
      throw Error(ErrorCode::kMalformedInput,
                  reader.Where("expected class_id<TAB>word:weight,..."));
    }
    auto &words = table[std::string(Trim(cols[0]))];
    for (std::string_view item : Split(cols[1], ',')) {
      item = Trim(item);
      VerbalizerWord w;
      size_t colon = item.rfind(':');
      if (colon == std::string_view::npos) {
        w.word = std::string(item);
      } else {
        w.word = std::string(Trim(item.substr(0, colon)));
        if (!ParseDouble(Trim(item.substr(colon + 1)), &w.weight) ||
            !std::isfinite(w.weight) || w.weight <= 0) {
          throw Error(ErrorCode::kMalformedInput,
                      reader.Where("weight must be a positive number"));
        }
      }
      if (w.word.empty()) {
        throw Error(ErrorCode::kMalformedInput, reader.Where("empty word"));
      }
      words.push_back(std::move(w));
    }
  }
  return table;
}

std::map<std::string, double> VerbalizerScore(
    const std::map<std::string, double> &mask_probabilities,
    const VerbalizerTable &table, VerbalizerDiagnostics *diagnostics) {
  for (const auto &[word, p] : mask_probabilities) {
    if (!std::isfinite(p) || p < 0 || p > 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "probability for '" + word + "' is outside [0, 1]");
    }
  }
  std::map<std::string, double> scores;
  for (const auto &[cls, words] : table) {
    double sum = 0;
    for (const VerbalizerWord &w : words) {
      if (!std::isfinite(w.weight)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "non-finite weight for '" + w.word + "'");
      }
      auto it = mask_probabilities.find(w.word);
      if (it == mask_probabilities.end()) {
        if (diagnostics) ++diagnostics->missing_words;
        continue;
      }
      sum += w.weight * it->second;
    }
    scores[cls] = words.empty() ? 0.0 : sum / static_cast<double>(words.size());
  }
  return scores;
}

}  // namespace catmap
