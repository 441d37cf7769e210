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

#ifndef CATMAP_PROMPT_H_
#define CATMAP_PROMPT_H_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace catmap {

// Soft-prompt templates for cloze classification of a class name. T2 adds
// an ancestor-class hint after the name.
enum class PromptTemplate { kT1, kT2 };

struct PromptRendering {
  PromptTemplate template_id = PromptTemplate::kT1;
  std::string text;
};

// T1: "[P_1] .. [P_n] Category [P_n+1] .. [P_l] . <label> [MASK]"
// T2: "[P_1] .. [P_n] Category [P_n+1] .. [P_l] . <label> . <hint> [MASK]"
// with l = front + back. The hint is required for T2 and rejected for T1;
// label and hint may not contain "[MASK]".
PromptRendering RenderPrompt(std::string_view label, PromptTemplate template_id,
                             int placeholders_front, int placeholders_back,
                             const std::optional<std::string> &hint = {});

struct VerbalizerWord {
  std::string word;
  double weight = 1.0;
};

// Target class -> weighted related words.
using VerbalizerTable = std::map<std::string, std::vector<VerbalizerWord>>;

// `class_id<TAB>word:weight[,word:weight...]`; a word without ":weight" has
// weight 1.
VerbalizerTable LoadVerbalizers(std::istream &in,
                                const std::string &name = "verbalizers");

struct VerbalizerDiagnostics {
  int64_t missing_words = 0;
};

// score(c) = (1/m) * sum_j weight_j * P([MASK] = word_j) over the m words of
// c. Words without a probability contribute 0 and are counted. Throws
// kInvalidArgument for non-finite weights or probabilities outside [0, 1].
std::map<std::string, double> VerbalizerScore(
    const std::map<std::string, double> &mask_probabilities,
    const VerbalizerTable &table, VerbalizerDiagnostics *diagnostics = nullptr);

}  // namespace catmap

#endif  // CATMAP_PROMPT_H_
