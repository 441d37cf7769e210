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

#ifndef CATMAP_PIPELINE_H_
#define CATMAP_PIPELINE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catmap/ontology.h"
#include "catmap/report.h"

namespace catmap {

enum class Stage {
  kLoad,
  kParse,
  kMatch,
  kType,
  kPropagate,
  kResolve,
  kEvaluate,
  kEmit,
};
inline constexpr int kStageCount = 8;

std::string_view StageName(Stage stage);
std::optional<Stage> ParseStage(std::string_view name);
// Stages whose artifacts `stage` reads.
std::vector<Stage> StageInputs(Stage stage);

struct PipelineConfig {
  // Target ontology.
  std::string target_edges;
  std::string target_labels;
  // Source taxonomy.
  std::string source_edges;
  std::string source_labels;
  std::string members;
  std::string embeddings;
  std::string embed_url;
  std::string ner;
  std::string lexnames;
  std::string annotations;
  std::string benchmark;
  std::string baseline;
  std::string verbalizers;
  // Empty: the files shipped in the data directory.
  std::string pos_lexicon;
  std::string prepositions;

  double tau_exact = 0.95;
  double tau_sim = 0.75;
  double epsilon_tie = 0.01;
  double min_confidence = 0;
  LoadMode mode = LoadMode::kStrict;
  int threads = 1;
  int prompt_front = 2;
  int prompt_back = 1;

  std::string cache_dir = ".catmap-cache";
  std::string out_dir;
  std::string report_path;  // empty: <out_dir>/report.txt

  // Throws kInvalidArgument for out-of-range settings.
  void Validate() const;
};

// Directory holding pos_lexicon.tsv, prepositions.txt and lexnames.tsv:
// $CATMAP_DATA_DIR, else the installed data directory, else the source tree.
std::string DataDir();

struct StageRun {
  Stage stage = Stage::kLoad;
  std::string key;
  bool cache_hit = false;
  std::map<std::string, int64_t> counters;
};

struct RunResult {
  std::vector<StageRun> stages;
  std::vector<std::string> written;  // output files, in write order
};

// Runs stages in dependency order. Each stage's artifact is stored in the
// cache under a key derived from its input file hashes, its configuration
// slice and the keys of the stages it reads, so a warm rerun recomputes
// nothing. The worker count never enters a key or an artifact.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config);
  ~Pipeline();
  Pipeline(const Pipeline &) = delete;
  Pipeline &operator=(const Pipeline &) = delete;

  const PipelineConfig &config() const { return config_; }

  // Runs `stages` and everything they depend on. Evaluate is skipped when no
  // benchmark is configured.
  RunResult Run(const std::vector<Stage> &stages);

  // Runs one stage. The artifacts it reads must already be cached;
  // otherwise throws kStageDependency naming the missing stage.
  RunResult RunSingle(Stage stage);

  std::string KeyOf(Stage stage);

  // Cached artifact file of a stage under the current configuration.
  std::optional<std::string> CachedArtifact(Stage stage,
                                            std::string_view suffix);

  // Writes the outputs available in the cache for `result` into out_dir
  // (mappings.jsonl, metrics.json, report.json, training_pairs.jsonl,
  // prompts.jsonl, manifest.json, run.json) and the text report. Returns the
  // paths written.
  std::vector<std::string> WriteOutputs(const RunResult &result);

  // Manifest document: effective configuration, input hashes, and the key
  // and counters of each stage in `result`.
  std::string Manifest(const RunResult &result);

 private:
  struct State;

  StageRun Execute(Stage stage, bool require_cached_inputs);
  void Materialize(Stage stage);
  void Compute(Stage stage, StageRun *run);
  std::string InputHash(const std::string &path);

  PipelineConfig config_;
  std::unique_ptr<State> state_;
};

// Scores one predictions file (mappings records) against a benchmark, plus an
// optional baseline. Judgments are filled when `target` is given.
std::vector<ReportRow> EvaluateFiles(const std::string &predictions,
                                     const std::string &benchmark,
                                     const std::string &baseline,
                                     const TaxonomyGraph *target);

}  // namespace catmap

#endif  // CATMAP_PIPELINE_H_
