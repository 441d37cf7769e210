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

// Command line front end for the catmap pipeline.

#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "catmap/cache.h"
#include "catmap/error.h"
#include "catmap/phrase.h"
#include "catmap/pipeline.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitStage = 2;

void LogRun(const catmap::RunResult &result) {
  for (const auto &run : result.stages) {
    std::cerr << "catmap: stage " << catmap::StageName(run.stage) << ' '
              << (run.cache_hit ? "cached" : "computed") << " key="
              << run.key.substr(0, 12) << '\n';
  }
}

catmap::TaxonomyGraph LoadTarget(const catmap::PipelineConfig &c) {
  std::ifstream edges(c.target_edges), labels(c.target_labels);
  if (!edges || !labels) {
    throw catmap::Error(catmap::ErrorCode::kIo,
                        "cannot open target ontology files");
  }
  catmap::TaxonomyStreams s{&edges, &labels, nullptr, c.target_edges,
                            c.target_labels, ""};
  return catmap::BreakCycles(catmap::LoadTaxonomy(
                                 s, catmap::ClassSource::kTargetOntology,
                                 c.mode))
      .first;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Aligns a source class taxonomy with a target ontology."};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file with option values");

  catmap::PipelineConfig config;
  config.threads =
      std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  std::string mode = "strict";

  app.add_option("--dbpedia-edges", config.target_edges,
                 "Target ontology edges (child<TAB>parent)");
  app.add_option("--dbpedia-labels", config.target_labels,
                 "Target ontology labels (id<TAB>label[<TAB>count])");
  app.add_option("--cg-edges", config.source_edges,
                 "Source taxonomy edges (child<TAB>parent)");
  app.add_option("--cg-labels", config.source_labels,
                 "Source taxonomy labels (id<TAB>label)");
  app.add_option("--members", config.members,
                 "Class membership (class<TAB>entity title)");
  app.add_option("--embeddings", config.embeddings, "Phrase vectors");
  app.add_option("--embed-url", config.embed_url,
                 "Sentence-encoder service for phrases without vectors");
  app.add_option("--ner", config.ner, "Entity labels (title<TAB>label)");
  app.add_option("--lexnames", config.lexnames,
                 "Lexname table (lemma<TAB>lexname,...)");
  app.add_option("--annotations", config.annotations,
                 "Precomputed parses (name<TAB>tags<TAB>heads)");
  app.add_option("--pos-lexicon", config.pos_lexicon, "Token tag lexicon");
  app.add_option("--prepositions", config.prepositions, "Preposition list");
  app.add_option("--benchmark", config.benchmark,
                 "Gold mappings (source<TAB>target)");
  app.add_option("--baseline", config.baseline,
                 "Baseline predictions in mappings format");
  app.add_option("--verbalizers", config.verbalizers,
                 "Verbalizer words (class<TAB>word:weight,...)");
  app.add_option("--tau-exact", config.tau_exact, "Exact-match threshold")
      ->capture_default_str();
  app.add_option("--tau-sim", config.tau_sim, "Similarity threshold")
      ->capture_default_str();
  app.add_option("--epsilon-tie", config.epsilon_tie, "Tie window")
      ->capture_default_str();
  app.add_option("--min-confidence", config.min_confidence,
                 "Training pairs below this score are dropped")
      ->capture_default_str();
  app.add_option("--prompt-front", config.prompt_front,
                 "Placeholder tokens before 'Category'")
      ->capture_default_str();
  app.add_option("--prompt-back", config.prompt_back,
                 "Placeholder tokens after 'Category'")
      ->capture_default_str();
  app.add_option("--threads", config.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", config.cache_dir, "Stage artifact cache")
      ->capture_default_str();
  app.add_option("--out", config.out_dir, "Output directory");
  app.add_option("--report", config.report_path, "Text report path");
  app.add_option("--mode", mode, "Input validation mode")
      ->check(CLI::IsMember({"strict", "lenient"}))
      ->capture_default_str();

  auto *align = app.add_subcommand("align", "Run every stage");
  auto *stage = app.add_subcommand("stage", "Run one stage from cached inputs");
  std::string stage_name;
  stage->add_option("name", stage_name, "load|parse|match|type|propagate|"
                                        "resolve|evaluate|emit")
      ->required();
  auto *evaluate = app.add_subcommand("evaluate", "Score predictions");
  std::string pred, gold;
  evaluate->add_option("--pred", pred,
                       "Predictions in mappings format (default: cached "
                       "resolve output)");
  evaluate->add_option("--gold", gold, "Gold benchmark")->required();
  auto *emit = app.add_subcommand("emit-dataset", "Write training pairs");
  auto *parse = app.add_subcommand("parse", "Print the root phrases of a name");
  std::string name;
  parse->add_option("--name", name, "Class name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }
  config.mode = mode == "lenient" ? catmap::LoadMode::kLenient
                                  : catmap::LoadMode::kStrict;

  try {
    if (*parse) {
      if (config.pos_lexicon.empty()) {
        config.pos_lexicon = catmap::DataDir() + "/pos_lexicon.tsv";
      }
      if (config.prepositions.empty()) {
        config.prepositions = catmap::DataDir() + "/prepositions.txt";
      }
      auto resources =
          catmap::LoadParserResources(config.pos_lexicon, config.prepositions);
      std::optional<catmap::AnnotationProvider> annotations;
      if (!config.annotations.empty()) {
        std::ifstream in(config.annotations);
        if (!in) {
          throw catmap::Error(catmap::ErrorCode::kIo,
                              "cannot open " + config.annotations);
        }
        annotations.emplace();
        annotations->Load(in, config.annotations);
      }
      std::string text = catmap::NormalizeLabel(name);
      auto parsed = catmap::Annotate(
          text, annotations ? &*annotations : nullptr, resources);
      auto set = catmap::ExtractRootPhrases(parsed);
      nlohmann::ordered_json out;
      out["name"] = text;
      out["root_word"] = set.root_word;
      out["phrases"] = set.phrases;
      nlohmann::ordered_json tokens = nlohmann::ordered_json::array();
      for (size_t i = 0; i < parsed.tokens.size(); ++i) {
        tokens.push_back({parsed.tokens[i].text,
                          catmap::PosName(parsed.tokens[i].pos),
                          parsed.head_of[i]});
      }
      out["tokens"] = tokens;
      std::cout << out.dump() << '\n';
      return kExitOk;
    }

    if (*evaluate && !pred.empty()) {
      config.Validate();
      std::optional<catmap::TaxonomyGraph> target;
      if (!config.target_edges.empty() && !config.target_labels.empty()) {
        target = LoadTarget(config);
      }
      auto rows = catmap::EvaluateFiles(pred, gold, config.baseline,
                                        target ? &*target : nullptr);
      std::string text = catmap::RenderTextReport(rows);
      if (!config.out_dir.empty()) {
        catmap::WriteFileAtomic(config.out_dir + "/metrics.json",
                                rows.front().metrics.ToJson());
        catmap::WriteFileAtomic(config.out_dir + "/report.json",
                                catmap::RenderJsonReport(rows));
      }
      if (!config.report_path.empty()) {
        catmap::WriteFileAtomic(config.report_path, text);
      } else {
        std::cout << text;
      }
      return kExitOk;
    }

    catmap::Pipeline pipeline(config);
    catmap::RunResult result;
    if (*align) {
      using catmap::Stage;
      result = pipeline.Run({Stage::kLoad, Stage::kParse, Stage::kMatch,
                             Stage::kType, Stage::kPropagate, Stage::kResolve,
                             Stage::kEvaluate, Stage::kEmit});
    } else if (*stage) {
      auto s = catmap::ParseStage(stage_name);
      if (!s) {
        std::cerr << "catmap: unknown stage '" << stage_name << "'\n";
        return kExitInput;
      }
      result = pipeline.RunSingle(*s);
    } else if (*evaluate) {
      config.benchmark = gold;
      catmap::Pipeline eval_pipeline(config);
      result = eval_pipeline.RunSingle(catmap::Stage::kEvaluate);
      LogRun(result);
      eval_pipeline.WriteOutputs(result);
      if (config.report_path.empty() && config.out_dir.empty()) {
        std::cout << *eval_pipeline.CachedArtifact(catmap::Stage::kEvaluate,
                                                   "report.txt");
      }
      return kExitOk;
    } else if (*emit) {
      result = pipeline.Run({catmap::Stage::kEmit});
    }
    LogRun(result);
    for (const auto &path : pipeline.WriteOutputs(result)) {
      std::cerr << "catmap: wrote " << path << '\n';
    }
    return kExitOk;
  } catch (const catmap::Error &e) {
    std::cerr << "catmap: error: " << e.what() << '\n';
    return e.is_input_error() ? kExitInput : kExitStage;
  } catch (const std::exception &e) {
    std::cerr << "catmap: stage failure: " << e.what() << '\n';
    return kExitStage;
  }
}
