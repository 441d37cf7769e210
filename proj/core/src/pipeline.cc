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

#include "catmap/pipeline.h"

#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "catmap/cache.h"
#include "catmap/dataset.h"
#include "catmap/embed_client.h"
#include "catmap/embedding.h"
#include "catmap/error.h"
#include "catmap/evaluation.h"
#include "catmap/matcher.h"
#include "catmap/prompt.h"
#include "catmap/records.h"
#include "catmap/stages.h"
#include "catmap/text.h"

#ifndef CATMAP_VERSION
#define CATMAP_VERSION "0.0.0"
#endif

namespace catmap {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using Index = TaxonomyGraph::Index;

namespace {

constexpr std::string_view kStageNames[kStageCount] = {
    "load", "parse", "match", "type", "propagate", "resolve", "evaluate",
    "emit"};
constexpr std::string_view kMeta = "meta.json";
constexpr std::string_view kArtifactFormat = "catmap-artifact-1";

int At(Stage s) { return static_cast<int>(s); }

std::ifstream OpenInput(const std::string &path, const std::string &what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + what + " file " + path);
  return in;
}

void Require(const std::string &value, const std::string &flag,
             Stage stage) {
  if (value.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "stage '" + std::string(StageName(stage)) + "' needs " + flag);
  }
}

std::string OrNone(const std::optional<double> &v) {
  return v ? FormatDouble(*v) : "-";
}

std::optional<double> ScoreField(std::string_view field,
                                 const LineReader &reader) {
  if (field == "-") return std::nullopt;
  double v;
  if (!ParseDouble(field, &v)) {
    throw Error(ErrorCode::kMalformedInput, reader.Where("bad score"));
  }
  return v;
}

// Graph artifacts: a header line per graph followed by C (class), E (edge)
// and M (membership) rows.
void WriteGraph(std::ostream &out, const TaxonomyGraph &g) {
  auto members = g.Memberships();
  auto edges = g.Edges();
  out << "graph\t"
      << (g.source() == ClassSource::kSourceTaxonomy ? "source" : "target")
      << '\t' << g.size() << '\t' << edges.size() << '\t' << members.size()
      << '\n';
  for (const OntologyClass &c : g.classes()) {
    out << "C\t" << c.id << '\t' << c.label << '\t';
    if (c.instance_count) out << *c.instance_count;
    out << '\n';
  }
  for (const ClassEdge &e : edges) out << "E\t" << e.child << '\t' << e.parent << '\n';
  for (const auto &[cls, title] : members) {
    out << "M\t" << cls << '\t' << title << '\n';
  }
}

TaxonomyGraph ReadGraph(LineReader &reader) {
  std::string_view line;
  auto fail = [&](const char *why) {
    return Error(ErrorCode::kMalformedInput, reader.Where(why));
  };
  if (!reader.Next(&line)) throw fail("missing graph header");
  auto head = Split(line, '\t');
  int64_t n_classes, n_edges, n_members;
  if (head.size() != 5 || head[0] != "graph" ||
      !ParseInt64(head[2], &n_classes) || !ParseInt64(head[3], &n_edges) ||
      !ParseInt64(head[4], &n_members)) {
    throw fail("bad graph header");
  }
  ClassSource source = head[1] == "source" ? ClassSource::kSourceTaxonomy
                                           : ClassSource::kTargetOntology;
  std::vector<OntologyClass> classes;
  std::vector<ClassEdge> edges;
  std::vector<std::pair<std::string, std::string>> members;
  classes.reserve(n_classes);
  for (int64_t i = 0; i < n_classes; ++i) {
    if (!reader.Next(&line)) throw fail("truncated class rows");
    auto f = Split(line, '\t');
    if (f.size() != 4 || f[0] != "C") throw fail("bad class row");
    OntologyClass c{std::string(f[1]), std::string(f[2]), source,
                    std::nullopt};
    if (!f[3].empty()) {
      int64_t count;
      if (!ParseInt64(f[3], &count)) throw fail("bad instance count");
      c.instance_count = count;
    }
    classes.push_back(std::move(c));
  }
  for (int64_t i = 0; i < n_edges; ++i) {
    if (!reader.Next(&line)) throw fail("truncated edge rows");
    auto f = Split(line, '\t');
    if (f.size() != 3 || f[0] != "E") throw fail("bad edge row");
    edges.push_back({std::string(f[1]), std::string(f[2])});
  }
  for (int64_t i = 0; i < n_members; ++i) {
    if (!reader.Next(&line)) throw fail("truncated member rows");
    auto f = Split(line, '\t');
    if (f.size() != 3 || f[0] != "M") throw fail("bad member row");
    members.emplace_back(std::string(f[1]), std::string(f[2]));
  }
  return TaxonomyGraph::FromParts(source, std::move(classes), std::move(edges),
                                  std::move(members));
}

// Reads one artifact row per source class and checks that it names the
// class at that index.
template <typename Fn>
void ReadPerClass(const std::string &text, const std::string &name,
                  const TaxonomyGraph &source, Fn &&fn) {
  std::istringstream in(text);
  LineReader reader(in, name);
  reader.set_skip_comments(false);
  std::string_view line;
  size_t i = 0;
  while (reader.Next(&line)) {
    auto f = Split(line, '\t');
    if (i >= source.size() || f[0] != source.id(static_cast<Index>(i))) {
      throw Error(ErrorCode::kMalformedInput,
                  reader.Where("artifact row does not match the source class"));
    }
    fn(i, f, reader);
    ++i;
  }
  if (i != source.size()) {
    throw Error(ErrorCode::kMalformedInput, name + ": artifact is truncated");
  }
}

void WritePair(std::ostream &out, char tag, const ConfidentPair &p) {
  out << tag << '\t' << p.source_class << '\t' << p.target_class << '\t'
      << PairOriginName(p.origin) << '\t' << OrNone(p.score) << '\t' << p.via
      << '\t' << p.matched_phrase << '\n';
}

std::string HintFor(const TaxonomyGraph &target, const std::string &cls) {
  auto i = target.Find(cls);
  if (!i || target.parents(*i).empty()) return {};
  const OntologyClass &parent = target.at(target.parents(*i).front());
  return Trim(parent.label).empty() ? parent.id : parent.label;
}

}  // namespace

std::string_view StageName(Stage stage) { return kStageNames[At(stage)]; }

std::optional<Stage> ParseStage(std::string_view name) {
  for (int i = 0; i < kStageCount; ++i) {
    if (kStageNames[i] == name) return static_cast<Stage>(i);
  }
  return std::nullopt;
}

std::vector<Stage> StageInputs(Stage stage) {
  switch (stage) {
    case Stage::kLoad: return {};
    case Stage::kParse: return {Stage::kLoad};
    case Stage::kMatch: return {Stage::kLoad, Stage::kParse};
    case Stage::kType: return {Stage::kLoad, Stage::kParse};
    case Stage::kPropagate:
      return {Stage::kLoad, Stage::kParse, Stage::kMatch};
    case Stage::kResolve:
      return {Stage::kLoad, Stage::kMatch, Stage::kType, Stage::kPropagate};
    case Stage::kEvaluate: return {Stage::kLoad, Stage::kResolve};
    case Stage::kEmit: return {Stage::kLoad, Stage::kPropagate, Stage::kResolve};
  }
  return {};
}

void PipelineConfig::Validate() const {
  auto bad = [](const std::string &why) {
    return Error(ErrorCode::kInvalidArgument, why);
  };
  for (auto [name, v] : {std::pair{"tau-exact", tau_exact},
                         std::pair{"tau-sim", tau_sim}}) {
    if (!(v > 0 && v <= 1)) {
      throw bad(std::string(name) + " must be in (0, 1]");
    }
  }
  if (tau_sim > tau_exact) throw bad("tau-sim must not exceed tau-exact");
  if (!(epsilon_tie >= 0 && std::isfinite(epsilon_tie))) {
    throw bad("epsilon-tie must be a finite value >= 0");
  }
  if (!(min_confidence >= 0 && min_confidence <= 1)) {
    throw bad("min-confidence must be in [0, 1]");
  }
  if (threads < 1) throw bad("threads must be >= 1");
  if (prompt_front < 0 || prompt_back < 0) {
    throw bad("placeholder counts must be >= 0");
  }
  if (cache_dir.empty()) throw bad("cache-dir must not be empty");
}

std::string DataDir() {
  if (const char *env = std::getenv("CATMAP_DATA_DIR"); env && *env) {
    return env;
  }
  std::error_code ec;
#ifdef CATMAP_INSTALL_DATA_DIR
  if (fs::is_regular_file(fs::path(CATMAP_INSTALL_DATA_DIR) / "pos_lexicon.tsv",
                          ec)) {
    return CATMAP_INSTALL_DATA_DIR;
  }
#endif
#ifdef CATMAP_SOURCE_DATA_DIR
  return CATMAP_SOURCE_DATA_DIR;
#else
  return "data";
#endif
}

struct Pipeline::State {
  explicit State(std::string dir) : cache(std::move(dir)) {}

  StageCache cache;
  std::map<std::string, std::string> input_hashes;
  std::array<std::optional<std::string>, kStageCount> keys;
  std::array<bool, kStageCount> materialized{};

  TaxonomyGraph source;
  TaxonomyGraph target;
  PhraseTable phrases;
  MatchTable matches;
  std::vector<TypeResult> types;
  std::vector<ConfidentPair> augmented;
  std::vector<ConfidentPair> inherited;
  std::vector<ResolvedMapping> mappings;
};

Pipeline::Pipeline(PipelineConfig config) : config_(std::move(config)) {
  config_.Validate();
  if (config_.pos_lexicon.empty()) {
    config_.pos_lexicon = (fs::path(DataDir()) / "pos_lexicon.tsv").string();
  }
  if (config_.prepositions.empty()) {
    config_.prepositions = (fs::path(DataDir()) / "prepositions.txt").string();
  }
  if (config_.lexnames.empty()) {
    config_.lexnames = (fs::path(DataDir()) / "lexnames.tsv").string();
  }
  state_ = std::make_unique<State>(config_.cache_dir);
}

Pipeline::~Pipeline() = default;

std::string Pipeline::InputHash(const std::string &path) {
  if (path.empty()) return {};
  auto it = state_->input_hashes.find(path);
  if (it != state_->input_hashes.end()) return it->second;
  std::string hash = Sha256File(path);
  state_->input_hashes.emplace(path, hash);
  return hash;
}

std::string Pipeline::KeyOf(Stage stage) {
  auto &slot = state_->keys[At(stage)];
  if (slot) return *slot;
  const PipelineConfig &c = config_;
  KeyBuilder b;
  b.Add("format", kArtifactFormat).Add("stage", StageName(stage));
  auto file = [&](std::string_view name, const std::string &path) {
    b.Add(name, InputHash(path));
  };
  switch (stage) {
    case Stage::kLoad:
      file("source_edges", c.source_edges);
      file("source_labels", c.source_labels);
      file("members", c.members);
      file("target_edges", c.target_edges);
      file("target_labels", c.target_labels);
      b.Add("mode", c.mode == LoadMode::kStrict ? "strict" : "lenient");
      break;
    case Stage::kParse:
      file("pos_lexicon", c.pos_lexicon);
      file("prepositions", c.prepositions);
      file("annotations", c.annotations);
      break;
    case Stage::kMatch:
      file("embeddings", c.embeddings);
      b.Add("embed_url", c.embed_url);
      b.Add("epsilon_tie", c.epsilon_tie);
      break;
    case Stage::kType:
      file("ner", c.ner);
      file("lexnames", c.lexnames);
      break;
    case Stage::kPropagate:
      b.Add("tau_exact", c.tau_exact);
      break;
    case Stage::kResolve:
      b.Add("tau_exact", c.tau_exact);
      b.Add("tau_sim", c.tau_sim);
      break;
    case Stage::kEvaluate:
      file("benchmark", c.benchmark);
      file("baseline", c.baseline);
      break;
    case Stage::kEmit:
      b.Add("min_confidence", c.min_confidence);
      b.Add("tau_exact", c.tau_exact);
      b.Add("tau_sim", c.tau_sim);
      b.Add("epsilon_tie", c.epsilon_tie);
      b.Add("prompt_front", static_cast<double>(c.prompt_front));
      b.Add("prompt_back", static_cast<double>(c.prompt_back));
      file("verbalizers", c.verbalizers);
      break;
  }
  for (Stage in : StageInputs(stage)) {
    b.Add(std::string("upstream:") + std::string(StageName(in)), KeyOf(in));
  }
  slot = b.Finish();
  return *slot;
}

std::optional<std::string> Pipeline::CachedArtifact(Stage stage,
                                                   std::string_view suffix) {
  return state_->cache.Read(StageName(stage), KeyOf(stage), suffix);
}

RunResult Pipeline::Run(const std::vector<Stage> &stages) {
  std::array<bool, kStageCount> wanted{};
  std::vector<Stage> pending(stages.begin(), stages.end());
  while (!pending.empty()) {
    Stage s = pending.back();
    pending.pop_back();
    if (s == Stage::kEvaluate && config_.benchmark.empty()) continue;
    if (wanted[At(s)]) continue;
    wanted[At(s)] = true;
    for (Stage in : StageInputs(s)) pending.push_back(in);
  }
  RunResult result;
  for (int i = 0; i < kStageCount; ++i) {
    if (wanted[i]) {
      result.stages.push_back(Execute(static_cast<Stage>(i), false));
    }
  }
  return result;
}

RunResult Pipeline::RunSingle(Stage stage) {
  RunResult result;
  result.stages.push_back(Execute(stage, true));
  return result;
}

StageRun Pipeline::Execute(Stage stage, bool require_cached_inputs) {
  StageRun run;
  run.stage = stage;
  run.key = KeyOf(stage);
  if (auto meta = state_->cache.Read(StageName(stage), run.key, kMeta)) {
    try {
      auto j = ordered_json::parse(*meta);
      for (auto &[name, value] : j.at("counters").items()) {
        run.counters[name] = value.get<int64_t>();
      }
      run.cache_hit = true;
      return run;
    } catch (const nlohmann::json::exception &) {
      // A damaged entry is recomputed below.
    }
  }
  for (Stage in : StageInputs(stage)) {
    if (require_cached_inputs &&
        !state_->cache.Has(StageName(in), KeyOf(in), kMeta)) {
      throw Error(ErrorCode::kStageDependency,
                  "stage '" + std::string(StageName(stage)) +
                      "' depends on stage '" + std::string(StageName(in)) +
                      "', whose artifact is not in the cache; run 'stage " +
                      std::string(StageName(in)) + "' first");
    }
    Materialize(in);
  }
  Compute(stage, &run);
  ordered_json meta;
  meta["stage"] = StageName(stage);
  meta["key"] = run.key;
  meta["counters"] = ordered_json::object();
  for (const auto &[name, value] : run.counters) meta["counters"][name] = value;
  state_->cache.Write(StageName(stage), run.key, kMeta, meta.dump(2) + "\n");
  return run;
}

void Pipeline::Materialize(Stage stage) {
  State &st = *state_;
  if (st.materialized[At(stage)]) return;
  const std::string key = KeyOf(stage);
  const std::string name(StageName(stage));
  if (!st.cache.Has(name, key, kMeta)) {
    Execute(stage, false);
    return;
  }
  auto read = [&](std::string_view suffix) {
    auto text = st.cache.Read(name, key, suffix);
    if (!text) {
      throw Error(ErrorCode::kIo, "cache entry for stage '" + name +
                                      "' is incomplete: " +
                                      st.cache.PathOf(name, key, suffix));
    }
    return *text;
  };
  if (stage != Stage::kLoad) Materialize(Stage::kLoad);
  switch (stage) {
    case Stage::kLoad: {
      std::istringstream in(read("graphs.tsv"));
      LineReader reader(in, name);
      reader.set_skip_comments(false);
      st.source = ReadGraph(reader);
      st.target = ReadGraph(reader);
      break;
    }
    case Stage::kParse: {
      st.phrases.assign(st.source.size(), std::nullopt);
      ReadPerClass(read("phrases.tsv"), name, st.source,
                   [&](size_t i, const auto &f, const LineReader &) {
                     if (f.size() < 2) return;
                     RootPhraseSet set;
                     set.root_word = std::string(f[1]);
                     for (size_t k = 2; k < f.size(); ++k) {
                       set.phrases.emplace_back(f[k]);
                     }
                     st.phrases[i] = std::move(set);
                   });
      break;
    }
    case Stage::kMatch: {
      st.matches.assign(st.source.size(), std::nullopt);
      ReadPerClass(read("matches.tsv"), name, st.source,
                   [&](size_t i, const auto &f, const LineReader &r) {
                     if (f.size() == 1) return;
                     if (f.size() != 4) {
                       throw Error(ErrorCode::kMalformedInput,
                                   r.Where("bad match row"));
                     }
                     auto score = ScoreField(f[2], r);
                     st.matches[i] = MatchCandidate{
                         std::string(f[1]), std::string(f[3]), score.value_or(0)};
                   });
      break;
    }
    case Stage::kType: {
      st.types.assign(st.source.size(), TypeResult{});
      ReadPerClass(read("types.tsv"), name, st.source,
                   [&](size_t i, const auto &f, const LineReader &r) {
                     if (f.size() != 3) {
                       throw Error(ErrorCode::kMalformedInput,
                                   r.Where("bad type row"));
                     }
                     if (f[1] != "-") st.types[i].ner = ParseNerLabel(f[1]);
                     if (f[2] != "-") {
                       st.types[i].lexname = LexName{std::string(f[2])};
                     }
                   });
      break;
    }
    case Stage::kPropagate: {
      st.augmented.clear();
      st.inherited.clear();
      std::istringstream in(read("pairs.tsv"));
      LineReader reader(in, name);
      reader.set_skip_comments(false);
      std::string_view line;
      while (reader.Next(&line)) {
        auto f = Split(line, '\t');
        auto origin = f.size() == 7 ? ParsePairOrigin(f[3]) : std::nullopt;
        if (!origin || (f[0] != "A" && f[0] != "I")) {
          throw Error(ErrorCode::kMalformedInput, reader.Where("bad pair row"));
        }
        ConfidentPair p{std::string(f[1]), std::string(f[2]), *origin,
                        ScoreField(f[4], reader), std::string(f[5]),
                        std::string(f[6])};
        (f[0] == "A" ? st.augmented : st.inherited).push_back(std::move(p));
      }
      break;
    }
    case Stage::kResolve: {
      std::istringstream in(read("mappings.jsonl"));
      st.mappings = ReadMappings(in, name);
      break;
    }
    case Stage::kEvaluate:
    case Stage::kEmit:
      break;
  }
  st.materialized[At(stage)] = true;
}

void Pipeline::Compute(Stage stage, StageRun *run) {
  State &st = *state_;
  const PipelineConfig &c = config_;
  const std::string name(StageName(stage));
  const std::string &key = run->key;
  auto &counters = run->counters;
  std::ostringstream out;
  out.precision(17);

  switch (stage) {
    case Stage::kLoad: {
      Require(c.source_edges, "--cg-edges", stage);
      Require(c.source_labels, "--cg-labels", stage);
      Require(c.target_edges, "--dbpedia-edges", stage);
      Require(c.target_labels, "--dbpedia-labels", stage);
      auto se = OpenInput(c.source_edges, "source edge");
      auto sl = OpenInput(c.source_labels, "source label");
      std::ifstream sm;
      TaxonomyStreams ss{&se, &sl, nullptr, c.source_edges, c.source_labels,
                         c.members};
      if (!c.members.empty()) {
        sm = OpenInput(c.members, "membership");
        ss.membership = &sm;
      }
      auto te = OpenInput(c.target_edges, "target edge");
      auto tl = OpenInput(c.target_labels, "target label");
      TaxonomyStreams ts{&te, &tl, nullptr, c.target_edges, c.target_labels,
                         ""};
      LoadDiagnostics sd, td;
      auto source = LoadTaxonomy(ss, ClassSource::kSourceTaxonomy, c.mode, &sd);
      auto target = LoadTaxonomy(ts, ClassSource::kTargetOntology, c.mode, &td);
      auto [source_dag, source_cycles] = BreakCycles(source);
      auto [target_dag, target_cycles] = BreakCycles(target);
      st.source = std::move(source_dag);
      st.target = std::move(target_dag);
      counters["source_classes"] = st.source.size();
      counters["source_edges"] = st.source.edge_count();
      counters["source_members"] = st.source.Memberships().size();
      counters["source_cycles"] = source_cycles.cycle_count;
      counters["source_edges_removed"] = source_cycles.removed_edges.size();
      counters["target_classes"] = st.target.size();
      counters["target_edges"] = st.target.edge_count();
      counters["target_cycles"] = target_cycles.cycle_count;
      counters["target_edges_removed"] = target_cycles.removed_edges.size();
      counters["malformed_lines"] = sd.malformed_lines + td.malformed_lines;
      counters["stub_classes"] = sd.stub_classes + td.stub_classes;
      counters["conflicting_duplicates"] =
          sd.conflicting_duplicates + td.conflicting_duplicates;
      counters["dangling_members"] = sd.dangling_members;
      WriteGraph(out, st.source);
      WriteGraph(out, st.target);
      st.cache.Write(name, key, "graphs.tsv", out.str());
      break;
    }
    case Stage::kParse: {
      ParserResources resources =
          LoadParserResources(c.pos_lexicon, c.prepositions);
      std::optional<AnnotationProvider> annotations;
      if (!c.annotations.empty()) {
        auto in = OpenInput(c.annotations, "annotation");
        annotations.emplace();
        annotations->Load(in, c.annotations);
      }
      ParseStats stats;
      st.phrases = ParseAll(st.source, annotations ? &*annotations : nullptr,
                            resources, c.threads, &stats);
      int64_t phrase_count = 0;
      for (size_t i = 0; i < st.phrases.size(); ++i) {
        out << st.source.id(static_cast<Index>(i));
        if (const auto &set = st.phrases[i]) {
          out << '\t' << set->root_word;
          for (const std::string &p : set->phrases) out << '\t' << p;
          phrase_count += set->phrases.size();
        }
        out << '\n';
      }
      counters["parsed"] = stats.parsed;
      counters["annotated"] = stats.annotated;
      counters["no_root"] = stats.no_root;
      counters["phrases"] = phrase_count;
      st.cache.Write(name, key, "phrases.tsv", out.str());
      break;
    }
    case Stage::kMatch: {
      if (c.embeddings.empty() && c.embed_url.empty()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "stage 'match' needs --embeddings or --embed-url");
      }
      EmbeddingStore store;
      if (!c.embeddings.empty()) {
        auto in = OpenInput(c.embeddings, "embedding");
        store.Load(in, c.embeddings);
      }
      if (!c.embed_url.empty()) {
        std::vector<std::string> texts;
        for (const auto &set : st.phrases) {
          if (set) texts.insert(texts.end(), set->phrases.begin(), set->phrases.end());
        }
        for (const OntologyClass &t : st.target.classes()) {
          texts.push_back(SplitCamelCase(t.label));
        }
        counters["fetched_vectors"] = EmbedClient(c.embed_url).Fill(texts, &store);
      }
      TargetIndex targets = TargetIndex::FromGraph(st.target, store);
      MatchDiagnostics diag;
      st.matches = MatchAll(st.source, st.phrases, targets, store,
                            c.epsilon_tie, c.threads, &diag);
      int64_t matched = 0;
      for (size_t i = 0; i < st.matches.size(); ++i) {
        out << st.source.id(static_cast<Index>(i));
        if (const auto &m = st.matches[i]) {
          ++matched;
          out << '\t' << m->target_class << '\t' << FormatDouble(m->score)
              << '\t' << m->matched_phrase;
        }
        out << '\n';
      }
      counters["matched"] = matched;
      counters["pairs_scored"] = diag.pairs_scored;
      counters["phrases_without_vector"] = diag.phrases_without_vector;
      counters["targets_without_vector"] = diag.targets_without_vector;
      counters["zero_vectors"] = diag.zero_vectors;
      st.cache.Write(name, key, "matches.tsv", out.str());
      break;
    }
    case Stage::kType: {
      std::optional<NerProvider> ner;
      if (!c.ner.empty()) {
        auto in = OpenInput(c.ner, "NER");
        ner.emplace();
        ner->Load(in, c.ner);
      }
      LexnameLexicon lexnames;
      {
        auto in = OpenInput(c.lexnames, "lexname");
        lexnames.Load(in, c.lexnames);
      }
      TypeStats stats;
      st.types = TypeAll(st.source, st.phrases, ner ? &*ner : nullptr,
                         &lexnames, c.threads, &stats);
      for (size_t i = 0; i < st.types.size(); ++i) {
        const TypeResult &t = st.types[i];
        out << st.source.id(static_cast<Index>(i)) << '\t'
            << (t.ner ? NerLabelName(*t.ner) : "-") << '\t'
            << (t.lexname ? t.lexname->value : "-") << '\n';
      }
      counters["members"] = stats.members;
      counters["untyped_members"] = stats.untyped_members;
      counters["majority_classes"] = stats.majority_classes;
      counters["lexname_classes"] = stats.lexname_classes;
      st.cache.Write(name, key, "types.tsv", out.str());
      break;
    }
    case Stage::kPropagate: {
      auto seeds = SeedPairs(st.source, st.matches, st.target, c.tau_exact);
      PropagationResult r = PropagateAll(st.source, st.phrases, seeds);
      st.augmented = std::move(r.augmented);
      st.inherited = std::move(r.inherited);
      int64_t exact_name = 0;
      for (const ConfidentPair &p : seeds) {
        exact_name += p.origin == PairOrigin::kExactName;
      }
      for (const ConfidentPair &p : st.augmented) WritePair(out, 'A', p);
      for (const ConfidentPair &p : st.inherited) WritePair(out, 'I', p);
      counters["seeds"] = seeds.size();
      counters["exact_name_seeds"] = exact_name;
      counters["similarity_seeds"] = seeds.size() - exact_name;
      counters["sibling_pairs"] = r.counts.sibling_pairs;
      counters["augment_duplicates"] = r.counts.duplicates;
      counters["augmented"] = st.augmented.size();
      counters["inherited"] = st.inherited.size();
      st.cache.Write(name, key, "pairs.tsv", out.str());
      break;
    }
    case Stage::kResolve: {
      PropagationResult r;
      r.augmented = st.augmented;
      r.inherited = st.inherited;
      ResolverOptions options;
      options.tau_exact = c.tau_exact;
      options.tau_sim = c.tau_sim;
      st.mappings = ResolveAll(st.source, st.matches, HierarchyPairs(r),
                               st.types, st.target, options, c.threads);
      for (int rule = 0; rule <= static_cast<int>(Rule::kMissing); ++rule) {
        counters["rule_" + std::string(RuleName(static_cast<Rule>(rule)))] = 0;
      }
      counters["rule1_filtered"] = 0;
      for (const ResolvedMapping &m : st.mappings) {
        ++counters["rule_" + std::string(RuleName(m.rule))];
        counters["rule1_filtered"] += m.rule1_filtered;
      }
      WriteMappings(st.mappings, out);
      st.cache.Write(name, key, "mappings.jsonl", out.str());
      break;
    }
    case Stage::kEvaluate: {
      Require(c.benchmark, "--benchmark", stage);
      auto in = OpenInput(c.benchmark, "benchmark");
      auto benchmark = LoadBenchmark(in, c.benchmark);
      std::vector<ReportRow> rows;
      Predictions predictions = PredictionsFromMappings(st.mappings);
      rows.push_back({"catmap", Evaluate(predictions, benchmark),
                      JudgeAll(predictions, benchmark, st.target)});
      if (!c.baseline.empty()) {
        auto bin = OpenInput(c.baseline, "baseline");
        Predictions base = PredictionsFromMappings(ReadMappings(bin, c.baseline));
        rows.push_back({"baseline", Evaluate(base, benchmark),
                        JudgeAll(base, benchmark, st.target)});
      }
      const ReportRow &main = rows.front();
      counters["benchmark_size"] = main.metrics.total;
      counters["correct"] = main.metrics.correct;
      counters["predicted"] = main.metrics.predicted;
      for (int j = 0; j < kJudgmentCount; ++j) {
        auto judgment = static_cast<Judgment>(j);
        counters["judgment_" + std::string(JudgmentName(judgment))] =
            main.judgments->count(judgment);
      }
      st.cache.Write(name, key, "metrics.json", main.metrics.ToJson());
      st.cache.Write(name, key, "report.json", RenderJsonReport(rows));
      st.cache.Write(name, key, "report.txt", RenderTextReport(rows));
      break;
    }
    case Stage::kEmit: {
      DatasetOptions options;
      options.min_confidence = c.min_confidence;
      options.settings = {{"tau_exact", c.tau_exact},
                          {"tau_sim", c.tau_sim},
                          {"epsilon_tie", c.epsilon_tie}};
      DatasetStats stats = EmitTrainingPairs(st.mappings, st.augmented,
                                             st.source, options, out);
      st.cache.Write(name, key, "training_pairs.jsonl", out.str());

      std::optional<VerbalizerTable> verbalizers;
      if (!c.verbalizers.empty()) {
        auto in = OpenInput(c.verbalizers, "verbalizer");
        verbalizers = LoadVerbalizers(in, c.verbalizers);
      }
      auto pairs = BuildTrainingPairs(st.mappings, st.augmented, st.source,
                                      options, nullptr);
      std::ostringstream prompts;
      int64_t skipped = 0, without_verbalizer = 0;
      for (const TrainingPair &p : pairs) {
        if (verbalizers && !verbalizers->count(p.target_class)) {
          ++without_verbalizer;
        }
        ordered_json line;
        line["c"] = p.source_class;
        line["dbo"] = p.target_class;
        try {
          line["t1"] = RenderPrompt(p.label, PromptTemplate::kT1,
                                    c.prompt_front, c.prompt_back)
                           .text;
          std::string hint = HintFor(st.target, p.target_class);
          if (hint.empty()) {
            line["t2"] = nullptr;
          } else {
            line["t2"] = RenderPrompt(p.label, PromptTemplate::kT2,
                                      c.prompt_front, c.prompt_back, hint)
                             .text;
          }
        } catch (const Error &e) {
          if (e.code() != ErrorCode::kInvalidArgument) throw;
          ++skipped;
          continue;
        }
        prompts << line.dump() << '\n';
      }
      st.cache.Write(name, key, "prompts.jsonl", prompts.str());
      counters["records"] = stats.records;
      counters["resolved"] = stats.resolved;
      counters["augmentation"] = stats.augmentation;
      counters["duplicates"] = stats.duplicates;
      counters["below_confidence"] = stats.below_confidence;
      counters["prompts"] = static_cast<int64_t>(pairs.size()) - skipped;
      counters["prompts_skipped"] = skipped;
      if (verbalizers) counters["classes_without_verbalizer"] = without_verbalizer;
      break;
    }
  }
  st.materialized[At(stage)] = true;
}

std::string Pipeline::Manifest(const RunResult &result) {
  const PipelineConfig &c = config_;
  ordered_json doc;
  doc["tool"] = "catmap";
  doc["version"] = CATMAP_VERSION;
  doc["config"] = {
      {"tau_exact", c.tau_exact},
      {"tau_sim", c.tau_sim},
      {"epsilon_tie", c.epsilon_tie},
      {"min_confidence", c.min_confidence},
      {"mode", c.mode == LoadMode::kStrict ? "strict" : "lenient"},
      {"prompt_front", c.prompt_front},
      {"prompt_back", c.prompt_back},
      {"embed_url", c.embed_url},
      {"macro_average_over", "gold classes with support > 0"},
  };
  ordered_json inputs = ordered_json::object();
  const std::pair<const char *, const std::string *> files[] = {
      {"cg_edges", &c.source_edges},     {"cg_labels", &c.source_labels},
      {"members", &c.members},           {"dbpedia_edges", &c.target_edges},
      {"dbpedia_labels", &c.target_labels},
      {"embeddings", &c.embeddings},     {"ner", &c.ner},
      {"lexnames", &c.lexnames},         {"annotations", &c.annotations},
      {"pos_lexicon", &c.pos_lexicon},   {"prepositions", &c.prepositions},
      {"benchmark", &c.benchmark},       {"baseline", &c.baseline},
      {"verbalizers", &c.verbalizers},
  };
  for (const auto &[name, path] : files) {
    if (path->empty()) continue;
    std::error_code ec;
    if (!fs::is_regular_file(*path, ec)) continue;
    inputs[name] = {{"path", *path}, {"sha256", InputHash(*path)}};
  }
  doc["inputs"] = inputs;
  ordered_json stages = ordered_json::array();
  for (const StageRun &run : result.stages) {
    ordered_json s;
    s["name"] = StageName(run.stage);
    s["key"] = run.key;
    s["counters"] = ordered_json::object();
    for (const auto &[name, value] : run.counters) s["counters"][name] = value;
    stages.push_back(s);
  }
  doc["stages"] = stages;
  return doc.dump(2) + "\n";
}

std::vector<std::string> Pipeline::WriteOutputs(const RunResult &result) {
  std::vector<std::string> written;
  const PipelineConfig &c = config_;
  auto copy = [&](Stage stage, const std::string &key, std::string_view suffix,
                  const std::string &path) {
    auto text = state_->cache.Read(StageName(stage), key, suffix);
    if (!text) {
      throw Error(ErrorCode::kIo, "missing cached artifact " +
                                      state_->cache.PathOf(StageName(stage),
                                                           key, suffix));
    }
    WriteFileAtomic(path, *text);
    written.push_back(path);
  };
  fs::path out(c.out_dir);
  for (const StageRun &run : result.stages) {
    switch (run.stage) {
      case Stage::kResolve:
        if (!c.out_dir.empty()) {
          copy(run.stage, run.key, "mappings.jsonl",
               (out / "mappings.jsonl").string());
        }
        break;
      case Stage::kEvaluate:
        if (!c.out_dir.empty()) {
          copy(run.stage, run.key, "metrics.json",
               (out / "metrics.json").string());
          copy(run.stage, run.key, "report.json",
               (out / "report.json").string());
        }
        if (!c.report_path.empty()) {
          copy(run.stage, run.key, "report.txt", c.report_path);
        } else if (!c.out_dir.empty()) {
          copy(run.stage, run.key, "report.txt", (out / "report.txt").string());
        }
        break;
      case Stage::kEmit:
        if (!c.out_dir.empty()) {
          copy(run.stage, run.key, "training_pairs.jsonl",
               (out / "training_pairs.jsonl").string());
          copy(run.stage, run.key, "prompts.jsonl",
               (out / "prompts.jsonl").string());
        }
        break;
      default:
        break;
    }
  }
  if (!c.out_dir.empty()) {
    std::string manifest = (out / "manifest.json").string();
    WriteFileAtomic(manifest, Manifest(result));
    written.push_back(manifest);
    ordered_json runtime;
    runtime["threads"] = c.threads;
    runtime["cache_dir"] = c.cache_dir;
    runtime["stages"] = ordered_json::array();
    for (const StageRun &run : result.stages) {
      runtime["stages"].push_back(
          {{"name", StageName(run.stage)}, {"cache_hit", run.cache_hit}});
    }
    std::string run_path = (out / "run.json").string();
    WriteFileAtomic(run_path, runtime.dump(2) + "\n");
    written.push_back(run_path);
  }
  return written;
}

std::vector<ReportRow> EvaluateFiles(const std::string &predictions,
                                     const std::string &benchmark,
                                     const std::string &baseline,
                                     const TaxonomyGraph *target) {
  auto bin = OpenInput(benchmark, "benchmark");
  auto entries = LoadBenchmark(bin, benchmark);
  std::vector<ReportRow> rows;
  auto add = [&](const std::string &system, const std::string &path) {
    auto in = OpenInput(path, "predictions");
    Predictions p = PredictionsFromMappings(ReadMappings(in, path));
    ReportRow row{system, Evaluate(p, entries), std::nullopt};
    if (target) row.judgments = JudgeAll(p, entries, *target);
    rows.push_back(std::move(row));
  };
  add("catmap", predictions);
  if (!baseline.empty()) add("baseline", baseline);
  return rows;
}

}  // namespace catmap
