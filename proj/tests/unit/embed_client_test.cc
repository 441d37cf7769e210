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

#include <atomic>
#include <fstream>
#include <thread>

#include <gtest/gtest.h>
#include "httplib.h"
#include "json.hpp"

#include "catmap/cache.h"
#include "catmap/embed_client.h"
#include "catmap/embedding.h"
#include "catmap/error.h"
#include "catmap/pipeline.h"
#include "harness.h"

namespace catmap {
namespace {

// Serves vectors from a fixed store; unknown texts get a zero-free default.
class FakeEncoder {
 public:
  explicit FakeEncoder(const EmbeddingStore *store) : store_(store) {
    server_.Post("/embed", [this](const httplib::Request &req,
                                  httplib::Response &res) {
      ++requests_;
      auto body = nlohmann::json::parse(req.body);
      nlohmann::json vectors = nlohmann::json::array();
      for (const auto &t : body["texts"]) {
        auto row = store_->Find(t.get<std::string>());
        std::vector<double> v(store_->dim(), 0.0);
        if (row) {
          auto r = store_->row(*row);
          v.assign(r.begin(), r.end());
        } else {
          v[0] = 1;
        }
        vectors.push_back(v);
      }
      if (short_reply_) vectors.erase(vectors.begin());
      res.set_content(nlohmann::json{{"vectors", vectors}}.dump(),
                      "application/json");
    });
    server_.Post("/fail", [](const httplib::Request &, httplib::Response &res) {
      res.status = 500;
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeEncoder() {
    server_.stop();
    thread_.join();
  }
  std::string url(const std::string &path) const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }
  int requests() const { return requests_; }
  void set_short_reply(bool v) { short_reply_ = v; }

 private:
  const EmbeddingStore *store_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> requests_{0};
  std::atomic<bool> short_reply_{false};
};

EmbeddingStore Small() {
  EmbeddingStore s(3);
  s.Add("team", std::vector<double>{0, 1, 0});
  s.Add("sports team", std::vector<double>{0, 1, 1});
  return s;
}

TEST(EmbedClient, EmbedsInBatches) {
  auto store = Small();
  FakeEncoder enc(&store);
  EmbedClient client(enc.url("/embed"), 1);
  auto v = client.Embed({"team", "sports team", "other"});
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0], (std::vector<double>{0, 1, 0}));
  EXPECT_EQ(v[2], (std::vector<double>{1, 0, 0}));
  EXPECT_EQ(enc.requests(), 3);
}

TEST(EmbedClient, FillAddsOnlyMissingTexts) {
  auto served = Small();
  FakeEncoder enc(&served);
  EmbeddingStore local(3);
  local.Add("team", std::vector<double>{0, 1, 0});
  EmbedClient client(enc.url("/embed"));
  size_t n = client.Fill({"Sports  Team", "team", "sports team"}, &local);
  EXPECT_EQ(n, 1u);
  ASSERT_TRUE(local.Find("sports team"));
  EmbeddingStore empty;
  EXPECT_EQ(client.Fill({"team"}, &empty), 1u);
  EXPECT_EQ(empty.dim(), 3);
}

TEST(EmbedClient, ServiceErrors) {
  auto store = Small();
  FakeEncoder enc(&store);
  EXPECT_THROW(EmbedClient(enc.url("/fail")).Embed({"team"}), Error);
  enc.set_short_reply(true);
  EXPECT_THROW(EmbedClient(enc.url("/embed")).Embed({"team"}), Error);
  EXPECT_THROW(EmbedClient("https://example.org"), Error);
  EXPECT_THROW(EmbedClient("http:///x"), Error);
  EXPECT_THROW(EmbedClient("http://127.0.0.1:1/x").Embed({"team"}), Error);
}

TEST(EmbedClient, PipelineWithServiceMatchesFileRun) {
  const std::string fx = CATMAP_FIXTURE_DIR;
  EmbeddingStore served;
  {
    std::ifstream in(fx + "/embeddings.tsv");
    served.Load(in);
  }
  FakeEncoder enc(&served);
  auto run = [&](bool use_service) {
    PipelineConfig c;
    c.target_edges = fx + "/dbpedia_edges.tsv";
    c.target_labels = fx + "/dbpedia_labels.tsv";
    c.source_edges = fx + "/cg_edges.tsv";
    c.source_labels = fx + "/cg_labels.tsv";
    c.members = fx + "/members.tsv";
    c.ner = fx + "/ner.tsv";
    c.lexnames = fx + "/lexnames.tsv";
    if (use_service) {
      c.embed_url = enc.url("/embed");
    } else {
      c.embeddings = fx + "/embeddings.tsv";
    }
    auto dir = testing::TempDir("svc");
    c.cache_dir = dir + "/cache";
    c.out_dir = dir + "/out";
    Pipeline p(c);
    p.WriteOutputs(p.Run({Stage::kResolve}));
    return ReadFileOrThrow(c.out_dir + "/mappings.jsonl");
  };
  EXPECT_EQ(run(true), run(false));
  EXPECT_GT(enc.requests(), 0);
}

}  // namespace
}  // namespace catmap
