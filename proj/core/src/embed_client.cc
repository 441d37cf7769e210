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

#include "catmap/embed_client.h"

#include <algorithm>

#include "httplib.h"
#include "json.hpp"

#include "catmap/error.h"
#include "catmap/text.h"

namespace catmap {

EmbedClient::EmbedClient(std::string url, int batch_size)
    : batch_size_(std::max(1, batch_size)) {
  constexpr std::string_view kScheme = "http://";
  if (url.rfind(kScheme, 0) != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "embedding URL must start with http://: " + url);
  }
  size_t slash = url.find('/', kScheme.size());
  if (slash == std::string::npos) {
    base_ = url;
    path_ = "/";
  } else {
    base_ = url.substr(0, slash);
    path_ = url.substr(slash);
  }
  if (base_.size() == kScheme.size()) {
    throw Error(ErrorCode::kInvalidArgument, "embedding URL has no host");
  }
}

std::vector<std::vector<double>> EmbedClient::Embed(
    const std::vector<std::string> &texts) {
  httplib::Client client(base_);
  client.set_read_timeout(120, 0);
  std::vector<std::vector<double>> out;
  out.reserve(texts.size());
  for (size_t begin = 0; begin < texts.size(); begin += batch_size_) {
    size_t end = std::min(texts.size(), begin + batch_size_);
    nlohmann::json body = {
        {"texts", std::vector<std::string>(texts.begin() + begin,
                                           texts.begin() + end)}};
    auto res = client.Post(path_, body.dump(), "application/json");
    if (!res) {
      throw Error(ErrorCode::kIo, "embedding request to " + base_ + path_ +
                                      " failed: " +
                                      httplib::to_string(res.error()));
    }
    if (res->status != 200) {
      throw Error(ErrorCode::kIo, "embedding service returned HTTP " +
                                      std::to_string(res->status));
    }
    try {
      auto reply = nlohmann::json::parse(res->body);
      const auto &vectors = reply.at("vectors");
      if (vectors.size() != end - begin) {
        throw Error(ErrorCode::kMalformedInput,
                    "embedding service returned " +
                        std::to_string(vectors.size()) + " vectors for " +
                        std::to_string(end - begin) + " texts");
      }
      for (const auto &v : vectors) out.push_back(v.get<std::vector<double>>());
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorCode::kMalformedInput,
                  std::string("bad embedding service reply: ") + e.what());
    }
  }
  return out;
}

size_t EmbedClient::Fill(const std::vector<std::string> &texts,
                         EmbeddingStore *store) {
  std::vector<std::string> missing;
  for (const std::string &t : texts) {
    std::string key = FoldKey(t);
    if (!key.empty() && !store->Find(key)) missing.push_back(std::move(key));
  }
  std::sort(missing.begin(), missing.end());
  missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
  if (missing.empty()) return 0;
  auto vectors = Embed(missing);
  if (store->dim() == 0 && !vectors.empty()) {
    *store = EmbeddingStore(static_cast<int>(vectors.front().size()));
  }
  for (size_t i = 0; i < missing.size(); ++i) store->Add(missing[i], vectors[i]);
  return missing.size();
}

}  // namespace catmap
