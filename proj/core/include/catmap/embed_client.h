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

#ifndef CATMAP_EMBED_CLIENT_H_
#define CATMAP_EMBED_CLIENT_H_

#include <string>
#include <vector>

#include "catmap/embedding.h"

namespace catmap {

// Client for a sentence-encoder service. POSTs {"texts": [...]} as JSON to
// the configured URL and expects {"vectors": [[...], ...]} in the same
// order.
class EmbedClient {
 public:
  // `url` is "http://host[:port][/path]".
  explicit EmbedClient(std::string url, int batch_size = 256);

  std::vector<std::vector<double>> Embed(const std::vector<std::string> &texts);

  // Embeds the texts the store lacks (deduplicated, in sorted order) and
  // adds them. Returns the number of texts fetched.
  size_t Fill(const std::vector<std::string> &texts, EmbeddingStore *store);

 private:
  std::string base_;
  std::string path_;
  int batch_size_;
};

}  // namespace catmap

#endif  // CATMAP_EMBED_CLIENT_H_
