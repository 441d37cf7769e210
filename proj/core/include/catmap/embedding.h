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

#ifndef CATMAP_EMBEDDING_H_
#define CATMAP_EMBEDDING_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace catmap {

// Phrase -> vector table with one fixed dimension. Keys are folded with
// FoldKey on insert and lookup. Rows are stored contiguously.
class EmbeddingStore {
 public:
  using Row = uint32_t;

  EmbeddingStore() = default;
  explicit EmbeddingStore(int dim);

  int dim() const { return dim_; }
  size_t size() const { return keys_.size(); }

  // Adds or confirms an entry. Throws kDimMismatch on a wrong length and
  // kDuplicateId when the key already holds a different vector.
  void Add(std::string_view phrase, std::span<const double> values);

  std::optional<Row> Find(std::string_view phrase) const;
  std::span<const double> row(Row r) const {
    return {data_.data() + static_cast<size_t>(r) * dim_,
            static_cast<size_t>(dim_)};
  }
  double norm(Row r) const { return norms_[r]; }
  const std::string &key(Row r) const { return keys_[r]; }

  // Reads "#dim=<d>" followed by `phrase<TAB>f1 ... fd` lines. When the store
  // already has a dimension the header must agree with it.
  void Load(std::istream &in, const std::string &name = "embeddings");
  // Writes rows in ascending key order.
  void Save(std::ostream &out) const;

 private:
  int dim_ = 0;
  std::vector<double> data_;
  std::vector<double> norms_;
  std::vector<std::string> keys_;
  std::unordered_map<std::string, Row> index_;
};

// dot(u, v) / (|u| |v|). Throws kDimMismatch or kZeroVector.
double Cosine(std::span<const double> u, std::span<const double> v);

}  // namespace catmap

#endif  // CATMAP_EMBEDDING_H_
