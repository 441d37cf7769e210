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

#include "catmap/embedding.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "catmap/error.h"
#include "catmap/text.h"

namespace catmap {

namespace {

double Norm(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

EmbeddingStore::EmbeddingStore(int dim) : dim_(dim) {
  if (dim <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "embedding dim must be positive");
  }
}

void EmbeddingStore::Add(std::string_view phrase,
                         std::span<const double> values) {
  if (dim_ <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "embedding store has no dim");
  }
  if (static_cast<int>(values.size()) != dim_) {
    throw Error(ErrorCode::kDimMismatch,
                "vector for '" + std::string(phrase) + "' has " +
                    std::to_string(values.size()) + " values, expected " +
                    std::to_string(dim_));
  }
  std::string key = FoldKey(phrase);
  if (key.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty embedding key");
  }
  if (auto it = index_.find(key); it != index_.end()) {
    auto existing = row(it->second);
    if (!std::equal(existing.begin(), existing.end(), values.begin())) {
      throw Error(ErrorCode::kDuplicateId,
                  "conflicting vectors for phrase '" + key + "'");
    }
    return;
  }
  Row r = static_cast<Row>(keys_.size());
  data_.insert(data_.end(), values.begin(), values.end());
  norms_.push_back(Norm(values));
  keys_.push_back(key);
  index_.emplace(std::move(key), r);
}

std::optional<EmbeddingStore::Row> EmbeddingStore::Find(
    std::string_view phrase) const {
  auto it = index_.find(FoldKey(phrase));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void EmbeddingStore::Load(std::istream &in, const std::string &name) {
  LineReader reader(in, name);
  reader.set_skip_comments(false);
  std::string_view line;
  bool header = false;
  std::vector<double> values;
  while (reader.Next(&line)) {
    if (!header) {
      int64_t d = 0;
      if (line.rfind("#dim=", 0) != 0 || !ParseInt64(Trim(line.substr(5)), &d) ||
          d <= 0) {
        throw Error(ErrorCode::kMalformedInput,
                    reader.Where("expected '#dim=<d>' header"));
      }
      if (dim_ == 0) {
        dim_ = static_cast<int>(d);
      } else if (dim_ != d) {
        throw Error(ErrorCode::kDimMismatch,
                    reader.Where("dim " + std::to_string(d) +
                                 " does not match store dim " +
                                 std::to_string(dim_)));
      }
      header = true;
      continue;
    }
    if (line.front() == '#') continue;
    auto cols = Split(line, '\t');
    if (cols.size() != 2) {
      throw Error(ErrorCode::kMalformedInput,
                  reader.Where("expected phrase<TAB>values"));
    }
    values.clear();
    for (std::string_view f : SplitWhitespace(cols[1])) {
      double v = 0;
      if (!ParseDouble(f, &v) || !std::isfinite(v)) {
        throw Error(ErrorCode::kMalformedInput,
                    reader.Where("bad float '" + std::string(f) + "'"));
      }
      values.push_back(v);
    }
    try {
      Add(cols[0], values);
    } catch (const Error &e) {
      throw Error(e.code(), reader.Where(e.what()));
    }
  }
  if (!header && dim_ == 0) {
    throw Error(ErrorCode::kMalformedInput, name + ": missing '#dim=' header");
  }
}

void EmbeddingStore::Save(std::ostream &out) const {
  out << "#dim=" << dim_ << '\n';
  std::vector<Row> order(keys_.size());
  for (Row r = 0; r < order.size(); ++r) order[r] = r;
  std::sort(order.begin(), order.end(),
            [&](Row a, Row b) { return keys_[a] < keys_[b]; });
  std::ostringstream buf;
  buf.precision(17);
  for (Row r : order) {
    buf.str("");
    auto v = row(r);
    for (int i = 0; i < dim_; ++i) {
      if (i) buf << ' ';
      buf << v[i];
    }
    out << keys_[r] << '\t' << buf.str() << '\n';
  }
}

double Cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::kDimMismatch,
                "cosine of vectors with dims " + std::to_string(u.size()) +
                    " and " + std::to_string(v.size()));
  }
  double dot = 0, uu = 0, vv = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0 || vv == 0) {
    throw Error(ErrorCode::kZeroVector, "cosine of an all-zero vector");
  }
  return dot / (std::sqrt(uu) * std::sqrt(vv));
}

}  // namespace catmap
