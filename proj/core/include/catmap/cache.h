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

#ifndef CATMAP_CACHE_H_
#define CATMAP_CACHE_H_

#include <optional>
#include <string>
#include <string_view>

namespace catmap {

// Lowercase hex SHA-256.
std::string Sha256Hex(std::string_view data);
// Hash of a file's bytes. Throws kIo when the file cannot be read.
std::string Sha256File(const std::string &path);

// Accumulates named fields into a cache key. Field order matters; every
// field is length-prefixed so concatenations cannot collide.
class KeyBuilder {
 public:
  KeyBuilder &Add(std::string_view name, std::string_view value);
  KeyBuilder &Add(std::string_view name, double value);
  std::string Finish() const { return Sha256Hex(buffer_); }

 private:
  std::string buffer_;
};

// Content-addressed artifacts under <dir>/<stage>/<key>.<suffix>. Writes go
// to a temporary file that is renamed into place.
class StageCache {
 public:
  explicit StageCache(std::string dir) : dir_(std::move(dir)) {}

  const std::string &dir() const { return dir_; }
  std::string PathOf(std::string_view stage, std::string_view key,
                     std::string_view suffix) const;
  bool Has(std::string_view stage, std::string_view key,
           std::string_view suffix) const;
  std::optional<std::string> Read(std::string_view stage, std::string_view key,
                                  std::string_view suffix) const;
  void Write(std::string_view stage, std::string_view key,
             std::string_view suffix, std::string_view content) const;

 private:
  std::string dir_;
};

std::string ReadFileOrThrow(const std::string &path);
// Creates parent directories as needed; atomic replace.
void WriteFileAtomic(const std::string &path, std::string_view content);

}  // namespace catmap

#endif  // CATMAP_CACHE_H_
