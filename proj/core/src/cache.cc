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

#include "catmap/cache.h"

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "catmap/error.h"
#include "catmap/records.h"

namespace catmap {

namespace fs = std::filesystem;

std::string Sha256Hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw Error(ErrorCode::kIo, "SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string ReadFileOrThrow(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path);
  return buf.str();
}

std::string Sha256File(const std::string &path) {
  return Sha256Hex(ReadFileOrThrow(path));
}

void WriteFileAtomic(const std::string &path, std::string_view content) {
  fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot rename into " + path + ": " +
                                    ec.message());
  }
}

KeyBuilder &KeyBuilder::Add(std::string_view name, std::string_view value) {
  for (std::string_view part : {name, value}) {
    buffer_ += std::to_string(part.size());
    buffer_ += ':';
    buffer_.append(part);
  }
  return *this;
}

KeyBuilder &KeyBuilder::Add(std::string_view name, double value) {
  return Add(name, std::string_view(FormatDouble(value)));
}

std::string StageCache::PathOf(std::string_view stage, std::string_view key,
                               std::string_view suffix) const {
  return (fs::path(dir_) / std::string(stage) /
          (std::string(key) + "." + std::string(suffix)))
      .string();
}

bool StageCache::Has(std::string_view stage, std::string_view key,
                     std::string_view suffix) const {
  std::error_code ec;
  return fs::is_regular_file(PathOf(stage, key, suffix), ec);
}

std::optional<std::string> StageCache::Read(std::string_view stage,
                                            std::string_view key,
                                            std::string_view suffix) const {
  if (!Has(stage, key, suffix)) return std::nullopt;
  return ReadFileOrThrow(PathOf(stage, key, suffix));
}

void StageCache::Write(std::string_view stage, std::string_view key,
                       std::string_view suffix,
                       std::string_view content) const {
  WriteFileAtomic(PathOf(stage, key, suffix), content);
}

}  // namespace catmap
