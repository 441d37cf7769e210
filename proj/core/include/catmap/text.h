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

#ifndef CATMAP_TEXT_H_
#define CATMAP_TEXT_H_

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace catmap {

std::string_view Trim(std::string_view s);

// Splits on a single delimiter character; empty fields are kept.
std::vector<std::string_view> Split(std::string_view s, char delim);

// Splits on runs of ASCII whitespace; no empty tokens.
std::vector<std::string_view> SplitWhitespace(std::string_view s);

std::string Join(const std::vector<std::string> &parts, std::string_view sep);

// ASCII case folding. Bytes >= 0x80 (UTF-8 continuation and lead bytes) are
// left untouched.
std::string CaseFold(std::string_view s);

// Collapses whitespace runs to one space and trims both ends.
std::string CollapseWhitespace(std::string_view s);

// Lookup key used by every text-keyed table: case-folded, whitespace
// collapsed.
std::string FoldKey(std::string_view s);

bool ParseInt64(std::string_view s, int64_t *out);
bool ParseDouble(std::string_view s, double *out);

// Line reader for the tab-separated input formats. Skips blank lines and
// '#' comment lines, strips a trailing '\r', and tracks the 1-based line
// number for error messages.
class LineReader {
 public:
  LineReader(std::istream &in, std::string name)
      : in_(in), name_(std::move(name)) {}

  // Returns false at end of stream.
  bool Next(std::string_view *line);

  int64_t line_number() const { return line_number_; }
  const std::string &name() const { return name_; }

  // "<name>:<line>: <message>"
  std::string Where(std::string_view message) const;

  void set_skip_comments(bool skip) { skip_comments_ = skip; }

 private:
  std::istream &in_;
  std::string name_;
  std::string buffer_;
  int64_t line_number_ = 0;
  bool skip_comments_ = true;
};

}  // namespace catmap

#endif  // CATMAP_TEXT_H_
