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

#ifndef CATMAP_ERROR_H_
#define CATMAP_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace catmap {

enum class ErrorCode {
  kInvalidArgument,
  kMalformedInput,
  kDanglingReference,
  kDuplicateId,
  kUnknownId,
  kNotAChain,
  kNoRoot,
  kDimMismatch,
  kZeroVector,
  kStageDependency,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as catmap::Error. Input problems carry
// the originating file name and line in the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

  // True for errors caused by bad or missing input data rather than by a
  // failure inside a pipeline stage.
  bool is_input_error() const {
    return code_ != ErrorCode::kStageDependency;
  }

 private:
  ErrorCode code_;
};

}  // namespace catmap

#endif  // CATMAP_ERROR_H_
