// Copyright 2026 The screenparse Authors.
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

#ifndef SCREENPARSE_ERROR_H_
#define SCREENPARSE_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace screenparse {

enum class ErrorCode {
  kInvalidArgument,
  // Parse-format grammar.
  kUnbalancedBrackets,
  kEmptyNode,
  kBadEscape,
  // Page-level conditions that cause a page to be skipped.
  kEmptyTree,
  kNoFeasibleSubtree,
  // Geometry / rendering.
  kInvalidSide,
  kInvalidHeader,
  // Task preprocessing.
  kInvalidTarget,
  kInvalidAnswer,
  kInvalidInput,
  // Storage.
  kInvalidSnapshot,
  kCorruptRecord,
  kSchemaViolation,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as screenparse::Error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Grammar errors carry the byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t offset, const std::string& message)
      : Error(code, message + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace screenparse

#endif  // SCREENPARSE_ERROR_H_
