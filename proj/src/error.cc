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

#include "screenparse/error.h"

namespace screenparse {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kUnbalancedBrackets: return "UnbalancedBrackets";
    case ErrorCode::kEmptyNode: return "EmptyNode";
    case ErrorCode::kBadEscape: return "BadEscape";
    case ErrorCode::kEmptyTree: return "EmptyTree";
    case ErrorCode::kNoFeasibleSubtree: return "NoFeasibleSubtree";
    case ErrorCode::kInvalidSide: return "InvalidSide";
    case ErrorCode::kInvalidHeader: return "InvalidHeader";
    case ErrorCode::kInvalidTarget: return "InvalidTarget";
    case ErrorCode::kInvalidAnswer: return "InvalidAnswer";
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kInvalidSnapshot: return "InvalidSnapshot";
    case ErrorCode::kCorruptRecord: return "CorruptRecord";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace screenparse
