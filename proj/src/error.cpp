// Copyright 2026 The qcor-rt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcor/error.hpp"

namespace qcor {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse-error";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kDimensionOverflow: return "dimension-overflow";
    case ErrorCode::kNonFinite: return "non-finite";
    case ErrorCode::kUnboundParameter: return "unbound-parameter";
    case ErrorCode::kNotMeasured: return "not-measured";
    case ErrorCode::kAlreadyMeasured: return "already-measured";
    case ErrorCode::kNonHermitian: return "non-hermitian";
    case ErrorCode::kSingularCalibration: return "singular-calibration";
    case ErrorCode::kMissingKey: return "missing-key";
    case ErrorCode::kKindMismatch: return "kind-mismatch";
    case ErrorCode::kTaskFailed: return "task-failed";
    case ErrorCode::kAlreadySynced: return "already-synced";
    case ErrorCode::kForeignHandle: return "foreign-handle";
  }
  return "unknown";
}

ParseError::ParseError(const std::string& what, std::size_t offset,
                       std::size_t line, std::size_t column, ErrorCode code)
    : Error(code, "line " + std::to_string(line) + ", column " +
                                   std::to_string(column) + ": " + what),
      offset_(offset),
      line_(line),
      column_(column) {}

}  // namespace qcor
