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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcor {

enum class ErrorCode {
  kParse,
  kInvalidArgument,
  kOutOfRange,
  kDimensionOverflow,
  kNonFinite,
  kUnboundParameter,
  kNotMeasured,
  kAlreadyMeasured,
  kNonHermitian,
  kSingularCalibration,
  kMissingKey,
  kKindMismatch,
  kTaskFailed,
  kAlreadySynced,
  kForeignHandle,
};

const char* to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code is the
/// stable part of the contract; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Error located in observable or kernel text. `line` and `column` are
/// 1-based; `offset` is the 0-based byte offset into the input. Syntax errors
/// carry kParse; semantic errors found while parsing keep their own code.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::size_t line,
             std::size_t column, ErrorCode code = ErrorCode::kParse);

  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace qcor
