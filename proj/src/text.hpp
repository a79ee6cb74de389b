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

#include <cctype>
#include <charconv>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qcor/error.hpp"

namespace qcor::detail {

// Cursor over parser input with line/column bookkeeping.
class Scanner {
 public:
  explicit Scanner(std::string_view text, bool line_comments = false)
      : text_(text), line_comments_(line_comments) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (line_comments_ && c == '/' && pos_ + 1 < text_.size() &&
                 text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  std::size_t pos() const { return pos_; }
  void advance(std::size_t n = 1) { pos_ += n; }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }

  [[noreturn]] void fail_at(std::size_t offset, const std::string& what,
                            ErrorCode code = ErrorCode::kParse) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    if (code != ErrorCode::kParse) throw ParseError(what, offset, line, column, code);
    std::string found = offset < text_.size()
                            ? std::string("'") + text_[offset] + "'"
                            : std::string("end of input");
    throw ParseError(what + " (found " + found + ")", offset, line, column);
  }

  bool at_digit(std::size_t ahead = 0) const {
    return std::isdigit(static_cast<unsigned char>(peek(ahead))) != 0;
  }

  bool at_ident_start() const {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  std::uint32_t uint() {
    std::uint32_t value = 0;
    auto first = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), value);
    if (ec == std::errc::result_out_of_range) fail("integer out of range");
    if (ec != std::errc() || ptr == first) fail("expected unsigned integer");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  // Optional sign, digits, optional fraction and exponent.
  double real() {
    // from_chars rejects a leading '+'.
    std::size_t parse_from =
        (pos_ < text_.size() && text_[pos_] == '+') ? pos_ + 1 : pos_;
    double value = 0.0;
    auto first = text_.data() + parse_from;
    auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), value,
                                     std::chars_format::general);
    if (ec != std::errc() || ptr == first) fail("expected number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  // True when the upcoming number token has a fraction or exponent part.
  bool number_is_real() const {
    std::size_t i = pos_;
    if (i < text_.size() && (text_[i] == '+' || text_[i] == '-')) ++i;
    while (i < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[i])))
      ++i;
    return i < text_.size() && (text_[i] == '.' || text_[i] == 'e' ||
                                text_[i] == 'E');
  }

  std::string ident() {
    if (!at_ident_start()) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  // "(re,im)" with whitespace allowed around the components.
  std::complex<double> paren_complex() {
    expect('(');
    skip_space();
    double re = real();
    skip_space();
    expect(',');
    skip_space();
    double im = real();
    skip_space();
    expect(')');
    return {re, im};
  }

 private:
  std::string_view text_;
  bool line_comments_;
  std::size_t pos_ = 0;
};

// Shortest decimal text that parses back to the same double.
inline std::string format_shortest(double value) {
  if (value == 0.0) value = 0.0;  // print -0 as 0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

inline std::string format_complex(std::complex<double> value) {
  return "(" + format_shortest(value.real()) + "," +
         format_shortest(value.imag()) + ")";
}

}  // namespace qcor::detail
