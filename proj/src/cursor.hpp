// Copyright 2026 The fock-toeplitz Authors
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

// Internal scanner shared by the expression and symbol parsers.

#pragma once

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>

#include "fock/common.hpp"
#include "fock/expr.hpp"

namespace fock::detail {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::size_t position() const { return pos_; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) throw error(std::string("'") + c + "'", "unexpected " + describe_here());
  }

  bool peek_identifier() {
    const char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) throw error("identifier", "unexpected " + describe_here());
    return std::string(text_.substr(start, pos_ - start));
  }

  // Consumes `word` only when it is followed by `follow` (after whitespace).
  bool accept_keyword(std::string_view word, char follow) {
    skip_ws();
    const std::size_t save = pos_;
    if (text_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    if (pos_ < text_.size() &&
        (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      pos_ = save;
      return false;
    }
    if (peek() != follow) {
      pos_ = save;
      return false;
    }
    ++pos_;
    return true;
  }

  bool peek_number() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }

  double number() {
    skip_ws();
    const std::size_t start = pos_;
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
    if (ec != std::errc{} || ptr == first) throw error("number", "unexpected " + describe_here());
    pos_ += static_cast<std::size_t>(ptr - first);
    if (!std::isfinite(value)) throw ParseError(start, "finite number", "literal out of range");
    return value;
  }

  // Immediate 'i' suffix of a numeric literal, as in "2i" or "1e-3i".
  bool accept_imaginary_suffix() {
    if (pos_ >= text_.size() || text_[pos_] != 'i') return false;
    if (pos_ + 1 < text_.size() &&
        (std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])) || text_[pos_ + 1] == '_'))
      return false;
    ++pos_;
    return true;
  }

  long long integer() {
    skip_ws();
    const std::size_t start = pos_;
    long long value = 0;
    const char* first = text_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), value);
    if (ec != std::errc{} || ptr == first) throw error("integer", "unexpected " + describe_here());
    pos_ += static_cast<std::size_t>(ptr - first);
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
      throw ParseError(start, "integer", "non-integral value");
    return value;
  }

  ParseError error(std::string expected, const std::string& message) {
    skip_ws();
    return ParseError(pos_, std::move(expected), message);
  }

  std::string describe_here() {
    skip_ws();
    if (pos_ >= text_.size()) return "end of input";
    return "'" + std::string(1, text_[pos_]) + "'";
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

/// Recursive-descent parser for the expression grammar; leaves the cursor on
/// the first character that cannot continue an expression.
expr::NodePtr parse_expression_node(Cursor& cur, const expr::Params& params);

}  // namespace fock::detail
