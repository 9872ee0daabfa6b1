// Copyright 2026 The oscqasm Authors
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

#include "lexer.hpp"

#include <cctype>
#include <cstdio>

namespace oscqasm::qasm::detail {
namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      if (i_ >= src_.size()) break;
      out.push_back(next());
    }
    out.push_back(Token{TokenKind::End, "", here()});
    return out;
  }

 private:
  SourcePos here() const { return SourcePos{line_, col_}; }

  char peek(std::size_t ahead = 0) const {
    return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0';
  }

  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw CompileError(CompileErrc::LexError, here(), what);
  }

  void check_byte(char c) const {
    const auto u = static_cast<unsigned char>(c);
    if (u > 0x7f) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "non-ASCII byte 0x%02X", u);
      fail(buf);
    }
    if (u < 0x20 && c != '\n' && c != '\t' && c != '\r') {
      char buf[64];
      std::snprintf(buf, sizeof buf, "unexpected control character 0x%02X", u);
      fail(buf);
    }
  }

  void skip_space_and_comments() {
    while (i_ < src_.size()) {
      const char c = src_[i_];
      check_byte(c);
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (i_ < src_.size() && src_[i_] != '\n') {
          check_byte(src_[i_]);
          advance();
        }
      } else {
        break;
      }
    }
  }

  Token next() {
    const SourcePos start = here();
    const char c = src_[i_];
    if (is_ident_start(c)) {
      std::string text;
      while (i_ < src_.size() && is_ident_char(src_[i_])) {
        text.push_back(src_[i_]);
        advance();
      }
      return Token{TokenKind::Identifier, std::move(text), start};
    }
    if (is_digit(c) || (c == '.' && is_digit(peek(1)))) return number(start);
    if (c == '"') return string(start);
    if (c == '-' && peek(1) == '>') {
      advance();
      advance();
      return Token{TokenKind::Symbol, "->", start};
    }
    if (c == '=' && peek(1) == '=') {
      advance();
      advance();
      return Token{TokenKind::Symbol, "==", start};
    }
    switch (c) {
      case ';': case ',': case '(': case ')': case '[': case ']':
      case '{': case '}': case '+': case '-': case '*': case '/': case '^':
        advance();
        return Token{TokenKind::Symbol, std::string(1, c), start};
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }

  Token number(SourcePos start) {
    std::string text;
    bool real = false;
    while (is_digit(peek())) {
      text.push_back(peek());
      advance();
    }
    if (peek() == '.') {
      real = true;
      text.push_back('.');
      advance();
      while (is_digit(peek())) {
        text.push_back(peek());
        advance();
      }
    }
    if (peek() == 'e' || peek() == 'E') {
      const std::size_t sign = (peek(1) == '+' || peek(1) == '-') ? 1 : 0;
      if (is_digit(peek(1 + sign))) {
        real = true;
        text.push_back(peek());
        advance();
        if (sign) {
          text.push_back(peek());
          advance();
        }
        while (is_digit(peek())) {
          text.push_back(peek());
          advance();
        }
      }
    }
    if (is_ident_start(peek())) fail("malformed number '" + text + peek() + "'");
    return Token{real ? TokenKind::Real : TokenKind::Integer, std::move(text), start};
  }

  Token string(SourcePos start) {
    advance();  // opening quote
    std::string text;
    while (i_ < src_.size() && src_[i_] != '"') {
      check_byte(src_[i_]);
      if (src_[i_] == '\n') fail("unterminated string literal");
      text.push_back(src_[i_]);
      advance();
    }
    if (i_ >= src_.size()) fail("unterminated string literal");
    advance();
    return Token{TokenKind::String, std::move(text), start};
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

std::string describe(const Token& tok) {
  switch (tok.kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::String: return "string \"" + tok.text + "\"";
    default: return "'" + tok.text + "'";
  }
}

}  // namespace oscqasm::qasm::detail
