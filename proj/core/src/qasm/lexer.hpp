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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "oscqasm/qasm/errors.hpp"

namespace oscqasm::qasm::detail {

enum class TokenKind { Identifier, Integer, Real, String, Symbol, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;  // identifier / literal spelling / symbol ("->", "==", ";", ...)
  SourcePos pos;
};

/// Splits OpenQASM 2.0 source into tokens. `//` comments are dropped.
/// Rejects non-ASCII bytes and stray control characters with LexError at
/// the offending position.
std::vector<Token> tokenize(std::string_view source);

std::string describe(const Token& tok);

}  // namespace oscqasm::qasm::detail
