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

#include "oscqasm/error.hpp"

namespace oscqasm::qasm {

struct SourcePos {
  int line = 0;
  int column = 0;

  bool operator==(const SourcePos&) const = default;
};

enum class CompileErrc {
  LexError,
  SyntaxError,
  UnknownInclude,
  SemanticError,
  RecursionLimit,
  EvalError,
  OpaqueGate,
};

std::string_view to_string(CompileErrc code);

/// Any failure while turning OpenQASM text into a CircuitIR. When a
/// position is known the message is prefixed with "line L, col C: ".
class CompileError : public Error {
 public:
  CompileError(CompileErrc code, std::string message);
  CompileError(CompileErrc code, SourcePos pos, std::string message);

  CompileErrc errc() const noexcept { return errc_; }
  /// Zero line means no position was available.
  SourcePos pos() const noexcept { return pos_; }

 private:
  CompileErrc errc_;
  SourcePos pos_;
};

}  // namespace oscqasm::qasm
