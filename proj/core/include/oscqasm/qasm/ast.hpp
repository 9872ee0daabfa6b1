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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "oscqasm/qasm/errors.hpp"
#include "oscqasm/qasm/expr.hpp"

namespace oscqasm::qasm {

/// `q` (whole register) or `q[3]`. Inside gate bodies the index is always empty
/// and `reg` names a gate qubit argument.
struct Argument {
  std::string reg;
  std::optional<std::size_t> index;
  SourcePos pos;
};

/// Application of a defined gate, or of the built-ins `U` and `CX`.
struct GateCall {
  std::string name;
  std::vector<Expr> params;
  std::vector<Argument> args;
  SourcePos pos;
};

struct MeasureStmt {
  Argument qubit;
  Argument bit;
  SourcePos pos;
};

struct ResetStmt {
  Argument qubit;
  SourcePos pos;
};

struct BarrierStmt {
  std::vector<Argument> args;
  SourcePos pos;
};

using QuantumOp = std::variant<GateCall, MeasureStmt, ResetStmt, BarrierStmt>;

/// `if (creg == value)` guard.
struct Condition {
  std::string creg;
  std::uint64_t value = 0;
  SourcePos pos;
};

struct Statement {
  std::optional<Condition> condition;
  QuantumOp op;
};

struct RegisterDecl {
  std::string name;
  std::size_t size = 0;
  SourcePos pos;
};

struct GateDef {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::string> qargs;
  /// Only GateCall and BarrierStmt appear in a body.
  std::vector<QuantumOp> body;
  bool opaque = false;
  SourcePos pos;
};

struct Program {
  int version_major = 2;
  int version_minor = 0;
  std::vector<RegisterDecl> qregs;  // declaration order
  std::vector<RegisterDecl> cregs;  // declaration order
  std::map<std::string, GateDef, std::less<>> gates;
  std::vector<Statement> statements;

  const RegisterDecl* find_qreg(std::string_view name) const;
  const RegisterDecl* find_creg(std::string_view name) const;
  const GateDef* find_gate(std::string_view name) const;
};

/// Lexes, parses and semantically checks an OpenQASM 2.0 program.
/// `include "qelib1.inc";` resolves to the embedded standard header; any
/// other include is rejected. Input must be 7-bit ASCII.
Program parse(std::string_view source);

}  // namespace oscqasm::qasm
