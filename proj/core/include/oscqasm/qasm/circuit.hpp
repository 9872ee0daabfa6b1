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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "oscqasm/qasm/ast.hpp"

namespace oscqasm::qasm {

/// U(theta, phi, lambda) on one qubit; angles in radians.
struct UOp {
  double theta = 0;
  double phi = 0;
  double lambda = 0;
  std::size_t qubit = 0;
};

struct CXOp {
  std::size_t control = 0;
  std::size_t target = 0;
};

struct MeasureOp {
  std::size_t qubit = 0;
  std::size_t clbit = 0;
};

struct ResetOp {
  std::size_t qubit = 0;
};

struct BarrierOp {};

using PrimitiveOp = std::variant<UOp, CXOp, MeasureOp, ResetOp>;

/// Applies `op` only when the named classical register currently holds `value`.
struct ConditionalOp {
  std::string creg;
  std::uint64_t value = 0;
  PrimitiveOp op;
};

using Op = std::variant<UOp, CXOp, MeasureOp, ResetOp, BarrierOp, ConditionalOp>;

struct ClassicalRegister {
  std::string name;
  std::size_t size = 0;
  std::size_t offset = 0;  // index of bit 0 in the flat clbit space
};

/// Flat primitive circuit. Qubit i of register r lives at
/// offset(r) + i, registers laid out in declaration order; same for clbits.
struct CircuitIR {
  std::size_t num_qubits = 0;
  std::size_t num_clbits = 0;
  std::vector<ClassicalRegister> clbit_layout;
  std::vector<Op> ops;
  bool has_dynamics = false;

  const ClassicalRegister* find_creg(std::string_view name) const;
  std::size_t measure_count() const;
};

/// True iff some qubit is acted on (U, CX, Reset) after having been
/// measured, any Reset is present, or any Conditional exists.
bool detect_dynamics(const std::vector<Op>& ops);

/// Expands every gate down to U/CX and evaluates parameters. Throws
/// CompileError{RecursionLimit} beyond depth 64, {OpaqueGate} when an opaque
/// gate is applied, {EvalError} on bad arithmetic.
CircuitIR elaborate(const Program& program);

/// parse + elaborate.
CircuitIR compile(std::string_view source);

/// Line-oriented dump, one op per line; stable across runs (angles printed
/// with 17 significant digits).
std::string to_debug_text(const CircuitIR& circuit);

inline constexpr std::size_t kMaxExpansionDepth = 64;

}  // namespace oscqasm::qasm
