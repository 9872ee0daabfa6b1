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

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace oscqasm::qasm {

/// Parameter name -> value in radians.
using Bindings = std::map<std::string, double, std::less<>>;

/// Immutable gate-parameter expression. Cheap to copy (shared tree).
class Expr {
 public:
  enum class Kind { Number, Pi, Param, Neg, Add, Sub, Mul, Div, Pow, Func };
  enum class Func { Sin, Cos, Tan, Exp, Ln, Sqrt };

  static Expr number(double value);
  static Expr pi();
  static Expr param(std::string name);
  static Expr negate(Expr operand);
  static Expr binary(Kind op, Expr lhs, Expr rhs);
  static Expr call(Func fn, Expr operand);

  Kind kind() const;
  double value() const;             // Number
  const std::string& name() const;  // Param
  Func func() const;                // Func
  const Expr& lhs() const;          // unary operand or left child
  const Expr& rhs() const;

  /// Names of every Param node, in first-occurrence order.
  std::vector<std::string> free_params() const;

  /// Fully parenthesized rendering, for diagnostics.
  std::string to_string() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Evaluates `e`. `^` is exponentiation. Throws CompileError{EvalError} for
/// unbound parameters, division by zero, ln of a non-positive value, sqrt
/// of a negative value, or any non-finite result.
double eval_expr(const Expr& e, const Bindings& bindings = {});

/// Parses a standalone expression such as "-pi/4 + theta". Identifiers
/// other than pi and the unary function names become Param nodes.
Expr parse_expr(std::string_view text);

std::string_view to_string(Expr::Func fn);

}  // namespace oscqasm::qasm
