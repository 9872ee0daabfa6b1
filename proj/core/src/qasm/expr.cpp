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

#include "oscqasm/qasm/expr.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "oscqasm/qasm/errors.hpp"

namespace oscqasm::qasm {

struct Expr::Node {
  Kind kind = Kind::Number;
  double value = 0;
  std::string name;
  Func func = Func::Sin;
  std::optional<Expr> lhs;
  std::optional<Expr> rhs;
};

Expr Expr::number(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::pi() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pi;
  return Expr(std::move(n));
}

Expr Expr::param(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Param;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::negate(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Neg;
  n->lhs = std::move(operand);
  return Expr(std::move(n));
}

Expr Expr::binary(Kind op, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Expr(std::move(n));
}

Expr Expr::call(Func fn, Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Func;
  n->func = fn;
  n->lhs = std::move(operand);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
double Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
Expr::Func Expr::func() const { return node_->func; }
const Expr& Expr::lhs() const { return *node_->lhs; }
const Expr& Expr::rhs() const { return *node_->rhs; }

std::string_view to_string(Expr::Func fn) {
  switch (fn) {
    case Expr::Func::Sin: return "sin";
    case Expr::Func::Cos: return "cos";
    case Expr::Func::Tan: return "tan";
    case Expr::Func::Exp: return "exp";
    case Expr::Func::Ln: return "ln";
    case Expr::Func::Sqrt: return "sqrt";
  }
  return "?";
}

namespace {

void collect_params(const Expr& e, std::vector<std::string>& out) {
  switch (e.kind()) {
    case Expr::Kind::Number:
    case Expr::Kind::Pi:
      return;
    case Expr::Kind::Param:
      for (const auto& n : out) {
        if (n == e.name()) return;
      }
      out.push_back(e.name());
      return;
    case Expr::Kind::Neg:
    case Expr::Kind::Func:
      collect_params(e.lhs(), out);
      return;
    default:
      collect_params(e.lhs(), out);
      collect_params(e.rhs(), out);
  }
}

char op_symbol(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add: return '+';
    case Expr::Kind::Sub: return '-';
    case Expr::Kind::Mul: return '*';
    case Expr::Kind::Div: return '/';
    default: return '^';
  }
}

[[noreturn]] void eval_fail(const std::string& what) {
  throw CompileError(CompileErrc::EvalError, what);
}

double checked(double v, const Expr& e) {
  if (!std::isfinite(v)) eval_fail("expression " + e.to_string() + " is not finite");
  return v;
}

}  // namespace

std::vector<std::string> Expr::free_params() const {
  std::vector<std::string> out;
  collect_params(*this, out);
  return out;
}

std::string Expr::to_string() const {
  std::ostringstream os;
  switch (kind()) {
    case Kind::Number:
      os.precision(17);
      os << value();
      break;
    case Kind::Pi:
      os << "pi";
      break;
    case Kind::Param:
      os << name();
      break;
    case Kind::Neg:
      os << "(-" << lhs().to_string() << ")";
      break;
    case Kind::Func:
      os << qasm::to_string(func()) << "(" << lhs().to_string() << ")";
      break;
    default:
      os << "(" << lhs().to_string() << op_symbol(kind()) << rhs().to_string() << ")";
  }
  return os.str();
}

double eval_expr(const Expr& e, const Bindings& bindings) {
  switch (e.kind()) {
    case Expr::Kind::Number:
      return e.value();
    case Expr::Kind::Pi:
      return std::numbers::pi;
    case Expr::Kind::Param: {
      const auto it = bindings.find(e.name());
      if (it == bindings.end()) eval_fail("unbound parameter '" + e.name() + "'");
      return it->second;
    }
    case Expr::Kind::Neg:
      return -eval_expr(e.lhs(), bindings);
    case Expr::Kind::Func: {
      const double x = eval_expr(e.lhs(), bindings);
      switch (e.func()) {
        case Expr::Func::Sin: return checked(std::sin(x), e);
        case Expr::Func::Cos: return checked(std::cos(x), e);
        case Expr::Func::Tan: return checked(std::tan(x), e);
        case Expr::Func::Exp: return checked(std::exp(x), e);
        case Expr::Func::Ln:
          if (x <= 0) eval_fail("ln of non-positive value " + std::to_string(x));
          return std::log(x);
        case Expr::Func::Sqrt:
          if (x < 0) eval_fail("sqrt of negative value " + std::to_string(x));
          return std::sqrt(x);
      }
      break;
    }
    default:
      break;
  }
  const double a = eval_expr(e.lhs(), bindings);
  const double b = eval_expr(e.rhs(), bindings);
  switch (e.kind()) {
    case Expr::Kind::Add: return checked(a + b, e);
    case Expr::Kind::Sub: return checked(a - b, e);
    case Expr::Kind::Mul: return checked(a * b, e);
    case Expr::Kind::Div:
      if (b == 0) eval_fail("division by zero in " + e.to_string());
      return checked(a / b, e);
    case Expr::Kind::Pow: return checked(std::pow(a, b), e);
    default: break;
  }
  eval_fail("malformed expression");
}

}  // namespace oscqasm::qasm
