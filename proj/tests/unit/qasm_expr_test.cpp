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

#include <gtest/gtest.h>

#include <numbers>

#include "oscqasm/qasm/errors.hpp"
#include "oscqasm/qasm/expr.hpp"

using namespace oscqasm::qasm;

namespace {

double ev(const char* text, const Bindings& b = {}) { return eval_expr(parse_expr(text), b); }

CompileErrc eval_error(const char* text, const Bindings& b = {}) {
  try {
    ev(text, b);
  } catch (const CompileError& e) {
    return e.errc();
  }
  ADD_FAILURE() << text << " evaluated without error";
  return CompileErrc::LexError;
}

}  // namespace

TEST(Expr, PiOverTwo) { EXPECT_EQ(ev("pi/2"), 1.5707963267948966); }

TEST(Expr, SymmetricSumIsZero) { EXPECT_EQ(ev("-pi/4 + pi/4"), 0.0); }

TEST(Expr, PowerIsRightAssociative) { EXPECT_EQ(ev("2^3^2"), 512.0); }

TEST(Expr, Precedence) {
  EXPECT_EQ(ev("1+2*3"), 7.0);
  EXPECT_EQ(ev("(1+2)*3"), 9.0);
  EXPECT_EQ(ev("8/4/2"), 1.0);
  EXPECT_EQ(ev("10-4-3"), 3.0);
  EXPECT_EQ(ev("2*3^2"), 18.0);
  EXPECT_EQ(ev("-2^2"), -4.0);
  EXPECT_EQ(ev("--3"), 3.0);
  EXPECT_EQ(ev("2*-3"), -6.0);
}

TEST(Expr, Literals) {
  EXPECT_EQ(ev("0"), 0.0);
  EXPECT_EQ(ev("1.5e2"), 150.0);
  EXPECT_EQ(ev("1.5E-1"), 0.15);
  EXPECT_EQ(ev(".5"), 0.5);
  EXPECT_EQ(ev("5."), 5.0);
}

TEST(Expr, UnaryFunctions) {
  EXPECT_DOUBLE_EQ(ev("sin(pi/2)"), 1.0);
  EXPECT_DOUBLE_EQ(ev("cos(0)"), 1.0);
  EXPECT_DOUBLE_EQ(ev("tan(pi/4)"), 1.0);
  EXPECT_DOUBLE_EQ(ev("exp(1)"), std::numbers::e);
  EXPECT_DOUBLE_EQ(ev("ln(exp(2))"), 2.0);
  EXPECT_DOUBLE_EQ(ev("sqrt(2)^2"), 2.0);
}

TEST(Expr, Bindings) {
  EXPECT_EQ(ev("theta*2", {{"theta", 0.25}}), 0.5);
  EXPECT_EQ(ev("a-b", {{"a", 3.0}, {"b", 1.0}}), 2.0);
}

TEST(Expr, FreeParamsInFirstOccurrenceOrder) {
  const auto params = parse_expr("b + a*b - sin(c)").free_params();
  EXPECT_EQ(params, (std::vector<std::string>{"b", "a", "c"}));
}

TEST(Expr, Errors) {
  EXPECT_EQ(eval_error("1/0"), CompileErrc::EvalError);
  EXPECT_EQ(eval_error("ln(0)"), CompileErrc::EvalError);
  EXPECT_EQ(eval_error("ln(-1)"), CompileErrc::EvalError);
  EXPECT_EQ(eval_error("sqrt(-1)"), CompileErrc::EvalError);
  EXPECT_EQ(eval_error("theta"), CompileErrc::EvalError);
  EXPECT_EQ(eval_error("10^400"), CompileErrc::EvalError);
  EXPECT_EQ(eval_error("exp(1000)"), CompileErrc::EvalError);
}

TEST(Expr, ParseErrors) {
  for (const char* bad : {"", "1+", "(1", "1)", "sin 1", "2**3", "pi pi"}) {
    EXPECT_THROW(parse_expr(bad), CompileError) << bad;
  }
}

TEST(Expr, ToStringIsParseable) {
  const Expr e = parse_expr("-pi/4 + 2^3^2*theta");
  EXPECT_EQ(eval_expr(parse_expr(e.to_string()), {{"theta", 0.5}}),
            eval_expr(e, {{"theta", 0.5}}));
}
