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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <set>
#include <unordered_set>

#include "lexer.hpp"
#include "oscqasm/qasm/ast.hpp"
#include "oscqasm/qasm/qelib1.hpp"

namespace oscqasm::qasm {

std::string_view to_string(CompileErrc code) {
  switch (code) {
    case CompileErrc::LexError: return "LexError";
    case CompileErrc::SyntaxError: return "SyntaxError";
    case CompileErrc::UnknownInclude: return "UnknownInclude";
    case CompileErrc::SemanticError: return "SemanticError";
    case CompileErrc::RecursionLimit: return "RecursionLimit";
    case CompileErrc::EvalError: return "EvalError";
    case CompileErrc::OpaqueGate: return "OpaqueGate";
  }
  return "CompileError";
}

namespace {
std::string positioned(SourcePos pos, const std::string& message) {
  return "line " + std::to_string(pos.line) + ", col " + std::to_string(pos.column) + ": " +
         message;
}
}  // namespace

CompileError::CompileError(CompileErrc code, std::string message)
    : Error(std::string(to_string(code)), std::move(message)), errc_(code) {}

CompileError::CompileError(CompileErrc code, SourcePos pos, std::string message)
    : Error(std::string(to_string(code)), positioned(pos, message)), errc_(code), pos_(pos) {}

const RegisterDecl* Program::find_qreg(std::string_view name) const {
  for (const auto& r : qregs) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

const RegisterDecl* Program::find_creg(std::string_view name) const {
  for (const auto& r : cregs) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

const GateDef* Program::find_gate(std::string_view name) const {
  const auto it = gates.find(name);
  return it == gates.end() ? nullptr : &it->second;
}

namespace {

using detail::Token;
using detail::TokenKind;

const std::set<std::string, std::less<>> kReserved = {
    "OPENQASM", "include", "qreg", "creg", "gate", "opaque", "measure", "reset", "barrier",
    "if",       "U",       "CX",   "pi",   "sin",  "cos",    "tan",     "exp",   "ln",
    "sqrt"};

std::optional<Expr::Func> lookup_func(std::string_view name) {
  if (name == "sin") return Expr::Func::Sin;
  if (name == "cos") return Expr::Func::Cos;
  if (name == "tan") return Expr::Func::Tan;
  if (name == "exp") return Expr::Func::Exp;
  if (name == "ln") return Expr::Func::Ln;
  if (name == "sqrt") return Expr::Func::Sqrt;
  return std::nullopt;
}

// Scope used to resolve identifiers inside expressions. Null means top
// level, where no identifiers other than pi are allowed.
using ParamScope = const std::vector<std::string>*;

class Parser {
 public:
  Parser(std::vector<Token> tokens, Program& program, bool in_include)
      : toks_(std::move(tokens)), prog_(program), in_include_(in_include) {}

  void parse_program() {
    if (!in_include_) parse_header();
    while (!at_end()) parse_statement();
  }

  Expr parse_standalone_expr() {
    Expr e = expr(nullptr, /*allow_free=*/true);
    if (!at_end()) syntax_error("unexpected " + detail::describe(peek()) + " after expression");
    return e;
  }

 private:
  // ---- token helpers -------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == TokenKind::End; }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool is_symbol(std::string_view s) const {
    return peek().kind == TokenKind::Symbol && peek().text == s;
  }
  bool is_word(std::string_view s) const {
    return peek().kind == TokenKind::Identifier && peek().text == s;
  }
  bool accept_symbol(std::string_view s) {
    if (!is_symbol(s)) return false;
    take();
    return true;
  }

  [[noreturn]] void syntax_error(const std::string& what) const {
    throw CompileError(CompileErrc::SyntaxError, peek().pos, what);
  }
  [[noreturn]] static void semantic_error(SourcePos pos, const std::string& what) {
    throw CompileError(CompileErrc::SemanticError, pos, what);
  }

  void expect_symbol(std::string_view s) {
    if (!accept_symbol(s)) {
      syntax_error("expected '" + std::string(s) + "' but found " + detail::describe(peek()));
    }
  }

  const Token& expect_identifier(const char* what) {
    if (peek().kind != TokenKind::Identifier) {
      syntax_error(std::string("expected ") + what + " but found " + detail::describe(peek()));
    }
    return take();
  }

  std::size_t expect_integer(const char* what) {
    if (peek().kind != TokenKind::Integer) {
      syntax_error(std::string("expected ") + what + " but found " + detail::describe(peek()));
    }
    const Token& t = take();
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
      throw CompileError(CompileErrc::SyntaxError, t.pos, "integer '" + t.text + "' out of range");
    }
    return static_cast<std::size_t>(v);
  }

  // ---- top level -----------------------------------------------------------

  void parse_header() {
    if (!is_word("OPENQASM")) syntax_error("program must begin with 'OPENQASM 2.0;'");
    take();
    const Token& v = peek();
    if (v.kind != TokenKind::Real && v.kind != TokenKind::Integer) {
      syntax_error("expected version number after OPENQASM");
    }
    take();
    if (v.text != "2.0" && v.text != "2") {
      throw CompileError(CompileErrc::SyntaxError, v.pos,
                         "unsupported OpenQASM version " + v.text + " (only 2.0 is accepted)");
    }
    prog_.version_major = 2;
    prog_.version_minor = 0;
    expect_symbol(";");
  }

  void parse_statement() {
    const Token& t = peek();
    if (t.kind != TokenKind::Identifier) {
      syntax_error("expected a statement but found " + detail::describe(t));
    }
    if (t.text == "include") return parse_include();
    if (t.text == "qreg" || t.text == "creg") return parse_register();
    if (t.text == "gate") return parse_gate_def(false);
    if (t.text == "opaque") return parse_gate_def(true);
    if (t.text == "OPENQASM") syntax_error("duplicate OPENQASM header");
    if (t.text == "if") {
      Statement st;
      st.condition = parse_condition();
      if (is_word("barrier")) syntax_error("barrier cannot be conditioned");
      st.op = parse_qop(nullptr);
      check_statement(st);
      prog_.statements.push_back(std::move(st));
      return;
    }
    Statement st;
    st.op = parse_qop(nullptr);
    check_statement(st);
    prog_.statements.push_back(std::move(st));
  }

  void parse_include() {
    const SourcePos at = take().pos;
    if (peek().kind != TokenKind::String) syntax_error("expected file name string after include");
    const Token& file = take();
    expect_symbol(";");
    if (in_include_) {
      throw CompileError(CompileErrc::UnknownInclude, at, "nested include is not supported");
    }
    if (file.text != "qelib1.inc") {
      throw CompileError(CompileErrc::UnknownInclude, at,
                         "unknown include \"" + file.text + "\" (only \"qelib1.inc\" is available)");
    }
    Parser inner(detail::tokenize(qelib1_source()), prog_, true);
    inner.parse_program();
  }

  void check_fresh_name(const Token& name) const {
    if (kReserved.count(name.text) != 0) {
      semantic_error(name.pos, "'" + name.text + "' is a reserved word");
    }
  }

  void parse_register() {
    const bool quantum = take().text == "qreg";
    const Token& name = expect_identifier("register name");
    check_fresh_name(name);
    expect_symbol("[");
    const std::size_t size = expect_integer("register size");
    expect_symbol("]");
    expect_symbol(";");
    if (prog_.find_qreg(name.text) || prog_.find_creg(name.text)) {
      semantic_error(name.pos, "duplicate register name '" + name.text + "'");
    }
    if (size == 0) semantic_error(name.pos, "register '" + name.text + "' must have size >= 1");
    auto& regs = quantum ? prog_.qregs : prog_.cregs;
    regs.push_back(RegisterDecl{name.text, size, name.pos});
  }

  std::vector<std::string> parse_id_list(const char* what) {
    std::vector<std::string> out;
    out.push_back(expect_identifier(what).text);
    while (accept_symbol(",")) out.push_back(expect_identifier(what).text);
    return out;
  }

  void parse_gate_def(bool opaque) {
    take();
    const Token& name = expect_identifier("gate name");
    check_fresh_name(name);
    GateDef def;
    def.name = name.text;
    def.opaque = opaque;
    def.pos = name.pos;
    if (accept_symbol("(")) {
      if (!is_symbol(")")) def.params = parse_id_list("parameter name");
      expect_symbol(")");
    }
    def.qargs = parse_id_list("qubit argument name");

    if (prog_.gates.count(def.name) != 0) {
      semantic_error(name.pos, "duplicate definition of gate '" + def.name + "'");
    }
    check_distinct(def.params, name.pos, "parameter");
    check_distinct(def.qargs, name.pos, "qubit argument");
    for (const auto& p : def.params) {
      if (kReserved.count(p) != 0) semantic_error(name.pos, "'" + p + "' is a reserved word");
    }

    if (opaque) {
      expect_symbol(";");
    } else {
      expect_symbol("{");
      while (!is_symbol("}")) {
        if (at_end()) syntax_error("unterminated body of gate '" + def.name + "'");
        if (is_word("barrier")) {
          def.body.emplace_back(parse_barrier(&def));
        } else {
          def.body.emplace_back(parse_gate_call(&def));
        }
      }
      expect_symbol("}");
    }
    prog_.gates.emplace(def.name, std::move(def));
  }

  static void check_distinct(const std::vector<std::string>& names, SourcePos pos,
                             const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& n : names) {
      if (!seen.insert(n).second) {
        semantic_error(pos, std::string("duplicate ") + what + " '" + n + "'");
      }
    }
  }

  Condition parse_condition() {
    const SourcePos at = take().pos;
    expect_symbol("(");
    const Token& reg = expect_identifier("classical register name");
    expect_symbol("==");
    Condition c;
    c.creg = reg.text;
    c.pos = at;
    const Token& v = peek();
    c.value = expect_integer("integer");
    expect_symbol(")");
    const RegisterDecl* creg = prog_.find_creg(c.creg);
    if (!creg) semantic_error(reg.pos, "undeclared classical register '" + c.creg + "'");
    if (creg->size < 64 && c.value >= (std::uint64_t{1} << creg->size)) {
      semantic_error(v.pos, "value " + v.text + " does not fit in register '" + c.creg + "'");
    }
    return c;
  }

  // ---- quantum operations ---------------------------------------------------

  // `gate` is the enclosing definition when parsing a gate body.
  QuantumOp parse_qop(const GateDef* gate) {
    if (is_word("measure")) {
      MeasureStmt m;
      m.pos = take().pos;
      m.qubit = parse_argument(gate);
      expect_symbol("->");
      m.bit = parse_argument(gate);
      expect_symbol(";");
      return m;
    }
    if (is_word("reset")) {
      ResetStmt r;
      r.pos = take().pos;
      r.qubit = parse_argument(gate);
      expect_symbol(";");
      return r;
    }
    if (is_word("barrier")) return parse_barrier(gate);
    return parse_gate_call(gate);
  }

  BarrierStmt parse_barrier(const GateDef* gate) {
    BarrierStmt b;
    b.pos = take().pos;
    b.args.push_back(parse_argument(gate));
    while (accept_symbol(",")) b.args.push_back(parse_argument(gate));
    expect_symbol(";");
    if (gate) {
      for (const auto& a : b.args) check_gate_qarg(*gate, a);
    }
    return b;
  }

  Argument parse_argument(const GateDef* gate) {
    const Token& name = expect_identifier("register or qubit name");
    Argument a;
    a.reg = name.text;
    a.pos = name.pos;
    if (accept_symbol("[")) {
      if (gate) {
        throw CompileError(CompileErrc::SyntaxError, name.pos,
                           "indexed arguments are not allowed inside gate definitions");
      }
      a.index = expect_integer("index");
      expect_symbol("]");
    }
    return a;
  }

  GateCall parse_gate_call(const GateDef* gate) {
    const Token& name = expect_identifier("gate name");
    if (name.text == "measure" || name.text == "reset") {
      throw CompileError(CompileErrc::SyntaxError, name.pos,
                         name.text + " is not allowed inside gate definitions");
    }
    GateCall call;
    call.name = name.text;
    call.pos = name.pos;
    const std::vector<std::string>* scope = gate ? &gate->params : nullptr;
    if (accept_symbol("(")) {
      if (!is_symbol(")")) {
        call.params.push_back(expr(scope, false));
        while (accept_symbol(",")) call.params.push_back(expr(scope, false));
      }
      expect_symbol(")");
    }
    if (call.name == "CX") {
      call.args.push_back(parse_argument(gate));
      expect_symbol(",");
      call.args.push_back(parse_argument(gate));
    } else {
      call.args.push_back(parse_argument(gate));
      while (accept_symbol(",")) call.args.push_back(parse_argument(gate));
    }
    expect_symbol(";");

    check_arity(call);
    if (gate) {
      for (const auto& a : call.args) check_gate_qarg(*gate, a);
      for (std::size_t i = 0; i < call.args.size(); ++i) {
        for (std::size_t j = i + 1; j < call.args.size(); ++j) {
          if (call.args[i].reg == call.args[j].reg) {
            semantic_error(call.args[j].pos,
                           "qubit '" + call.args[j].reg + "' used twice in one gate application");
          }
        }
      }
    }
    return call;
  }

  void check_arity(const GateCall& call) const {
    std::size_t nparams = 0;
    std::size_t nqubits = 0;
    if (call.name == "U") {
      nparams = 3;
      nqubits = 1;
    } else if (call.name == "CX") {
      nparams = 0;
      nqubits = 2;
    } else if (const GateDef* def = prog_.find_gate(call.name)) {
      nparams = def->params.size();
      nqubits = def->qargs.size();
    } else {
      std::string msg = "undefined gate '" + call.name + "'";
      if (!prog_.find_gate("u3")) msg += "; add include \"qelib1.inc\"; to use the standard gates";
      semantic_error(call.pos, msg);
    }
    if (call.params.size() != nparams) {
      semantic_error(call.pos, "gate '" + call.name + "' takes " + std::to_string(nparams) +
                                   " parameter(s) but " + std::to_string(call.params.size()) +
                                   " were given");
    }
    if (call.args.size() != nqubits) {
      semantic_error(call.pos, "gate '" + call.name + "' acts on " + std::to_string(nqubits) +
                                   " qubit(s) but " + std::to_string(call.args.size()) +
                                   " were given");
    }
  }

  static void check_gate_qarg(const GateDef& gate, const Argument& a) {
    if (std::find(gate.qargs.begin(), gate.qargs.end(), a.reg) == gate.qargs.end()) {
      semantic_error(a.pos, "'" + a.reg + "' is not a qubit argument of gate '" + gate.name + "'");
    }
  }

  // ---- statement semantics (top level) -------------------------------------

  const RegisterDecl& resolve(const Argument& a, bool quantum) const {
    const RegisterDecl* reg = quantum ? prog_.find_qreg(a.reg) : prog_.find_creg(a.reg);
    if (!reg) {
      const bool other = quantum ? prog_.find_creg(a.reg) != nullptr
                                 : prog_.find_qreg(a.reg) != nullptr;
      if (other) {
        semantic_error(a.pos, "'" + a.reg + "' is a " + (quantum ? "classical" : "quantum") +
                                  " register; expected a " + (quantum ? "quantum" : "classical") +
                                  " one");
      }
      semantic_error(a.pos, std::string("undeclared ") + (quantum ? "quantum" : "classical") +
                                " register '" + a.reg + "'");
    }
    if (a.index && *a.index >= reg->size) {
      semantic_error(a.pos, "index " + std::to_string(*a.index) + " out of range for register '" +
                                a.reg + "' of size " + std::to_string(reg->size));
    }
    return *reg;
  }

  // Whole-register arguments broadcast; their sizes must agree.
  void check_broadcast(const std::vector<Argument>& args, bool require_distinct) const {
    std::optional<std::size_t> width;
    for (const auto& a : args) {
      const auto& reg = resolve(a, true);
      if (!a.index) {
        if (width && *width != reg.size) {
          semantic_error(a.pos, "register '" + a.reg + "' has size " + std::to_string(reg.size) +
                                    " but other register arguments have size " +
                                    std::to_string(*width));
        }
        width = reg.size;
      }
    }
    if (!require_distinct) return;
    for (std::size_t i = 0; i < args.size(); ++i) {
      for (std::size_t j = i + 1; j < args.size(); ++j) {
        const auto& a = args[i];
        const auto& b = args[j];
        if (a.reg != b.reg) continue;
        if (!a.index || !b.index || *a.index == *b.index) {
          semantic_error(b.pos, "qubit argument '" + b.reg + "' overlaps an earlier argument");
        }
      }
    }
  }

  void check_statement(const Statement& st) const {
    std::visit(
        [&](const auto& op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, GateCall>) {
            check_broadcast(op.args, true);
          } else if constexpr (std::is_same_v<T, MeasureStmt>) {
            const auto& q = resolve(op.qubit, true);
            const auto& c = resolve(op.bit, false);
            if (op.qubit.index.has_value() != op.bit.index.has_value()) {
              semantic_error(op.pos, "measure must map a qubit to a bit or a register to a register");
            }
            if (!op.qubit.index && q.size != c.size) {
              semantic_error(op.pos, "measure between registers of different sizes (" +
                                         std::to_string(q.size) + " vs " + std::to_string(c.size) +
                                         ")");
            }
          } else if constexpr (std::is_same_v<T, ResetStmt>) {
            resolve(op.qubit, true);
          } else if constexpr (std::is_same_v<T, BarrierStmt>) {
            check_broadcast(op.args, false);
          }
        },
        st.op);
  }

  // ---- expressions -----------------------------------------------------------
  //   expr  := term (('+'|'-') term)*
  //   term  := unary (('*'|'/') unary)*
  //   unary := '-' unary | '+' unary | power
  //   power := primary ('^' unary)?          right-associative

  Expr expr(ParamScope scope, bool allow_free) {
    Expr lhs = term(scope, allow_free);
    for (;;) {
      if (accept_symbol("+")) {
        lhs = Expr::binary(Expr::Kind::Add, lhs, term(scope, allow_free));
      } else if (accept_symbol("-")) {
        lhs = Expr::binary(Expr::Kind::Sub, lhs, term(scope, allow_free));
      } else {
        return lhs;
      }
    }
  }

  Expr term(ParamScope scope, bool allow_free) {
    Expr lhs = unary(scope, allow_free);
    for (;;) {
      if (accept_symbol("*")) {
        lhs = Expr::binary(Expr::Kind::Mul, lhs, unary(scope, allow_free));
      } else if (accept_symbol("/")) {
        lhs = Expr::binary(Expr::Kind::Div, lhs, unary(scope, allow_free));
      } else {
        return lhs;
      }
    }
  }

  Expr unary(ParamScope scope, bool allow_free) {
    if (accept_symbol("-")) return Expr::negate(unary(scope, allow_free));
    if (accept_symbol("+")) return unary(scope, allow_free);
    return power(scope, allow_free);
  }

  Expr power(ParamScope scope, bool allow_free) {
    Expr base = primary(scope, allow_free);
    if (accept_symbol("^")) return Expr::binary(Expr::Kind::Pow, base, unary(scope, allow_free));
    return base;
  }

  Expr primary(ParamScope scope, bool allow_free) {
    const Token& t = peek();
    if (t.kind == TokenKind::Integer || t.kind == TokenKind::Real) {
      take();
      const double v = std::strtod(t.text.c_str(), nullptr);
      if (!std::isfinite(v)) {
        throw CompileError(CompileErrc::SyntaxError, t.pos, "number '" + t.text + "' out of range");
      }
      return Expr::number(v);
    }
    if (accept_symbol("(")) {
      Expr inner = expr(scope, allow_free);
      expect_symbol(")");
      return inner;
    }
    if (t.kind == TokenKind::Identifier) {
      take();
      if (t.text == "pi") return Expr::pi();
      if (const auto fn = lookup_func(t.text)) {
        expect_symbol("(");
        Expr arg = expr(scope, allow_free);
        expect_symbol(")");
        return Expr::call(*fn, arg);
      }
      const bool bound =
          scope && std::find(scope->begin(), scope->end(), t.text) != scope->end();
      if (!bound && !allow_free) {
        semantic_error(t.pos, "unknown identifier '" + t.text + "' in expression");
      }
      return Expr::param(t.text);
    }
    syntax_error("expected an expression but found " + detail::describe(t));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Program& prog_;
  bool in_include_;
};

}  // namespace

Program parse(std::string_view source) {
  Program program;
  Parser parser(detail::tokenize(source), program, false);
  parser.parse_program();
  return program;
}

Expr parse_expr(std::string_view text) {
  Program scratch;
  Parser parser(detail::tokenize(text), scratch, true);
  return parser.parse_standalone_expr();
}

}  // namespace oscqasm::qasm
