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
#include <cstdio>
#include <sstream>

#include "oscqasm/qasm/circuit.hpp"

namespace oscqasm::qasm {

const ClassicalRegister* CircuitIR::find_creg(std::string_view name) const {
  for (const auto& r : clbit_layout) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

std::size_t CircuitIR::measure_count() const {
  std::size_t n = 0;
  for (const auto& op : ops) {
    if (std::holds_alternative<MeasureOp>(op)) {
      ++n;
    } else if (const auto* c = std::get_if<ConditionalOp>(&op)) {
      if (std::holds_alternative<MeasureOp>(c->op)) ++n;
    }
  }
  return n;
}

bool detect_dynamics(const std::vector<Op>& ops) {
  std::vector<bool> measured;
  auto touch = [&](std::size_t q) {
    return q < measured.size() && measured[q];
  };
  for (const auto& op : ops) {
    if (std::holds_alternative<ConditionalOp>(op) || std::holds_alternative<ResetOp>(op)) {
      return true;
    }
    if (const auto* u = std::get_if<UOp>(&op)) {
      if (touch(u->qubit)) return true;
    } else if (const auto* cx = std::get_if<CXOp>(&op)) {
      if (touch(cx->control) || touch(cx->target)) return true;
    } else if (const auto* m = std::get_if<MeasureOp>(&op)) {
      if (m->qubit >= measured.size()) measured.resize(m->qubit + 1, false);
      measured[m->qubit] = true;
    }
  }
  return false;
}

namespace {

struct Layout {
  std::map<std::string, std::size_t, std::less<>> qoffset;
  std::map<std::string, std::size_t, std::less<>> coffset;
};

class Elaborator {
 public:
  explicit Elaborator(const Program& prog) : prog_(prog) {}

  CircuitIR run() {
    CircuitIR ir;
    for (const auto& r : prog_.qregs) {
      layout_.qoffset[r.name] = ir.num_qubits;
      ir.num_qubits += r.size;
    }
    for (const auto& r : prog_.cregs) {
      layout_.coffset[r.name] = ir.num_clbits;
      ir.clbit_layout.push_back(ClassicalRegister{r.name, r.size, ir.num_clbits});
      ir.num_clbits += r.size;
    }
    for (const auto& st : prog_.statements) {
      cond_ = st.condition ? &*st.condition : nullptr;
      std::visit([&](const auto& op) { statement(op); }, st.op);
    }
    ir.ops = std::move(ops_);
    ir.has_dynamics = detect_dynamics(ir.ops);
    return ir;
  }

 private:
  void emit(PrimitiveOp op) {
    if (cond_) {
      ops_.emplace_back(ConditionalOp{cond_->creg, cond_->value, std::move(op)});
    } else {
      std::visit([&](auto&& p) { ops_.emplace_back(std::move(p)); }, std::move(op));
    }
  }

  std::size_t width(const std::vector<Argument>& args) const {
    std::size_t w = 1;
    for (const auto& a : args) {
      if (!a.index) w = prog_.find_qreg(a.reg)->size;
    }
    return w;
  }

  std::size_t qubit(const Argument& a, std::size_t k) const {
    return layout_.qoffset.find(a.reg)->second + a.index.value_or(k);
  }

  std::size_t clbit(const Argument& a, std::size_t k) const {
    return layout_.coffset.find(a.reg)->second + a.index.value_or(k);
  }

  void statement(const GateCall& call) {
    std::vector<double> params;
    params.reserve(call.params.size());
    for (const auto& e : call.params) params.push_back(evaluate(e, {}, call.pos));
    const std::size_t w = width(call.args);
    std::vector<std::size_t> qubits(call.args.size());
    for (std::size_t k = 0; k < w; ++k) {
      for (std::size_t i = 0; i < call.args.size(); ++i) qubits[i] = qubit(call.args[i], k);
      apply(call.name, params, qubits, 0, call.pos);
    }
  }

  void statement(const MeasureStmt& m) {
    const std::size_t w = m.qubit.index ? 1 : prog_.find_qreg(m.qubit.reg)->size;
    for (std::size_t k = 0; k < w; ++k) emit(MeasureOp{qubit(m.qubit, k), clbit(m.bit, k)});
  }

  void statement(const ResetStmt& r) {
    const std::size_t w = r.qubit.index ? 1 : prog_.find_qreg(r.qubit.reg)->size;
    for (std::size_t k = 0; k < w; ++k) emit(ResetOp{qubit(r.qubit, k)});
  }

  void statement(const BarrierStmt&) {
    if (!cond_) ops_.emplace_back(BarrierOp{});
  }

  static double evaluate(const Expr& e, const Bindings& b, SourcePos pos) {
    try {
      return eval_expr(e, b);
    } catch (const CompileError& err) {
      throw CompileError(err.errc(), pos, err.message());
    }
  }

  // `depth` counts how many user/library definitions enclose this call.
  void apply(const std::string& name, const std::vector<double>& params,
             const std::vector<std::size_t>& qubits, std::size_t depth, SourcePos pos) {
    if (name == "U") {
      emit(UOp{params[0], params[1], params[2], qubits[0]});
      return;
    }
    if (name == "CX") {
      emit(CXOp{qubits[0], qubits[1]});
      return;
    }
    const GateDef* def = prog_.find_gate(name);
    if (def->opaque) {
      throw CompileError(CompileErrc::OpaqueGate, pos,
                         "opaque gate '" + name + "' has no definition to simulate");
    }
    if (depth >= kMaxExpansionDepth) {
      throw CompileError(CompileErrc::RecursionLimit, pos,
                         "gate expansion deeper than " + std::to_string(kMaxExpansionDepth) +
                             " levels while expanding '" + name + "'");
    }
    Bindings bindings;
    for (std::size_t i = 0; i < def->params.size(); ++i) bindings[def->params[i]] = params[i];

    for (const auto& body_op : def->body) {
      const auto* call = std::get_if<GateCall>(&body_op);
      if (!call) {
        if (!cond_) ops_.emplace_back(BarrierOp{});
        continue;
      }
      std::vector<double> inner_params;
      inner_params.reserve(call->params.size());
      for (const auto& e : call->params) inner_params.push_back(evaluate(e, bindings, pos));
      std::vector<std::size_t> inner_qubits;
      inner_qubits.reserve(call->args.size());
      for (const auto& a : call->args) {
        const auto it = std::find(def->qargs.begin(), def->qargs.end(), a.reg);
        inner_qubits.push_back(qubits[static_cast<std::size_t>(it - def->qargs.begin())]);
      }
      apply(call->name, inner_params, inner_qubits, depth + 1, pos);
    }
  }

  const Program& prog_;
  Layout layout_;
  std::vector<Op> ops_;
  const Condition* cond_ = nullptr;
};

void print_angle(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

void print_primitive(std::ostream& os, const PrimitiveOp& op) {
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, UOp>) {
          os << "U(";
          print_angle(os, p.theta);
          os << ',';
          print_angle(os, p.phi);
          os << ',';
          print_angle(os, p.lambda);
          os << ") q" << p.qubit;
        } else if constexpr (std::is_same_v<T, CXOp>) {
          os << "CX q" << p.control << ",q" << p.target;
        } else if constexpr (std::is_same_v<T, MeasureOp>) {
          os << "measure q" << p.qubit << " -> c" << p.clbit;
        } else {
          os << "reset q" << p.qubit;
        }
      },
      op);
}

}  // namespace

CircuitIR elaborate(const Program& program) { return Elaborator(program).run(); }

CircuitIR compile(std::string_view source) { return elaborate(parse(source)); }

std::string to_debug_text(const CircuitIR& circuit) {
  std::ostringstream os;
  os << "qubits " << circuit.num_qubits << '\n';
  os << "clbits " << circuit.num_clbits << '\n';
  for (const auto& r : circuit.clbit_layout) {
    os << "creg " << r.name << ' ' << r.size << " @" << r.offset << '\n';
  }
  os << "dynamics " << (circuit.has_dynamics ? 1 : 0) << '\n';
  for (const auto& op : circuit.ops) {
    if (const auto* c = std::get_if<ConditionalOp>(&op)) {
      os << "if(" << c->creg << "==" << c->value << ") ";
      print_primitive(os, c->op);
    } else if (std::holds_alternative<BarrierOp>(op)) {
      os << "barrier";
    } else {
      std::visit(
          [&](const auto& p) {
            if constexpr (!std::is_same_v<std::decay_t<decltype(p)>, BarrierOp> &&
                          !std::is_same_v<std::decay_t<decltype(p)>, ConditionalOp>) {
              print_primitive(os, p);
            }
          },
          op);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace oscqasm::qasm
