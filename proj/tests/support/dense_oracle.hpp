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

// Brute-force reference: full 2^n x 2^n matrices multiplied together.
// Deliberately shares no code with the simulator.

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "oscqasm/qasm/circuit.hpp"

namespace oscqasm::testing {

using cd = std::complex<double>;

struct Dense {
  std::size_t dim = 0;
  std::vector<cd> a;  // row-major

  explicit Dense(std::size_t d) : dim(d), a(d * d) {}
  cd& operator()(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  cd operator()(std::size_t r, std::size_t c) const { return a[r * dim + c]; }

  static Dense identity(std::size_t d) {
    Dense m(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
  }
};

inline Dense operator*(const Dense& x, const Dense& y) {
  Dense out(x.dim);
  for (std::size_t r = 0; r < x.dim; ++r)
    for (std::size_t k = 0; k < x.dim; ++k) {
      const cd v = x(r, k);
      if (v == cd{}) continue;
      for (std::size_t c = 0; c < x.dim; ++c) out(r, c) += v * y(k, c);
    }
  return out;
}

/// Textbook U(theta, phi, lambda).
inline Dense u_2x2(double t, double p, double l) {
  Dense m(2);
  m(0, 0) = std::cos(t / 2);
  m(0, 1) = -std::exp(cd(0, l)) * std::sin(t / 2);
  m(1, 0) = std::exp(cd(0, p)) * std::sin(t / 2);
  m(1, 1) = std::exp(cd(0, p + l)) * std::cos(t / 2);
  return m;
}

/// Embeds a 2x2 matrix acting on qubit q (bit q of the basis index).
inline Dense embed_1q(const Dense& g, std::size_t q, std::size_t n) {
  const std::size_t d = std::size_t{1} << n;
  const std::size_t bit = std::size_t{1} << q;
  Dense m(d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      if ((r & ~bit) != (c & ~bit)) continue;
      m(r, c) = g((r & bit) ? 1 : 0, (c & bit) ? 1 : 0);
    }
  return m;
}

inline Dense cx_full(std::size_t control, std::size_t target, std::size_t n) {
  const std::size_t d = std::size_t{1} << n;
  Dense m(d);
  for (std::size_t c = 0; c < d; ++c) {
    const std::size_t r = (c >> control & 1) ? c ^ (std::size_t{1} << target) : c;
    m(r, c) = 1.0;
  }
  return m;
}

/// Product of every U and CX op, in circuit order. Measurements and
/// barriers are ignored; dynamics are rejected.
inline Dense circuit_unitary(const qasm::CircuitIR& circ) {
  const std::size_t n = circ.num_qubits;
  Dense total = Dense::identity(std::size_t{1} << n);
  for (const auto& op : circ.ops) {
    if (const auto* u = std::get_if<qasm::UOp>(&op)) {
      total = embed_1q(u_2x2(u->theta, u->phi, u->lambda), u->qubit, n) * total;
    } else if (const auto* cx = std::get_if<qasm::CXOp>(&op)) {
      total = cx_full(cx->control, cx->target, n) * total;
    } else if (std::holds_alternative<qasm::ResetOp>(op) ||
               std::holds_alternative<qasm::ConditionalOp>(op)) {
      throw std::invalid_argument("dense oracle handles unitary circuits only");
    }
  }
  return total;
}

/// Exact outcome distribution of a circuit whose measurements all come
/// last, keyed the same way as Counts.
inline std::map<std::string, double> oracle_distribution(const qasm::CircuitIR& circ) {
  const Dense u = circuit_unitary(circ);
  std::vector<std::ptrdiff_t> source(circ.num_clbits, -1);  // clbit -> measured qubit
  for (const auto& op : circ.ops) {
    if (const auto* m = std::get_if<qasm::MeasureOp>(&op)) {
      source[m->clbit] = static_cast<std::ptrdiff_t>(m->qubit);
    }
  }
  std::map<std::string, double> dist;
  for (std::size_t basis = 0; basis < u.dim; ++basis) {
    const double p = std::norm(u(basis, 0));
    std::string key;
    for (auto reg = circ.clbit_layout.rbegin(); reg != circ.clbit_layout.rend(); ++reg) {
      if (!key.empty()) key += ' ';
      for (std::size_t i = reg->size; i-- > 0;) {
        const auto q = source[reg->offset + i];
        key += (q >= 0 && (basis >> q & 1)) ? '1' : '0';
      }
    }
    dist[key] += p;
  }
  return dist;
}

/// True when a == e^{i alpha} b for some alpha, entrywise within tol.
inline bool equal_up_to_phase(const Dense& a, const Dense& b, double tol) {
  cd phase{};
  for (std::size_t i = 0; i < a.a.size(); ++i) {
    if (std::abs(b.a[i]) > 0.5 / static_cast<double>(a.dim)) {
      phase = a.a[i] / b.a[i];
      break;
    }
  }
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  for (std::size_t i = 0; i < a.a.size(); ++i) {
    if (std::abs(a.a[i] - phase * b.a[i]) > tol) return false;
  }
  return true;
}

/// Five standard deviations of Binomial(n, p) around its mean.
struct Band {
  double lo, hi;
  bool contains(double x) const { return x >= lo && x <= hi; }
};
inline Band five_sigma(double n, double p) {
  const double s = 5.0 * std::sqrt(n * p * (1 - p));
  return {n * p - s, n * p + s};
}

}  // namespace oscqasm::testing
