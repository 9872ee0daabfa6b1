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

#include "oscqasm/sim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oscqasm::sim {

using qasm::CircuitIR;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Hard ceiling independent of configuration: 2^30 amplitudes is 16 GiB.
constexpr std::size_t kAbsoluteMaxQubits = 30;

void check_size(const CircuitIR& circuit, std::size_t max_qubits) {
  const std::size_t limit = std::min(max_qubits, kAbsoluteMaxQubits);
  if (circuit.num_qubits > limit) {
    throw SimError(SimErrc::TooManyQubits,
                   "circuit uses " + std::to_string(circuit.num_qubits) +
                       " qubits but this backend allows at most " + std::to_string(limit));
  }
}

void apply_primitive(Statevector& sv, const qasm::PrimitiveOp& op, std::vector<bool>& clbits,
                     Rng& rng);

bool condition_holds(const CircuitIR& circuit, const qasm::ConditionalOp& c,
                     const std::vector<bool>& clbits) {
  const auto* reg = circuit.find_creg(c.creg);
  if (!reg) return false;
  for (std::size_t i = 0; i < reg->size; ++i) {
    const bool want = i < 64 && ((c.value >> i) & 1U);
    if (clbits[reg->offset + i] != want) return false;
  }
  return true;
}

bool measure(Statevector& sv, std::size_t qubit, Rng& rng) {
  const double p1 = std::clamp(sv.probability_of_one(qubit), 0.0, 1.0);
  const bool outcome = rng.uniform() < p1;
  sv.collapse(qubit, outcome, outcome ? p1 : 1.0 - p1);
  return outcome;
}

void apply_primitive(Statevector& sv, const qasm::PrimitiveOp& op, std::vector<bool>& clbits,
                     Rng& rng) {
  if (const auto* u = std::get_if<qasm::UOp>(&op)) {
    sv.apply_u(u->theta, u->phi, u->lambda, u->qubit);
  } else if (const auto* cx = std::get_if<qasm::CXOp>(&op)) {
    sv.apply_cx(cx->control, cx->target);
  } else if (const auto* m = std::get_if<qasm::MeasureOp>(&op)) {
    clbits[m->clbit] = measure(sv, m->qubit, rng);
  } else if (const auto* r = std::get_if<qasm::ResetOp>(&op)) {
    if (measure(sv, r->qubit, rng)) sv.apply_x(r->qubit);
  }
}

// Per-index counts for `shots` inverse-CDF draws over `weights`.
std::vector<std::uint64_t> sample_indices(std::span<const double> weights, std::uint64_t shots,
                                          Rng& rng) {
  std::vector<double> cumulative(weights.size());
  double total = 0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    total += weights[i];
    cumulative[i] = total;
    if (weights[i] > 0) last_positive = i;
  }
  std::vector<std::uint64_t> hits(weights.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t idx = it == cumulative.end()
                                ? last_positive
                                : static_cast<std::size_t>(it - cumulative.begin());
    ++hits[idx];
  }
  return hits;
}

// Final clbit -> qubit wiring of a circuit without dynamics: the last measure
// into each clbit wins. Unmeasured clbits stay 0.
struct Readout {
  std::vector<std::optional<std::size_t>> clbit_source;  // clbit -> qubit
  std::vector<std::size_t> measured;                     // distinct qubits, ascending
};

Readout readout_of(const CircuitIR& circuit) {
  Readout r;
  r.clbit_source.resize(circuit.num_clbits);
  for (const auto& op : circuit.ops) {
    if (const auto* m = std::get_if<qasm::MeasureOp>(&op)) r.clbit_source[m->clbit] = m->qubit;
  }
  std::vector<bool> seen(circuit.num_qubits, false);
  for (const auto& src : r.clbit_source) {
    if (src) seen[*src] = true;
  }
  for (std::size_t q = 0; q < circuit.num_qubits; ++q) {
    if (seen[q]) r.measured.push_back(q);
  }
  return r;
}

// Probability of each assignment of the measured qubits, indexed by the
// compressed bit pattern (bit k <-> measured[k]).
std::vector<double> marginal(const Statevector& sv, const std::vector<std::size_t>& measured) {
  std::vector<double> out(std::size_t{1} << measured.size(), 0.0);
  const auto amps = sv.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p == 0) continue;
    std::size_t idx = 0;
    for (std::size_t k = 0; k < measured.size(); ++k) {
      idx |= ((i >> measured[k]) & 1U) << k;
    }
    out[idx] += p;
  }
  return out;
}

std::string key_for(const CircuitIR& circuit, const Readout& r, std::size_t compressed) {
  std::vector<bool> clbits(circuit.num_clbits, false);
  for (std::size_t c = 0; c < circuit.num_clbits; ++c) {
    if (!r.clbit_source[c]) continue;
    const auto pos = std::lower_bound(r.measured.begin(), r.measured.end(), *r.clbit_source[c]) -
                     r.measured.begin();
    clbits[c] = (compressed >> pos) & 1U;
  }
  return format_key(circuit.clbit_layout, clbits);
}

void validate_run(const CircuitIR& circuit, std::uint64_t shots, const RunOptions& options) {
  if (shots < 1 || shots > kMaxShots) {
    throw SimError(SimErrc::ShotsOutOfRange, "shots must be between 1 and " +
                                                 std::to_string(kMaxShots) + ", got " +
                                                 std::to_string(shots));
  }
  check_size(circuit, options.max_qubits);
  if (circuit.measure_count() == 0) {
    throw SimError(SimErrc::NoMeasurements,
                   "circuit has no measurement; add measure instructions to obtain counts");
  }
}

Counts run_fast(const CircuitIR& circuit, std::uint64_t shots, std::uint64_t seed) {
  const Statevector sv = evolve_unitary(circuit);
  const Readout r = readout_of(circuit);
  const std::vector<double> probs = marginal(sv, r.measured);
  Rng rng(seed);
  const auto hits = sample_indices(probs, shots, rng);
  Counts counts;
  for (std::size_t idx = 0; idx < hits.size(); ++idx) {
    if (hits[idx] != 0) counts[key_for(circuit, r, idx)] += hits[idx];
  }
  return counts;
}

Counts run_trajectories(const CircuitIR& circuit, std::uint64_t shots, std::uint64_t seed) {
  Statevector sv(circuit.num_qubits);
  std::vector<bool> clbits(circuit.num_clbits);
  Counts counts;
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    Rng rng(Rng::stream_seed(seed, shot));
    sv.reset_to_zero();
    std::fill(clbits.begin(), clbits.end(), false);
    for (const auto& op : circuit.ops) {
      if (const auto* c = std::get_if<qasm::ConditionalOp>(&op)) {
        if (condition_holds(circuit, *c, clbits)) apply_primitive(sv, c->op, clbits, rng);
      } else if (!std::holds_alternative<qasm::BarrierOp>(op)) {
        std::visit(
            [&](const auto& p) {
              using T = std::decay_t<decltype(p)>;
              if constexpr (!std::is_same_v<T, qasm::BarrierOp> &&
                            !std::is_same_v<T, qasm::ConditionalOp>) {
                apply_primitive(sv, p, clbits, rng);
              }
            },
            op);
      }
    }
    ++counts[format_key(circuit.clbit_layout, clbits)];
  }
  return counts;
}

}  // namespace

std::uint64_t Rng::stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed + (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

std::uint64_t Rng::entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string format_key(const std::vector<qasm::ClassicalRegister>& layout,
                       const std::vector<bool>& clbits) {
  std::string key;
  for (auto reg = layout.rbegin(); reg != layout.rend(); ++reg) {
    if (!key.empty()) key.push_back(' ');
    for (std::size_t i = reg->size; i-- > 0;) key.push_back(clbits[reg->offset + i] ? '1' : '0');
  }
  return key;
}

Statevector evolve_unitary(const CircuitIR& circuit) {
  Statevector sv(circuit.num_qubits);
  for (const auto& op : circuit.ops) {
    if (const auto* u = std::get_if<qasm::UOp>(&op)) {
      sv.apply_u(u->theta, u->phi, u->lambda, u->qubit);
    } else if (const auto* cx = std::get_if<qasm::CXOp>(&op)) {
      sv.apply_cx(cx->control, cx->target);
    }
  }
  return sv;
}

Distribution outcome_probabilities(const CircuitIR& circuit, std::size_t max_qubits) {
  check_size(circuit, max_qubits);
  if (circuit.has_dynamics) {
    throw std::invalid_argument("outcome_probabilities requires a circuit without dynamics");
  }
  const Statevector sv = evolve_unitary(circuit);
  const Readout r = readout_of(circuit);
  const std::vector<double> probs = marginal(sv, r.measured);
  Distribution out;
  for (std::size_t idx = 0; idx < probs.size(); ++idx) {
    if (probs[idx] > 0) out[key_for(circuit, r, idx)] += probs[idx];
  }
  return out;
}

Counts run(const CircuitIR& circuit, std::uint64_t shots, const RunOptions& options) {
  validate_run(circuit, shots, options);
  const std::uint64_t seed = options.seed.value_or(Rng::entropy_seed());
  switch (options.mode) {
    case RunMode::Trajectory:
      return run_trajectories(circuit, shots, seed);
    case RunMode::FastPath:
      if (circuit.has_dynamics) {
        throw std::invalid_argument("fast path cannot simulate mid-circuit dynamics");
      }
      return run_fast(circuit, shots, seed);
    case RunMode::Auto:
      break;
  }
  return circuit.has_dynamics ? run_trajectories(circuit, shots, seed)
                              : run_fast(circuit, shots, seed);
}

Counts sample_counts(const Distribution& probabilities, std::uint64_t shots,
                     std::optional<std::uint64_t> seed) {
  if (probabilities.empty()) throw SimError(SimErrc::BadDistribution, "empty distribution");
  std::vector<double> weights;
  weights.reserve(probabilities.size());
  double total = 0;
  for (const auto& [key, p] : probabilities) {
    if (!std::isfinite(p) || p < 0) {
      throw SimError(SimErrc::BadDistribution,
                     "probability of '" + key + "' is negative or not finite");
    }
    weights.push_back(p);
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw SimError(SimErrc::BadDistribution,
                   "probabilities sum to " + std::to_string(total) + ", not 1");
  }
  Rng rng(seed.value_or(Rng::entropy_seed()));
  const auto hits = sample_indices(weights, shots, rng);
  Counts counts;
  std::size_t i = 0;
  for (const auto& entry : probabilities) {
    if (hits[i] != 0) counts[entry.first] = hits[i];
    ++i;
  }
  return counts;
}

}  // namespace oscqasm::sim
