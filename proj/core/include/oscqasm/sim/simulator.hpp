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
#include <random>
#include <span>
#include <string>
#include <vector>

#include "oscqasm/qasm/circuit.hpp"
#include "oscqasm/sim/errors.hpp"
#include "oscqasm/sim/statevector.hpp"

namespace oscqasm::sim {

/// Classical bitstring -> number of shots that produced it.
///
/// Key layout: registers are printed last-declared first, separated by a
/// single space; inside a register bit 0 is the rightmost character. A
/// circuit with `creg a[2]; creg b[1];` and a=0b01, b=1 produces "1 01".
using Counts = std::map<std::string, std::uint64_t>;

/// Outcome key -> probability.
using Distribution = std::map<std::string, double>;

inline constexpr std::uint64_t kMaxShots = 1'048'576;
inline constexpr std::size_t kDefaultMaxQubits = 20;

/// Seeded randomness for sampling.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard, seeded directly with the 64-bit seed. Uniform doubles are
/// formed from the top 53 bits of each draw ((x >> 11) * 2^-53), so a
/// given seed reproduces bit-identically on every conforming platform.
/// Trajectory shot k uses its own engine seeded with
/// splitmix64(seed + (k + 1) * 0x9E3779B97F4A7C15).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  static std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);
  /// 64 bits from std::random_device.
  static std::uint64_t entropy_seed();

 private:
  std::mt19937_64 engine_;
};

enum class RunMode {
  Auto,        // fast path unless the circuit has dynamics
  FastPath,    // single evolution + sampling; rejected for dynamic circuits
  Trajectory,  // per-shot evolution with collapse
};

struct RunOptions {
  std::size_t max_qubits = kDefaultMaxQubits;
  std::optional<std::uint64_t> seed;
  RunMode mode = RunMode::Auto;
};

/// Executes `circuit` for `shots` shots. Throws SimError{TooManyQubits,
/// ShotsOutOfRange, NoMeasurements}.
Counts run(const qasm::CircuitIR& circuit, std::uint64_t shots, const RunOptions& options = {});

/// Exact outcome distribution of a circuit without dynamics, computed by one
/// statevector evolution and marginalizing onto the measured clbits.
Distribution outcome_probabilities(const qasm::CircuitIR& circuit,
                                   std::size_t max_qubits = kDefaultMaxQubits);

/// Multinomial draw of `shots` outcomes by inverse-CDF lookup over the keys
/// in map order. Throws SimError{BadDistribution} unless every probability
/// is finite and non-negative and they sum to 1 within 1e-9.
Counts sample_counts(const Distribution& probabilities, std::uint64_t shots,
                     std::optional<std::uint64_t> seed = std::nullopt);

/// Formats the flat clbit values as a Counts key per the layout above.
std::string format_key(const std::vector<qasm::ClassicalRegister>& layout,
                       const std::vector<bool>& clbits);

/// Runs the unitary prefix of `circuit` (U and CX only; measurement, reset,
/// barrier and conditionals are skipped) on |0...0>.
Statevector evolve_unitary(const qasm::CircuitIR& circuit);

}  // namespace oscqasm::sim
