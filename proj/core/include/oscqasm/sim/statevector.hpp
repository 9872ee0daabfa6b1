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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace oscqasm::sim {

using Amplitude = std::complex<double>;

/// Dense n-qubit pure state. Basis index bit q holds qubit q, so qubit 0 is
/// the least-significant bit.
class Statevector {
 public:
  /// |0...0> on `num_qubits` qubits.
  explicit Statevector(std::size_t num_qubits);
  Statevector(std::size_t num_qubits, std::vector<Amplitude> amplitudes);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  Amplitude operator[](std::size_t index) const { return amps_[index]; }

  void reset_to_zero();

  /// U(theta, phi, lambda) =
  ///   [[cos(t/2),            -e^{i l} sin(t/2)],
  ///    [e^{i p} sin(t/2),     e^{i(p+l)} cos(t/2)]]
  void apply_u(double theta, double phi, double lambda, std::size_t qubit);
  void apply_matrix(const Amplitude (&m)[2][2], std::size_t qubit);
  void apply_cx(std::size_t control, std::size_t target);
  /// Exact bit flip (amplitude swap), used by reset.
  void apply_x(std::size_t qubit);

  double probability_of_one(std::size_t qubit) const;
  /// Projects onto `outcome` for `qubit` and renormalizes. `probability`
  /// is the prior probability of that outcome (must be > 0).
  void collapse(std::size_t qubit, bool outcome, double probability);

  double norm_squared() const;
  std::vector<double> probabilities() const;

 private:
  void check_qubit(std::size_t qubit) const;

  std::size_t num_qubits_;
  std::vector<Amplitude> amps_;
};

/// The 2x2 matrix of U(theta, phi, lambda), row-major.
void u_matrix(double theta, double phi, double lambda, Amplitude (&out)[2][2]);

}  // namespace oscqasm::sim
