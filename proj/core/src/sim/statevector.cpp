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

#include "oscqasm/sim/statevector.hpp"

#include <algorithm>
#include <cmath>

#include "oscqasm/sim/errors.hpp"

namespace oscqasm::sim {

std::string_view to_string(SimErrc code) {
  switch (code) {
    case SimErrc::IndexOutOfRange: return "IndexOutOfRange";
    case SimErrc::ControlEqualsTarget: return "ControlEqualsTarget";
    case SimErrc::TooManyQubits: return "TooManyQubits";
    case SimErrc::ShotsOutOfRange: return "ShotsOutOfRange";
    case SimErrc::NoMeasurements: return "NoMeasurements";
    case SimErrc::BadDistribution: return "BadDistribution";
  }
  return "SimError";
}

void u_matrix(double theta, double phi, double lambda, Amplitude (&out)[2][2]) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  out[0][0] = c;
  out[0][1] = -std::polar(1.0, lambda) * s;
  out[1][0] = std::polar(1.0, phi) * s;
  out[1][1] = std::polar(1.0, phi + lambda) * c;
}

Statevector::Statevector(std::size_t num_qubits)
    : num_qubits_(num_qubits), amps_(std::size_t{1} << num_qubits) {
  amps_[0] = 1.0;
}

Statevector::Statevector(std::size_t num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
  if (amps_.size() != (std::size_t{1} << num_qubits)) {
    throw SimError(SimErrc::IndexOutOfRange, "amplitude count does not match 2^num_qubits");
  }
}

void Statevector::reset_to_zero() {
  std::fill(amps_.begin(), amps_.end(), Amplitude{});
  amps_[0] = 1.0;
}

void Statevector::check_qubit(std::size_t qubit) const {
  if (qubit >= num_qubits_) {
    throw SimError(SimErrc::IndexOutOfRange, "qubit " + std::to_string(qubit) +
                                                 " out of range for " +
                                                 std::to_string(num_qubits_) + "-qubit state");
  }
}

void Statevector::apply_u(double theta, double phi, double lambda, std::size_t qubit) {
  Amplitude m[2][2];
  u_matrix(theta, phi, lambda, m);
  apply_matrix(m, qubit);
}

void Statevector::apply_matrix(const Amplitude (&m)[2][2], std::size_t qubit) {
  check_qubit(qubit);
  const std::size_t stride = std::size_t{1} << qubit;
  const std::size_t dim = amps_.size();
  Amplitude* a = amps_.data();
  for (std::size_t block = 0; block < dim; block += 2 * stride) {
    for (std::size_t j = block; j < block + stride; ++j) {
      const Amplitude a0 = a[j];
      const Amplitude a1 = a[j + stride];
      a[j] = m[0][0] * a0 + m[0][1] * a1;
      a[j + stride] = m[1][0] * a0 + m[1][1] * a1;
    }
  }
}

void Statevector::apply_cx(std::size_t control, std::size_t target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) {
    throw SimError(SimErrc::ControlEqualsTarget,
                   "CX control and target are both qubit " + std::to_string(control));
  }
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
  }
}

void Statevector::apply_x(std::size_t qubit) {
  check_qubit(qubit);
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
  }
}

double Statevector::probability_of_one(std::size_t qubit) const {
  check_qubit(qubit);
  const std::size_t bit = std::size_t{1} << qubit;
  double p = 0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) p += std::norm(amps_[i]);
  }
  return p;
}

void Statevector::collapse(std::size_t qubit, bool outcome, double probability) {
  check_qubit(qubit);
  const std::size_t bit = std::size_t{1} << qubit;
  const double scale = 1.0 / std::sqrt(probability);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (static_cast<bool>(i & bit) == outcome) {
      amps_[i] *= scale;
    } else {
      amps_[i] = 0;
    }
  }
}

double Statevector::norm_squared() const {
  double n = 0;
  for (const auto& a : amps_) n += std::norm(a);
  return n;
}

std::vector<double> Statevector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
  return p;
}

}  // namespace oscqasm::sim
