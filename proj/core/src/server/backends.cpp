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

#include "oscqasm/server/backends.hpp"

#include <stdexcept>

#include "oscqasm/server/config.hpp"
#include "oscqasm/sim/simulator.hpp"

namespace oscqasm::server {

BackendRegistry::BackendRegistry(std::size_t local_max_qubits) {
  backends_.push_back(BackendDescriptor{
      kDefaultBackend, BackendKind::LocalSimulator, BackendLimits{local_max_qubits, sim::kMaxShots}});
}

void BackendRegistry::add(BackendDescriptor backend) {
  if (find(backend.name)) {
    throw std::invalid_argument("backend '" + backend.name + "' is already registered");
  }
  backends_.push_back(std::move(backend));
}

const BackendDescriptor* BackendRegistry::find(std::string_view name) const {
  for (const auto& b : backends_) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

std::vector<std::string> BackendRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(backends_.size());
  for (const auto& b : backends_) out.push_back(b.name);
  return out;
}

}  // namespace oscqasm::server
