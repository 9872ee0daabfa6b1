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
#include <string>
#include <string_view>
#include <vector>

namespace oscqasm::server {

enum class BackendKind { LocalSimulator, Remote };

struct BackendLimits {
  std::size_t max_qubits = 20;
  std::uint64_t max_shots = 1'048'576;
};

struct BackendDescriptor {
  std::string name;
  BackendKind kind = BackendKind::LocalSimulator;
  BackendLimits limits;
};

/// Named execution targets. Always contains "qasm_simulator".
class BackendRegistry {
 public:
  explicit BackendRegistry(std::size_t local_max_qubits = 20);

  /// Throws std::invalid_argument on a duplicate name.
  void add(BackendDescriptor backend);
  const BackendDescriptor* find(std::string_view name) const;
  std::vector<std::string> names() const;
  const std::vector<BackendDescriptor>& all() const { return backends_; }

 private:
  std::vector<BackendDescriptor> backends_;
};

}  // namespace oscqasm::server
