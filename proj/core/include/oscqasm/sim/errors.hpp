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

#include <string>
#include <string_view>

#include "oscqasm/error.hpp"

namespace oscqasm::sim {

enum class SimErrc {
  IndexOutOfRange,
  ControlEqualsTarget,
  TooManyQubits,
  ShotsOutOfRange,
  NoMeasurements,
  BadDistribution,
};

std::string_view to_string(SimErrc code);

class SimError : public Error {
 public:
  SimError(SimErrc code, std::string message)
      : Error(std::string(to_string(code)), std::move(message)), errc_(code) {}
  SimErrc errc() const noexcept { return errc_; }

 private:
  SimErrc errc_;
};

}  // namespace oscqasm::sim
