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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace oscqasm::server {

inline constexpr std::uint16_t kDefaultReceivePort = 1416;
inline constexpr std::uint16_t kDefaultSendPort = 1417;
inline constexpr const char* kDefaultTargetIp = "127.0.0.1";
inline constexpr const char* kDefaultBackend = "qasm_simulator";

/// Cloud-account fields shown by the operator panel when remote hardware is enabled.
struct Credentials {
  std::string token;
  std::string hub;
  std::string group;
  std::string project;

  bool operator==(const Credentials&) const = default;
};

struct ServerConfig {
  std::uint16_t receive_port = kDefaultReceivePort;
  std::uint16_t send_port = kDefaultSendPort;
  std::string target_ip = kDefaultTargetIp;
  /// false: listen on loopback only. true: listen on `bind_ip`, or on the
  /// primary adapter address when `bind_ip` is empty.
  bool remote = false;
  std::optional<std::string> bind_ip;
  std::optional<Credentials> credentials;
  std::size_t max_qubits = 20;
  std::uint32_t default_shots = 1024;
  std::optional<std::uint64_t> seed;
  /// Jobs executed concurrently. 1 keeps replies in request order.
  std::size_t job_workers = 1;
  std::size_t max_datagram = 65507;
  std::chrono::milliseconds remote_poll_budget{300'000};
  std::chrono::milliseconds remote_poll_interval{200};

  bool operator==(const ServerConfig&) const = default;
};

struct FieldError {
  std::string field;
  std::string message;
};

/// Empty when `config` is usable.
std::vector<FieldError> validate(const ServerConfig& config);

/// "****" followed by the last four characters; tokens of four characters
/// or fewer are fully masked.
std::string redact_token(const std::string& token);

/// One-line summary for the boot log. Never includes the full token.
std::string describe(const ServerConfig& config);

}  // namespace oscqasm::server
