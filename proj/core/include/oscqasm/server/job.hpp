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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "oscqasm/error.hpp"
#include "oscqasm/osc/codec.hpp"
#include "oscqasm/server/backends.hpp"
#include "oscqasm/server/config.hpp"
#include "oscqasm/server/net.hpp"
#include "oscqasm/server/remote.hpp"
#include "oscqasm/sim/simulator.hpp"

namespace oscqasm::server {

inline constexpr const char* kQuTunePath = "/QuTune";
inline constexpr const char* kCountsPath = "/counts";
inline constexpr const char* kInfoPath = "/info";
inline constexpr const char* kErrorPath = "/error";

/// Request-level failure. `code()` is one of MissingQasm, BadArgType,
/// ShotsOutOfRange, UnknownPath, UnknownBackend, NoMeasurements, Busy,
/// Cancelled, or any code raised by the codec, compiler, simulator or
/// remote provider.
class JobError : public Error {
 public:
  using Error::Error;
};

struct JobRequest {
  std::uint64_t id = 0;
  std::string qasm_source;
  std::uint64_t shots = 1024;
  std::string backend_name = "qasm_simulator";
  Endpoint reply_addr;
  Endpoint source;
  std::chrono::system_clock::time_point received_at{};
};

struct JobFailure {
  std::string code;
  std::string message;

  std::string to_string() const { return code + ": " + message; }
};

/// Exactly one of `counts` and `error` is set.
struct JobResult {
  std::optional<sim::Counts> counts;
  std::optional<JobFailure> error;
  std::chrono::milliseconds elapsed{0};
  std::size_t num_qubits = 0;

  bool ok() const { return counts.has_value(); }
};

/// Turns a `/QuTune` message into a request:
///   arg 1 (s)      Qasm source, required
///   arg 2 (i or f) shots, default `config.default_shots`; floats truncate toward zero
///   arg 3 (s)      backend name, default "qasm_simulator"
/// The reply address is always (config.target_ip, config.send_port).
JobRequest handle_qutune(const osc::Message& msg, const Endpoint& source,
                         const ServerConfig& config);

struct ExecutionContext {
  const BackendRegistry* registry = nullptr;
  RemoteProvider* provider = nullptr;
  std::optional<Credentials> credentials;
  std::optional<std::uint64_t> seed;
  PollPolicy poll;
  std::function<bool()> cancelled;
};

/// Compile, then dispatch to the local simulator or the remote provider.
/// Never throws for request-level problems; they come back as `error`.
JobResult execute(const JobRequest& request, const ExecutionContext& context);

/// `{"00": 517, "11": 507}`: keys ordered by descending count, ties
/// broken lexicographically.
std::string counts_to_json(const sim::Counts& counts);

/// Messages sent for a finished job: `/info` "job <id> done in <ms> ms"
/// then `/counts` on success, or a single `/error` "code: message".
std::vector<osc::Message> reply_messages(const JobResult& result, const JobRequest& request);

osc::Message error_message(const std::string& code, const std::string& message);

}  // namespace oscqasm::server
