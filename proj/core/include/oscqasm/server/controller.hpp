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
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oscqasm/error.hpp"
#include "oscqasm/server/config.hpp"
#include "oscqasm/server/log_bus.hpp"
#include "oscqasm/server/remote.hpp"
#include "oscqasm/server/server.hpp"

namespace oscqasm::server {

/// Stopped -> Starting -> Running -> Stopping -> Stopped. A failed start
/// goes Starting -> Stopped with `last_error` set.
enum class ServerState { Stopped, Starting, Running, Stopping };

std::string_view to_string(ServerState state);

struct ServerStatus {
  ServerState state = ServerState::Stopped;
  /// Token already redacted.
  ServerConfig effective_config;
  std::optional<Endpoint> listen;
  std::uint64_t jobs_done = 0;
  std::optional<std::string> last_error;
  double uptime_s = 0.0;
};

/// Codes: IllegalTransition, ConfigRejected, StartFailed.
class ControllerError : public Error {
 public:
  ControllerError(std::string code, std::string message, std::vector<FieldError> fields = {})
      : Error(std::move(code), std::move(message)), fields_(std::move(fields)) {}
  const std::vector<FieldError>& fields() const noexcept { return fields_; }

 private:
  std::vector<FieldError> fields_;
};

/// Owns the server lifecycle. Thread-safe; transitions are serialized.
class ServerController {
 public:
  ServerController(ServerConfig config, std::shared_ptr<LogBus> log,
                   std::shared_ptr<RemoteProvider> provider = nullptr);
  ~ServerController();

  ServerStatus status() const;
  /// Only while stopped. Throws ControllerError IllegalTransition or
  /// ConfigRejected (with per-field messages).
  ServerStatus apply_config(const ServerConfig& config);
  /// Unredacted copy of the configuration, for merging partial updates.
  ServerConfig config() const;
  /// Throws IllegalTransition unless stopped; StartFailed if the socket
  /// cannot be bound (state returns to stopped, last_error latched).
  ServerStatus start();
  /// Throws IllegalTransition unless running.
  ServerStatus stop();

  std::shared_ptr<LogBus> log_bus() const { return log_; }

 private:
  void set_state(ServerState s);

  std::shared_ptr<LogBus> log_;
  std::shared_ptr<RemoteProvider> provider_;

  std::mutex transition_mu_;
  mutable std::mutex mu_;
  ServerConfig config_;
  ServerState state_ = ServerState::Stopped;
  std::unique_ptr<OscQasmServer> server_;
  std::optional<std::string> last_error_;
  std::uint64_t jobs_done_before_ = 0;
  std::chrono::steady_clock::time_point running_since_{};
};

}  // namespace oscqasm::server
