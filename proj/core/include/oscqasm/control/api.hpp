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

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "oscqasm/server/controller.hpp"

namespace oscqasm::control {

inline constexpr std::uint16_t kDefaultControlPort = 8642;

struct ControlApiOptions {
  std::string bind_ip = "127.0.0.1";
  std::uint16_t port = kDefaultControlPort;  // 0: ephemeral
  /// Directory served at `/` (the dashboard build), if any.
  std::optional<std::string> static_dir;
};

struct Route {
  std::string method;
  std::string path;
  std::string summary;
};

/// The routes served, in documentation order.
const std::vector<Route>& routes();

/// HTTP/JSON surface over a ServerController:
///   GET  /api/status   current ServerStatus
///   PUT  /api/config   partial config merge (409 unless stopped, 422 on bad fields)
///   POST /api/start    200, 409 on illegal transition, 500 when binding fails
///   POST /api/stop     200, 409 unless running
///   GET  /api/logs     text/event-stream of {seq, ts, level, line}
class ControlApi {
 public:
  ControlApi(std::shared_ptr<server::ServerController> controller, ControlApiOptions options = {});
  ~ControlApi();
  ControlApi(const ControlApi&) = delete;
  ControlApi& operator=(const ControlApi&) = delete;

  /// Throws server::NetError{"BindFailure"}.
  void start();
  void stop();
  std::uint16_t port() const;
  std::string url() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// JSON helpers, exposed for tests and the CLI.
std::string status_json(const server::ServerStatus& status);
std::string config_json(const server::ServerConfig& config);

/// Merges the JSON object `patch` into `config`. Type problems and unknown
/// keys are reported per field; `config` is only modified when the result
/// is empty. A token equal to the redacted form of the current token keeps
/// the current token.
std::vector<server::FieldError> merge_config_patch(server::ServerConfig& config,
                                                   const std::string& patch);

}  // namespace oscqasm::control
