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
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oscqasm/error.hpp"
#include "oscqasm/server/config.hpp"

namespace oscqasm::cli {

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitUsage = 2, kExitTimeout = 3 };

/// Bad command line. `what()` is a one-line cause.
class UsageError : public Error {
 public:
  explicit UsageError(std::string message) : Error("UsageError", std::move(message)) {}
};

enum class Mode { Serve, Send, MockProvider, Help };

struct ServeOptions {
  server::ServerConfig config;
  bool headless = false;
  std::uint16_t control_port = 8642;
  std::optional<std::string> dashboard_dir;
  bool mock_remote = false;
  std::optional<std::string> provider_url;
};

struct SendOptions {
  std::string file;
  std::string host = "127.0.0.1";
  std::uint16_t rport = server::kDefaultReceivePort;
  std::uint16_t lport = server::kDefaultSendPort;
  std::optional<std::int32_t> shots;
  std::optional<std::string> backend;
  std::chrono::milliseconds timeout{10'000};
};

struct MockProviderCliOptions {
  std::string bind_ip = "127.0.0.1";
  std::uint16_t port = 8650;
  std::chrono::milliseconds latency{0};
  bool stall = false;
  std::optional<std::string> token;
};

struct Invocation {
  Mode mode = Mode::Serve;
  ServeOptions serve;
  SendOptions send;
  MockProviderCliOptions mock;
  std::string help;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Process environment lookup.
std::optional<std::string> process_env(const std::string& name);

/// Throws UsageError. `--help` yields Mode::Help with the full usage text.
Invocation parse_args(const std::vector<std::string>& args, const EnvLookup& env = process_env);

}  // namespace oscqasm::cli
