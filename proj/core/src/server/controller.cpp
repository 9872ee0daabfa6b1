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

#include "oscqasm/server/controller.hpp"

namespace oscqasm::server {

std::string_view to_string(ServerState state) {
  switch (state) {
    case ServerState::Stopped: return "stopped";
    case ServerState::Starting: return "starting";
    case ServerState::Running: return "running";
    case ServerState::Stopping: return "stopping";
  }
  return "stopped";
}

ServerController::ServerController(ServerConfig config, std::shared_ptr<LogBus> log,
                                   std::shared_ptr<RemoteProvider> provider)
    : log_(log ? std::move(log) : std::make_shared<LogBus>()),
      provider_(std::move(provider)),
      config_(std::move(config)) {}

ServerController::~ServerController() {
  std::lock_guard t(transition_mu_);
  if (server_) server_->stop();
}

void ServerController::set_state(ServerState s) {
  std::lock_guard lock(mu_);
  state_ = s;
}

ServerStatus ServerController::status() const {
  std::lock_guard lock(mu_);
  ServerStatus st;
  st.state = state_;
  st.effective_config = config_;
  if (st.effective_config.credentials) {
    st.effective_config.credentials->token = redact_token(st.effective_config.credentials->token);
  }
  st.last_error = last_error_;
  st.jobs_done = jobs_done_before_;
  if (server_) {
    st.jobs_done += server_->stats().jobs_done;
    if (state_ == ServerState::Running) {
      st.listen = server_->listen_endpoint();
      st.uptime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - running_since_)
                        .count();
    }
  }
  return st;
}

ServerConfig ServerController::config() const {
  std::lock_guard lock(mu_);
  return config_;
}

ServerStatus ServerController::apply_config(const ServerConfig& config) {
  {
    std::lock_guard t(transition_mu_);
    std::lock_guard lock(mu_);
    if (state_ != ServerState::Stopped) {
      throw ControllerError("IllegalTransition", "configuration can only change while stopped");
    }
    auto errors = validate(config);
    if (!errors.empty()) {
      throw ControllerError("ConfigRejected", "invalid configuration", std::move(errors));
    }
    config_ = config;
  }
  log_->publish(LogLevel::Info, "configuration updated: " + describe(config));
  return status();
}

ServerStatus ServerController::start() {
  std::lock_guard t(transition_mu_);
  ServerConfig cfg;
  {
    std::lock_guard lock(mu_);
    if (state_ != ServerState::Stopped) {
      throw ControllerError("IllegalTransition",
                            "cannot start while " + std::string(to_string(state_)));
    }
    state_ = ServerState::Starting;
    cfg = config_;
  }
  auto server = std::make_unique<OscQasmServer>(cfg, log_, provider_);
  try {
    server->start();
  } catch (const std::exception& e) {
    {
      std::lock_guard lock(mu_);
      state_ = ServerState::Stopped;
      last_error_ = e.what();
    }
    log_->publish(LogLevel::Error, std::string("start failed: ") + e.what());
    throw ControllerError("StartFailed", e.what());
  }
  {
    std::lock_guard lock(mu_);
    if (server_) jobs_done_before_ += server_->stats().jobs_done;
    server_ = std::move(server);
    last_error_.reset();
    running_since_ = std::chrono::steady_clock::now();
    state_ = ServerState::Running;
  }
  return status();
}

ServerStatus ServerController::stop() {
  std::lock_guard t(transition_mu_);
  OscQasmServer* server = nullptr;
  {
    std::lock_guard lock(mu_);
    if (state_ != ServerState::Running) {
      throw ControllerError("IllegalTransition",
                            "cannot stop while " + std::string(to_string(state_)));
    }
    state_ = ServerState::Stopping;
    server = server_.get();
  }
  server->stop();
  set_state(ServerState::Stopped);
  return status();
}

}  // namespace oscqasm::server
