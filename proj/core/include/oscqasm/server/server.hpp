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
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "oscqasm/server/backends.hpp"
#include "oscqasm/server/config.hpp"
#include "oscqasm/server/job.hpp"
#include "oscqasm/server/log_bus.hpp"
#include "oscqasm/server/net.hpp"
#include "oscqasm/server/remote.hpp"

namespace oscqasm::server {

/// Address the receive socket binds to:
///   remote == false            -> 127.0.0.1
///   remote == true, bind_ip    -> bind_ip
///   remote == true, no bind_ip -> primary_adapter_ip()
/// Throws NetError{"BindFailure"} when no adapter address can be found.
std::string resolve_bind_ip(const ServerConfig& config);

struct ServerStats {
  std::uint64_t datagrams = 0;
  std::uint64_t jobs_accepted = 0;
  std::uint64_t jobs_done = 0;
  std::uint64_t jobs_failed = 0;
  std::uint64_t rejected = 0;
};

/// The OSC service: one receive thread feeding a FIFO of work items that
/// `job_workers` threads drain. Every datagram produces exactly one
/// terminal reply (`/counts` or `/error`) at (target_ip, send_port).
class OscQasmServer {
 public:
  /// `provider` may be null; when set, each of its backends is registered
  /// as a remote backend.
  OscQasmServer(ServerConfig config, std::shared_ptr<LogBus> log,
                std::shared_ptr<RemoteProvider> provider = nullptr);
  ~OscQasmServer();
  OscQasmServer(const OscQasmServer&) = delete;
  OscQasmServer& operator=(const OscQasmServer&) = delete;

  /// Binds and starts serving. Throws NetError{"BindFailure"}, or
  /// std::invalid_argument when the config does not validate. On failure
  /// nothing is left listening.
  void start();
  /// Stops intake, lets the in-flight job finish and answers queued jobs
  /// with `/error` "Cancelled". Idempotent.
  void stop();

  bool running() const { return running_; }
  Endpoint listen_endpoint() const { return listen_; }
  Endpoint reply_endpoint() const { return {config_.target_ip, config_.send_port}; }
  const ServerConfig& config() const { return config_; }
  const BackendRegistry& registry() const { return registry_; }
  ServerStats stats() const;

  static constexpr std::size_t kQueueCapacity = 1024;

 private:
  struct Rejection {
    std::string code;
    std::string message;
  };
  using WorkItem = std::variant<JobRequest, Rejection>;

  void receive_loop();
  void worker_loop();
  void intake(const Datagram& d);
  void enqueue(WorkItem item);
  void run_job(const JobRequest& req);
  void send(const osc::Message& msg);
  void log(LogLevel level, std::string line);

  ServerConfig config_;
  std::shared_ptr<LogBus> log_;
  std::shared_ptr<RemoteProvider> provider_;
  BackendRegistry registry_;

  UdpSocket rx_;
  UdpSocket tx_;
  Endpoint listen_;
  std::thread receiver_;
  std::vector<std::thread> workers_;

  std::mutex queue_mu_;
  std::condition_variable queue_cv_;
  std::deque<WorkItem> queue_;
  bool draining_ = false;

  mutable std::mutex stats_mu_;
  ServerStats stats_;
  std::uint64_t next_job_id_ = 1;

  std::atomic<bool> running_{false};
  std::atomic<bool> stop_{false};
};

}  // namespace oscqasm::server
