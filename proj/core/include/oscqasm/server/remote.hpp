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
#include "oscqasm/server/config.hpp"
#include "oscqasm/sim/simulator.hpp"

namespace oscqasm::server {

/// Failure reported by a remote provider. Codes: "AuthFailed",
/// "RemoteTimeout", "RemoteRejected", "Cancelled", or "remote" for
/// transport-level problems.
class RemoteError : public Error {
 public:
  using Error::Error;
};

enum class RemoteJobState { Queued, Running, Done, Failed };

struct RemoteJobStatus {
  RemoteJobState state = RemoteJobState::Queued;
  std::string message;
};

struct RemoteSubmission {
  std::string qasm;
  std::uint64_t shots = 1024;
  std::string backend;
  Credentials credentials;
  std::optional<std::uint64_t> seed;
};

/// Cloud execution service: submit, poll, fetch.
class RemoteProvider {
 public:
  virtual ~RemoteProvider() = default;

  virtual std::vector<std::string> backends() const = 0;
  /// Returns the provider's job id.
  virtual std::string submit(const RemoteSubmission& submission) = 0;
  virtual RemoteJobStatus status(const std::string& job_id, const Credentials& credentials) = 0;
  virtual sim::Counts result(const std::string& job_id, const Credentials& credentials) = 0;
};

struct PollPolicy {
  std::chrono::milliseconds budget{300'000};
  std::chrono::milliseconds interval{200};
};

/// Runs the submit/poll/fetch contract. An empty token raises AuthFailed
/// before the provider is contacted. Exceeding `policy.budget` raises
/// RemoteTimeout; `cancelled` returning true raises Cancelled.
sim::Counts submit_remote(RemoteProvider& provider, const RemoteSubmission& submission,
                          const PollPolicy& policy,
                          const std::function<bool()>& cancelled = {});

/// Talks to a provider over HTTP/JSON (the protocol served by
/// MockProviderService, documented in docs/mock_provider.md).
class HttpRemoteProvider : public RemoteProvider {
 public:
  HttpRemoteProvider(std::string base_url, std::vector<std::string> backends,
                     std::chrono::milliseconds request_timeout = std::chrono::seconds(10));

  std::vector<std::string> backends() const override { return backends_; }
  std::string submit(const RemoteSubmission& submission) override;
  RemoteJobStatus status(const std::string& job_id, const Credentials& credentials) override;
  sim::Counts result(const std::string& job_id, const Credentials& credentials) override;

 private:
  std::string base_url_;
  std::vector<std::string> backends_;
  std::chrono::milliseconds timeout_;
};

struct MockProviderOptions {
  std::string bind_ip = "127.0.0.1";
  std::uint16_t port = 0;  // 0: ephemeral
  std::chrono::milliseconds latency{0};
  bool stall = false;      // jobs never leave the "running" state
  /// When set, only this token is accepted; otherwise any non-empty token.
  std::optional<std::string> accepted_token;
  std::vector<std::string> backends{"mock_remote"};
  std::size_t max_qubits = 20;
};

/// Local stand-in for a cloud provider. Jobs are simulated with the
/// embedded simulator (same seed, same counts) after `latency`.
class MockProviderService {
 public:
  explicit MockProviderService(MockProviderOptions options = {});
  ~MockProviderService();
  MockProviderService(const MockProviderService&) = delete;
  MockProviderService& operator=(const MockProviderService&) = delete;

  void start();
  void stop();
  std::uint16_t port() const;
  std::string base_url() const;
  const MockProviderOptions& options() const;
  void set_stall(bool stall);
  /// Number of HTTP requests received (any route).
  std::uint64_t request_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace oscqasm::server
