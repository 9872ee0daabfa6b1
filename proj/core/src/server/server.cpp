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

#include "oscqasm/server/server.hpp"

#include <sys/socket.h>

#include <stdexcept>

#include "oscqasm/osc/codec.hpp"

namespace oscqasm::server {

std::string resolve_bind_ip(const ServerConfig& config) {
  if (!config.remote) return "127.0.0.1";
  if (config.bind_ip && !config.bind_ip->empty()) return *config.bind_ip;
  if (auto ip = primary_adapter_ip()) return *ip;
  throw NetError("BindFailure",
                 "remote mode needs a network adapter but none was found; pass an explicit address");
}

OscQasmServer::OscQasmServer(ServerConfig config, std::shared_ptr<LogBus> log,
                             std::shared_ptr<RemoteProvider> provider)
    : config_(std::move(config)),
      log_(log ? std::move(log) : std::make_shared<LogBus>()),
      provider_(std::move(provider)),
      registry_(config_.max_qubits) {
  if (provider_) {
    for (const auto& name : provider_->backends()) {
      if (!registry_.find(name)) {
        registry_.add({name, BackendKind::Remote, {config_.max_qubits, sim::kMaxShots}});
      }
    }
  }
}

OscQasmServer::~OscQasmServer() { stop(); }

void OscQasmServer::log(LogLevel level, std::string line) { log_->publish(level, std::move(line)); }

void OscQasmServer::start() {
  if (running_) return;
  if (const auto errors = validate(config_); !errors.empty()) {
    std::string text = "invalid configuration:";
    for (const auto& e : errors) text += " " + e.field + " " + e.message + ";";
    throw std::invalid_argument(text);
  }

  const std::string bind_ip = resolve_bind_ip(config_);
  UdpSocket rx = UdpSocket::bind(Endpoint{bind_ip, config_.receive_port});
  // Best effort; the kernel clamps this to net.core.rmem_max.
  const int rcvbuf = 4 << 20;
  setsockopt(rx.native_handle(), SOL_SOCKET, SO_RCVBUF, &rcvbuf, sizeof rcvbuf);
  UdpSocket tx = UdpSocket::for_destination(config_.target_ip);

  rx_ = std::move(rx);
  tx_ = std::move(tx);
  listen_ = rx_.local_endpoint();
  stop_ = false;
  {
    std::lock_guard lock(queue_mu_);
    draining_ = false;
    queue_.clear();
  }

  log(LogLevel::Info, "config: " + describe(config_) +
                          " backends=" + [&] {
                            std::string s;
                            for (const auto& n : registry_.names()) s += (s.empty() ? "" : ",") + n;
                            return s;
                          }());
  log(LogLevel::Info, "OSC server ready: listening on UDP port " +
                          std::to_string(listen_.port) + " (" + listen_.ip +
                          "), replies go to " + reply_endpoint().to_string());

  running_ = true;
  for (std::size_t i = 0; i < config_.job_workers; ++i) workers_.emplace_back([this] { worker_loop(); });
  receiver_ = std::thread([this] { receive_loop(); });
}

void OscQasmServer::stop() {
  if (!running_.exchange(false)) return;
  stop_ = true;
  if (receiver_.joinable()) receiver_.join();
  rx_ = UdpSocket{};

  std::deque<WorkItem> pending;
  {
    std::lock_guard lock(queue_mu_);
    draining_ = true;
    pending.swap(queue_);
  }
  queue_cv_.notify_all();
  for (auto& item : pending) {
    if (auto* req = std::get_if<JobRequest>(&item)) {
      send(error_message("Cancelled", "server stopped before job " + std::to_string(req->id) +
                                          " started"));
      std::lock_guard lock(stats_mu_);
      ++stats_.jobs_failed;
    } else {
      const auto& r = std::get<Rejection>(item);
      send(error_message(r.code, r.message));
    }
  }
  for (auto& w : workers_) {
    if (w.joinable()) w.join();
  }
  workers_.clear();
  tx_ = UdpSocket{};
  log(LogLevel::Info, "OSC server stopped");
}

ServerStats OscQasmServer::stats() const {
  std::lock_guard lock(stats_mu_);
  return stats_;
}

void OscQasmServer::receive_loop() {
  while (!stop_) {
    std::optional<Datagram> d;
    try {
      d = rx_.receive(std::chrono::milliseconds(50));
    } catch (const std::exception& e) {
      log(LogLevel::Error, std::string("receive failed: ") + e.what());
      continue;
    }
    if (!d) continue;
    try {
      intake(*d);
    } catch (const std::exception& e) {
      log(LogLevel::Error, std::string("dropped datagram: ") + e.what());
    }
  }
}

void OscQasmServer::intake(const Datagram& d) {
  // Our own replies looping back (target == listen address) must not be answered.
  if (d.source.port == tx_.local_endpoint().port && d.source.port != 0 &&
      (d.source.ip == listen_.ip || is_loopback(d.source.ip))) {
    return;
  }
  {
    std::lock_guard lock(stats_mu_);
    ++stats_.datagrams;
  }
  const auto reject = [&](const std::string& code, const std::string& message) {
    log(LogLevel::Warning, "rejected datagram from " + d.source.to_string() + ": " + code + ": " +
                               message);
    {
      std::lock_guard lock(stats_mu_);
      ++stats_.rejected;
    }
    enqueue(Rejection{code, message});
  };

  if (d.payload.size() > config_.max_datagram) {
    return reject("OversizeMessage", "datagram of " + std::to_string(d.payload.size()) +
                                         " bytes exceeds the " +
                                         std::to_string(config_.max_datagram) + " byte limit");
  }
  osc::Message msg;
  try {
    msg = osc::decode(d.payload);
  } catch (const Error& e) {
    return reject(e.code(), e.message());
  }
  JobRequest req;
  try {
    req = handle_qutune(msg, d.source, config_);
  } catch (const Error& e) {
    return reject(e.code(), e.message());
  }
  {
    std::lock_guard lock(stats_mu_);
    req.id = next_job_id_++;
    ++stats_.jobs_accepted;
  }
  log(LogLevel::Info, "received " + osc::describe(msg) + " from " + d.source.to_string() +
                          " as job " + std::to_string(req.id));
  enqueue(std::move(req));
}

void OscQasmServer::enqueue(WorkItem item) {
  {
    std::lock_guard lock(queue_mu_);
    if (queue_.size() < kQueueCapacity) {
      queue_.push_back(std::move(item));
      queue_cv_.notify_one();
      return;
    }
  }
  log(LogLevel::Warning, "job queue full; answering with Busy");
  if (std::holds_alternative<JobRequest>(item)) {
    std::lock_guard lock(stats_mu_);
    ++stats_.jobs_failed;
  }
  send(error_message("Busy", "server queue is full (" + std::to_string(kQueueCapacity) +
                                 " pending); try again later"));
}

void OscQasmServer::worker_loop() {
  for (;;) {
    WorkItem item;
    {
      std::unique_lock lock(queue_mu_);
      queue_cv_.wait(lock, [&] { return draining_ || !queue_.empty(); });
      if (queue_.empty()) return;
      item = std::move(queue_.front());
      queue_.pop_front();
    }
    if (auto* req = std::get_if<JobRequest>(&item)) {
      run_job(*req);
    } else {
      const auto& r = std::get<Rejection>(item);
      send(error_message(r.code, r.message));
    }
  }
}

void OscQasmServer::run_job(const JobRequest& req) {
  const std::string started = "job " + std::to_string(req.id) + ": running " +
                              std::to_string(req.shots) + " shots on " + req.backend_name;
  log(LogLevel::Notice, started);
  send(osc::Message{kInfoPath, {started}});

  ExecutionContext ctx;
  ctx.registry = &registry_;
  ctx.provider = provider_.get();
  ctx.credentials = config_.credentials;
  ctx.seed = config_.seed;
  ctx.poll = PollPolicy{config_.remote_poll_budget, config_.remote_poll_interval};
  ctx.cancelled = [this] { return stop_.load(); };

  const JobResult result = execute(req, ctx);
  {
    std::lock_guard lock(stats_mu_);
    ++(result.ok() ? stats_.jobs_done : stats_.jobs_failed);
  }
  if (result.ok()) {
    log(LogLevel::Notice, "job " + std::to_string(req.id) + " done in " +
                              std::to_string(result.elapsed.count()) + " ms (" +
                              std::to_string(result.num_qubits) + " qubits)");
  } else {
    log(LogLevel::Error, "job " + std::to_string(req.id) + " failed: " + result.error->to_string());
  }
  for (const auto& msg : reply_messages(result, req)) send(msg);
}

void OscQasmServer::send(const osc::Message& msg) {
  const Endpoint dest = reply_endpoint();
  osc::Bytes bytes;
  try {
    bytes = osc::encode(msg);
  } catch (const osc::CodecError& e) {
    log(LogLevel::Error, "cannot encode " + msg.address + " reply: " + e.what());
    if (msg.address != kErrorPath) {
      send(error_message(e.code(), msg.address + " reply does not fit in one datagram"));
    }
    return;
  }
  try {
    tx_.send_to(bytes, dest);
    log(msg.address == kInfoPath ? LogLevel::Debug : LogLevel::Info,
        "sent " + msg.address + " to " + dest.to_string());
  } catch (const Error& e) {
    log(LogLevel::Error, "could not send " + msg.address + " to " + dest.to_string() + ": " +
                             e.what());
  }
}

}  // namespace oscqasm::server
