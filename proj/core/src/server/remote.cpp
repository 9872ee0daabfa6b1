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

#include "oscqasm/server/remote.hpp"

#include <httplib.h>

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "oscqasm/qasm/circuit.hpp"

namespace oscqasm::server {

using nlohmann::json;

namespace {

void listener_options(socket_t sock) {
  int yes = 1;
  setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
}

bool is_cancelled(const std::function<bool()>& cancelled) { return cancelled && cancelled(); }

}  // namespace

sim::Counts submit_remote(RemoteProvider& provider, const RemoteSubmission& submission,
                          const PollPolicy& policy, const std::function<bool()>& cancelled) {
  if (submission.credentials.token.empty()) {
    throw RemoteError("AuthFailed", "an access token is required for remote backends");
  }
  if (is_cancelled(cancelled)) throw RemoteError("Cancelled", "job cancelled before submission");

  const auto deadline = std::chrono::steady_clock::now() + policy.budget;
  const std::string job_id = provider.submit(submission);
  const auto interval = std::max(policy.interval, std::chrono::milliseconds(1));

  for (;;) {
    if (is_cancelled(cancelled)) throw RemoteError("Cancelled", "remote job " + job_id + " cancelled");
    const RemoteJobStatus st = provider.status(job_id, submission.credentials);
    if (st.state == RemoteJobState::Done) return provider.result(job_id, submission.credentials);
    if (st.state == RemoteJobState::Failed) {
      throw RemoteError("RemoteRejected",
                        st.message.empty() ? "remote job " + job_id + " failed" : st.message);
    }
    const auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      throw RemoteError("RemoteTimeout",
                        "remote job " + job_id + " did not finish within " +
                            std::to_string(policy.budget.count()) + " ms");
    }
    // Sleep in short slices so cancellation is noticed promptly.
    const auto wake = std::min(now + interval, deadline);
    while (std::chrono::steady_clock::now() < wake) {
      if (is_cancelled(cancelled)) break;
      std::this_thread::sleep_for(std::min<std::chrono::steady_clock::duration>(
          std::chrono::milliseconds(20), wake - std::chrono::steady_clock::now()));
    }
  }
}

// --- HTTP client ------------------------------------------------------------

namespace {

httplib::Headers auth_headers(const Credentials& c) {
  return {{"Authorization", "Bearer " + c.token}};
}

std::string body_error(const std::string& body) {
  const json j = json::parse(body, nullptr, false);
  if (j.is_object() && j.contains("error") && j["error"].is_string()) {
    return j["error"].get<std::string>();
  }
  return body.substr(0, 200);
}

void check_response(const httplib::Result& res, const std::string& what) {
  if (!res) {
    throw RemoteError("remote", what + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status == 401 || res->status == 403) {
    throw RemoteError("AuthFailed", "provider rejected the access token");
  }
  if (res->status >= 400) {
    throw RemoteError("RemoteRejected",
                      what + " rejected (HTTP " + std::to_string(res->status) + "): " +
                          body_error(res->body));
  }
}

json parse_body(const httplib::Result& res, const std::string& what) {
  json j = json::parse(res->body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw RemoteError("remote", what + " returned a malformed response");
  }
  return j;
}

}  // namespace

HttpRemoteProvider::HttpRemoteProvider(std::string base_url, std::vector<std::string> backends,
                                       std::chrono::milliseconds request_timeout)
    : base_url_(std::move(base_url)), backends_(std::move(backends)), timeout_(request_timeout) {}

std::string HttpRemoteProvider::submit(const RemoteSubmission& s) {
  httplib::Client cli(base_url_);
  cli.set_connection_timeout(timeout_);
  cli.set_read_timeout(timeout_);
  json body = {{"qasm", s.qasm},
               {"shots", s.shots},
               {"backend", s.backend},
               {"hub", s.credentials.hub},
               {"group", s.credentials.group},
               {"project", s.credentials.project}};
  if (s.seed) body["seed"] = *s.seed;
  const auto res = cli.Post("/api/jobs", auth_headers(s.credentials), body.dump(), "application/json");
  check_response(res, "job submission");
  const json j = parse_body(res, "job submission");
  if (!j.contains("job_id") || !j["job_id"].is_string()) {
    throw RemoteError("remote", "job submission response has no job_id");
  }
  return j["job_id"].get<std::string>();
}

RemoteJobStatus HttpRemoteProvider::status(const std::string& job_id, const Credentials& c) {
  httplib::Client cli(base_url_);
  cli.set_connection_timeout(timeout_);
  cli.set_read_timeout(timeout_);
  const auto res = cli.Get("/api/jobs/" + job_id, auth_headers(c));
  check_response(res, "status query");
  const json j = parse_body(res, "status query");
  const std::string state = j.value("status", "");
  RemoteJobStatus st;
  st.message = j.value("message", "");
  if (state == "queued") st.state = RemoteJobState::Queued;
  else if (state == "running") st.state = RemoteJobState::Running;
  else if (state == "done") st.state = RemoteJobState::Done;
  else if (state == "failed") st.state = RemoteJobState::Failed;
  else throw RemoteError("remote", "unknown job status '" + state + "'");
  return st;
}

sim::Counts HttpRemoteProvider::result(const std::string& job_id, const Credentials& c) {
  httplib::Client cli(base_url_);
  cli.set_connection_timeout(timeout_);
  cli.set_read_timeout(timeout_);
  const auto res = cli.Get("/api/jobs/" + job_id + "/result", auth_headers(c));
  check_response(res, "result fetch");
  const json j = parse_body(res, "result fetch");
  if (!j.contains("counts") || !j["counts"].is_object()) {
    throw RemoteError("remote", "result has no counts object");
  }
  sim::Counts counts;
  for (const auto& [key, value] : j["counts"].items()) {
    if (!value.is_number_unsigned()) throw RemoteError("remote", "count for '" + key + "' is not a count");
    counts[key] = value.get<std::uint64_t>();
  }
  return counts;
}

// --- Mock provider ----------------------------------------------------------

struct MockProviderService::Impl {
  struct Job {
    std::chrono::steady_clock::time_point ready_at;
    std::optional<sim::Counts> counts;
    std::string failure;
  };

  MockProviderOptions options;
  httplib::Server server;
  std::thread thread;
  std::uint16_t port = 0;
  std::atomic<bool> stall{false};
  std::atomic<std::uint64_t> requests{0};
  std::mutex mu;
  std::map<std::string, Job> jobs;
  std::uint64_t next_id = 1;

  static void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  bool authorized(const httplib::Request& req) const {
    const std::string header = req.get_header_value("Authorization");
    const std::string prefix = "Bearer ";
    if (header.rfind(prefix, 0) != 0) return false;
    const std::string token = header.substr(prefix.size());
    if (token.empty()) return false;
    return !options.accepted_token || token == *options.accepted_token;
  }

  void routes() {
    server.set_pre_routing_handler([this](const httplib::Request&, httplib::Response&) {
      ++requests;
      return httplib::Server::HandlerResponse::Unhandled;
    });

    server.Get("/api/backends", [this](const httplib::Request&, httplib::Response& res) {
      reply(res, 200, {{"backends", options.backends}});
    });

    server.Post("/api/jobs", [this](const httplib::Request& req, httplib::Response& res) {
      if (!authorized(req)) return reply(res, 401, {{"error", "invalid or missing token"}});
      const json body = json::parse(req.body, nullptr, false);
      if (!body.is_object() || !body.contains("qasm") || !body["qasm"].is_string()) {
        return reply(res, 400, {{"error", "body must be a JSON object with a qasm string"}});
      }
      const std::string backend = body.value("backend", options.backends.front());
      if (std::find(options.backends.begin(), options.backends.end(), backend) ==
          options.backends.end()) {
        return reply(res, 400, {{"error", "unknown backend '" + backend + "'"}});
      }
      const auto shots = body.value("shots", std::uint64_t{1024});
      if (shots < 1 || shots > sim::kMaxShots) {
        return reply(res, 400, {{"error", "shots out of range"}});
      }

      Job job;
      job.ready_at = std::chrono::steady_clock::now() + options.latency;
      try {
        const auto circuit = qasm::compile(body["qasm"].get<std::string>());
        sim::RunOptions opts;
        opts.max_qubits = options.max_qubits;
        if (body.contains("seed") && body["seed"].is_number_unsigned()) {
          opts.seed = body["seed"].get<std::uint64_t>();
        }
        job.counts = sim::run(circuit, shots, opts);
      } catch (const Error& e) {
        job.failure = e.what();
      }

      std::lock_guard lock(mu);
      const std::string id = "mock-" + std::to_string(next_id++);
      jobs.emplace(id, std::move(job));
      reply(res, 201, {{"job_id", id}});
    });

    server.Get(R"(/api/jobs/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      if (!authorized(req)) return reply(res, 401, {{"error", "invalid or missing token"}});
      std::lock_guard lock(mu);
      const auto it = jobs.find(req.matches[1].str());
      if (it == jobs.end()) return reply(res, 404, {{"error", "no such job"}});
      const Job& job = it->second;
      if (stall || std::chrono::steady_clock::now() < job.ready_at) {
        return reply(res, 200, {{"status", "running"}});
      }
      if (!job.counts) return reply(res, 200, {{"status", "failed"}, {"message", job.failure}});
      reply(res, 200, {{"status", "done"}});
    });

    server.Get(R"(/api/jobs/([^/]+)/result)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 if (!authorized(req)) return reply(res, 401, {{"error", "invalid or missing token"}});
                 std::lock_guard lock(mu);
                 const auto it = jobs.find(req.matches[1].str());
                 if (it == jobs.end()) return reply(res, 404, {{"error", "no such job"}});
                 const Job& job = it->second;
                 if (stall || std::chrono::steady_clock::now() < job.ready_at) {
                   return reply(res, 409, {{"error", "job not finished"}});
                 }
                 if (!job.counts) return reply(res, 409, {{"error", job.failure}});
                 json counts = json::object();
                 for (const auto& [k, v] : *job.counts) counts[k] = v;
                 reply(res, 200, {{"counts", counts}});
               });
  }
};

MockProviderService::MockProviderService(MockProviderOptions options)
    : impl_(std::make_unique<Impl>()) {
  if (options.backends.empty()) options.backends.push_back("mock_remote");
  impl_->options = std::move(options);
  impl_->stall = impl_->options.stall;
  impl_->routes();
}

MockProviderService::~MockProviderService() { stop(); }

void MockProviderService::start() {
  if (impl_->thread.joinable()) return;
  auto& srv = impl_->server;
  const auto& opt = impl_->options;
  srv.set_socket_options(listener_options);
  int port = 0;
  if (opt.port == 0) {
    port = srv.bind_to_any_port(opt.bind_ip);
  } else {
    port = srv.bind_to_port(opt.bind_ip, opt.port) ? opt.port : -1;
  }
  if (port <= 0) {
    throw RemoteError("BindFailure", "mock provider cannot bind " + opt.bind_ip + ":" +
                                         std::to_string(opt.port));
  }
  impl_->port = static_cast<std::uint16_t>(port);
  impl_->thread = std::thread([&srv] { srv.listen_after_bind(); });
  srv.wait_until_ready();
}

void MockProviderService::stop() {
  if (!impl_ || !impl_->thread.joinable()) return;
  impl_->server.stop();
  impl_->thread.join();
}

std::uint16_t MockProviderService::port() const { return impl_->port; }

std::string MockProviderService::base_url() const {
  const std::string& ip = impl_->options.bind_ip;
  const bool v6 = ip.find(':') != std::string::npos;
  return "http://" + (v6 ? "[" + ip + "]" : ip) + ":" + std::to_string(impl_->port);
}

const MockProviderOptions& MockProviderService::options() const { return impl_->options; }

void MockProviderService::set_stall(bool stall) { impl_->stall = stall; }

std::uint64_t MockProviderService::request_count() const { return impl_->requests; }

}  // namespace oscqasm::server
