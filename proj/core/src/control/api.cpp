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

#include "oscqasm/control/api.hpp"

#include <httplib.h>

#include <atomic>
#include <thread>

#include <json.hpp>

namespace oscqasm::control {

using nlohmann::json;
using server::FieldError;
using server::ServerConfig;

const std::vector<Route>& routes() {
  static const std::vector<Route> table = {
      {"GET", "/api/status", "Current server state, redacted config, jobs done, last error, uptime"},
      {"PUT", "/api/config", "Merge a partial configuration while stopped"},
      {"POST", "/api/start", "Boot the OSC server"},
      {"POST", "/api/stop", "Stop the OSC server"},
      {"GET", "/api/logs", "Server-sent event stream of log events"},
  };
  return table;
}

namespace {

void listener_options(socket_t sock) {
  int yes = 1;
  setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
}

json config_to_json(const ServerConfig& c) {
  json j = {{"receive_port", c.receive_port},
            {"send_port", c.send_port},
            {"target_ip", c.target_ip},
            {"remote", c.remote},
            {"bind_ip", c.bind_ip ? json(*c.bind_ip) : json(nullptr)},
            {"max_qubits", c.max_qubits},
            {"default_shots", c.default_shots},
            {"seed", c.seed ? json(*c.seed) : json(nullptr)},
            {"job_workers", c.job_workers}};
  if (c.credentials) {
    j["credentials"] = {{"token", c.credentials->token},
                        {"hub", c.credentials->hub},
                        {"group", c.credentials->group},
                        {"project", c.credentials->project}};
  } else {
    j["credentials"] = nullptr;
  }
  return j;
}

json status_to_json(const server::ServerStatus& s) {
  return {{"state", std::string(server::to_string(s.state))},
          {"effective_config", config_to_json(s.effective_config)},
          {"listen", s.listen ? json(s.listen->to_string()) : json(nullptr)},
          {"jobs_done", s.jobs_done},
          {"last_error", s.last_error ? json(*s.last_error) : json(nullptr)},
          {"uptime_s", s.uptime_s}};
}

json error_body(const std::string& code, const std::string& message,
                const std::vector<FieldError>& fields = {}) {
  json e = {{"code", code}, {"message", message}};
  if (!fields.empty()) {
    json arr = json::array();
    for (const auto& f : fields) arr.push_back({{"field", f.field}, {"message", f.message}});
    e["fields"] = arr;
  }
  return {{"error", e}};
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename T>
bool read_uint(const json& v, const std::string& field, T max, T& out,
               std::vector<FieldError>& errors) {
  if (!v.is_number_integer()) {
    errors.push_back({field, "must be an integer"});
    return false;
  }
  if (v.is_number_unsigned() ? v.get<std::uint64_t>() > static_cast<std::uint64_t>(max)
                             : v.get<std::int64_t>() < 0) {
    errors.push_back({field, field.ends_with("port") ? "port out of range" : "out of range"});
    return false;
  }
  out = static_cast<T>(v.get<std::uint64_t>());
  return true;
}

}  // namespace

std::string status_json(const server::ServerStatus& status) { return status_to_json(status).dump(); }

std::string config_json(const ServerConfig& config) { return config_to_json(config).dump(); }

std::vector<FieldError> merge_config_patch(ServerConfig& config, const std::string& patch) {
  std::vector<FieldError> errors;
  const json j = json::parse(patch, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    errors.push_back({"", "body must be a JSON object"});
    return errors;
  }
  ServerConfig next = config;
  for (const auto& [key, v] : j.items()) {
    if (key == "receive_port") {
      read_uint<std::uint16_t>(v, key, 65535, next.receive_port, errors);
    } else if (key == "send_port") {
      read_uint<std::uint16_t>(v, key, 65535, next.send_port, errors);
    } else if (key == "target_ip") {
      if (v.is_string()) next.target_ip = v.get<std::string>();
      else errors.push_back({key, "must be a string"});
    } else if (key == "remote") {
      if (v.is_boolean()) next.remote = v.get<bool>();
      else errors.push_back({key, "must be true or false"});
    } else if (key == "bind_ip") {
      if (v.is_null() || (v.is_string() && v.get<std::string>().empty())) next.bind_ip.reset();
      else if (v.is_string()) next.bind_ip = v.get<std::string>();
      else errors.push_back({key, "must be a string or null"});
    } else if (key == "max_qubits") {
      read_uint<std::size_t>(v, key, 1024, next.max_qubits, errors);
    } else if (key == "default_shots") {
      read_uint<std::uint32_t>(v, key, 0xFFFFFFFFu, next.default_shots, errors);
    } else if (key == "job_workers") {
      read_uint<std::size_t>(v, key, 1024, next.job_workers, errors);
    } else if (key == "seed") {
      if (v.is_null()) next.seed.reset();
      else if (v.is_number_unsigned()) next.seed = v.get<std::uint64_t>();
      else errors.push_back({key, "must be a non-negative integer or null"});
    } else if (key == "credentials") {
      if (v.is_null()) {
        next.credentials.reset();
        continue;
      }
      if (!v.is_object()) {
        errors.push_back({key, "must be an object or null"});
        continue;
      }
      server::Credentials c = config.credentials.value_or(server::Credentials{});
      for (const auto& [ck, cv] : v.items()) {
        const std::string field = "credentials." + ck;
        if (!cv.is_string()) {
          errors.push_back({field, "must be a string"});
          continue;
        }
        const std::string s = cv.get<std::string>();
        if (ck == "token") {
          const bool echoed = config.credentials && s == server::redact_token(config.credentials->token);
          if (!echoed) c.token = s;
        } else if (ck == "hub") {
          c.hub = s;
        } else if (ck == "group") {
          c.group = s;
        } else if (ck == "project") {
          c.project = s;
        } else {
          errors.push_back({field, "unknown field"});
        }
      }
      next.credentials = c;
    } else {
      errors.push_back({key, "unknown field"});
    }
  }
  if (errors.empty()) config = std::move(next);
  return errors;
}

struct ControlApi::Impl {
  std::shared_ptr<server::ServerController> controller;
  ControlApiOptions options;
  httplib::Server http;
  std::thread thread;
  std::uint16_t port = 0;
  std::atomic<bool> stopping{false};

  void install() {
    http.Get("/api/status", [this](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, status_to_json(controller->status()));
    });

    http.Put("/api/config", [this](const httplib::Request& req, httplib::Response& res) {
      ServerConfig cfg = controller->config();
      auto fields = merge_config_patch(cfg, req.body);
      if (!fields.empty()) {
        return send_json(res, 422, error_body("ConfigRejected", "invalid configuration", fields));
      }
      try {
        send_json(res, 200, status_to_json(controller->apply_config(cfg)));
      } catch (const server::ControllerError& e) {
        const int status = e.code() == "IllegalTransition" ? 409 : 422;
        send_json(res, status, error_body(e.code(), e.message(), e.fields()));
      }
    });

    http.Post("/api/start", [this](const httplib::Request&, httplib::Response& res) {
      try {
        send_json(res, 200, status_to_json(controller->start()));
      } catch (const server::ControllerError& e) {
        json body = error_body(e.code(), e.message());
        body["status"] = status_to_json(controller->status());
        send_json(res, e.code() == "IllegalTransition" ? 409 : 500, body);
      }
    });

    http.Post("/api/stop", [this](const httplib::Request&, httplib::Response& res) {
      try {
        send_json(res, 200, status_to_json(controller->stop()));
      } catch (const server::ControllerError& e) {
        send_json(res, 409, error_body(e.code(), e.message()));
      }
    });

    http.Get("/api/logs", [this](const httplib::Request& req, httplib::Response& res) {
      auto bus = controller->log_bus();
      auto sub = bus->subscribe();
      // Optional backlog: replay recent events older than the subscription.
      std::vector<server::LogEvent> backlog;
      if (req.has_param("backlog")) {
        const auto recent = bus->recent();
        const std::size_t n = std::strtoul(req.get_param_value("backlog").c_str(), nullptr, 10);
        const std::size_t skip = recent.size() > n ? recent.size() - n : 0;
        backlog.assign(recent.begin() + static_cast<std::ptrdiff_t>(skip), recent.end());
      }
      auto last_seq = std::make_shared<std::uint64_t>(0);
      res.set_header("Cache-Control", "no-cache");
      res.set_chunked_content_provider(
          "text/event-stream",
          [this, sub, backlog = std::move(backlog), last_seq, sent_backlog = false](
              std::size_t, httplib::DataSink& sink) mutable {
            const auto emit = [&](const server::LogEvent& e) {
              if (e.seq != 0 && e.seq <= *last_seq) return true;
              if (e.seq != 0) *last_seq = e.seq;
              const json data = {{"seq", e.seq},
                                 {"ts", e.ts_ms},
                                 {"level", std::string(server::to_string(e.level))},
                                 {"line", e.line}};
              const std::string frame = "event: log\ndata: " + data.dump() + "\n\n";
              return sink.write(frame.data(), frame.size());
            };
            if (!sent_backlog) {
              sent_backlog = true;
              for (const auto& e : backlog) {
                if (!emit(e)) return false;
              }
              const std::string hello = ": connected\n\n";
              if (!sink.write(hello.data(), hello.size())) return false;
            }
            if (stopping) {
              sink.done();
              return true;
            }
            const auto e = sub->next(std::chrono::milliseconds(250));
            if (!e) {
              const std::string ping = ": ping\n\n";
              return sink.is_writable() && sink.write(ping.data(), ping.size());
            }
            return emit(*e);
          },
          [sub](bool) { sub->close(); });
    });

    if (options.static_dir) http.set_mount_point("/", *options.static_dir);
  }
};

ControlApi::ControlApi(std::shared_ptr<server::ServerController> controller,
                       ControlApiOptions options)
    : impl_(std::make_unique<Impl>()) {
  impl_->controller = std::move(controller);
  impl_->options = std::move(options);
  impl_->install();
}

ControlApi::~ControlApi() { stop(); }

void ControlApi::start() {
  if (impl_->thread.joinable()) return;
  auto& http = impl_->http;
  const auto& opt = impl_->options;
  http.set_socket_options(listener_options);
  const int port = opt.port == 0 ? http.bind_to_any_port(opt.bind_ip)
                                 : (http.bind_to_port(opt.bind_ip, opt.port) ? opt.port : -1);
  if (port <= 0) {
    throw server::NetError("BindFailure", "control API cannot bind " + opt.bind_ip + ":" +
                                              std::to_string(opt.port));
  }
  impl_->port = static_cast<std::uint16_t>(port);
  impl_->thread = std::thread([&http] { http.listen_after_bind(); });
  http.wait_until_ready();
}

void ControlApi::stop() {
  if (!impl_ || !impl_->thread.joinable()) return;
  impl_->stopping = true;
  impl_->http.stop();
  impl_->thread.join();
}

std::uint16_t ControlApi::port() const { return impl_->port; }

std::string ControlApi::url() const {
  const std::string& ip = impl_->options.bind_ip;
  return "http://" + (ip.find(':') != std::string::npos ? "[" + ip + "]" : ip) + ":" +
         std::to_string(impl_->port);
}

}  // namespace oscqasm::control
