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

#include "oscqasm/server/config.hpp"

#include <sstream>

#include "oscqasm/server/net.hpp"
#include "oscqasm/sim/simulator.hpp"

namespace oscqasm::server {

std::vector<FieldError> validate(const ServerConfig& config) {
  std::vector<FieldError> errors;
  if (config.receive_port == 0) errors.push_back({"receive_port", "port out of range"});
  if (config.send_port == 0) errors.push_back({"send_port", "port out of range"});
  if (!is_ip_literal(config.target_ip)) {
    errors.push_back({"target_ip", "not an IPv4 or IPv6 address"});
  } else if (is_loopback(config.target_ip) && config.receive_port == config.send_port &&
             config.receive_port != 0) {
    errors.push_back({"send_port", "must differ from receive_port when replying to loopback"});
  }
  if (config.bind_ip && !is_ip_literal(*config.bind_ip)) {
    errors.push_back({"bind_ip", "not an IPv4 or IPv6 address"});
  }
  if (config.credentials && config.credentials->token.empty()) {
    errors.push_back({"credentials.token", "token must not be empty"});
  }
  if (config.max_qubits < 1 || config.max_qubits > 30) {
    errors.push_back({"max_qubits", "must be between 1 and 30"});
  }
  if (config.default_shots < 1 || config.default_shots > sim::kMaxShots) {
    errors.push_back({"default_shots", "must be between 1 and " + std::to_string(sim::kMaxShots)});
  }
  if (config.job_workers < 1 || config.job_workers > 64) {
    errors.push_back({"job_workers", "must be between 1 and 64"});
  }
  if (config.max_datagram < 64 || config.max_datagram > 65507) {
    errors.push_back({"max_datagram", "must be between 64 and 65507"});
  }
  return errors;
}

std::string redact_token(const std::string& token) {
  if (token.size() <= 4) return "****";
  return "****" + token.substr(token.size() - 4);
}

std::string describe(const ServerConfig& config) {
  std::ostringstream os;
  os << "receive_port=" << config.receive_port << " send_port=" << config.send_port
     << " target_ip=" << config.target_ip << " remote=" << (config.remote ? "on" : "off");
  if (config.bind_ip) os << " bind_ip=" << *config.bind_ip;
  os << " max_qubits=" << config.max_qubits << " default_shots=" << config.default_shots;
  if (config.seed) os << " seed=" << *config.seed;
  if (config.job_workers != 1) os << " job_workers=" << config.job_workers;
  if (config.credentials) {
    os << " token=" << redact_token(config.credentials->token);
    if (!config.credentials->hub.empty()) os << " hub=" << config.credentials->hub;
    if (!config.credentials->group.empty()) os << " group=" << config.credentials->group;
    if (!config.credentials->project.empty()) os << " project=" << config.credentials->project;
  }
  return os.str();
}

}  // namespace oscqasm::server
