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

#include <gtest/gtest.h>

#include "oscqasm/server/backends.hpp"
#include "oscqasm/server/config.hpp"

using namespace oscqasm::server;

namespace {

std::vector<std::string> fields(const ServerConfig& c) {
  std::vector<std::string> out;
  for (const auto& e : validate(c)) out.push_back(e.field);
  return out;
}

}  // namespace

TEST(ServerConfig, Defaults) {
  const ServerConfig c;
  EXPECT_EQ(c.receive_port, 1416);
  EXPECT_EQ(c.send_port, 1417);
  EXPECT_EQ(c.target_ip, "127.0.0.1");
  EXPECT_FALSE(c.remote);
  EXPECT_FALSE(c.bind_ip.has_value());
  EXPECT_FALSE(c.credentials.has_value());
  EXPECT_TRUE(validate(c).empty());
}

TEST(ServerConfig, PortValidation) {
  ServerConfig c;
  c.receive_port = 0;
  const auto errors = validate(c);
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_EQ(errors[0].field, "receive_port");
  EXPECT_EQ(errors[0].message, "port out of range");
}

TEST(ServerConfig, SamePortsOnlyForbiddenForLoopbackTarget) {
  ServerConfig c;
  c.send_port = c.receive_port;
  EXPECT_EQ(fields(c), std::vector<std::string>{"send_port"});
  c.target_ip = "::1";
  EXPECT_EQ(fields(c), std::vector<std::string>{"send_port"});
  c.target_ip = "192.168.0.1";
  EXPECT_TRUE(fields(c).empty());
}

TEST(ServerConfig, AddressesMustBeLiterals) {
  ServerConfig c;
  c.target_ip = "localhost";
  c.bind_ip = "eth0";
  EXPECT_EQ(fields(c), (std::vector<std::string>{"target_ip", "bind_ip"}));
  c.target_ip = "fe80::1";
  c.bind_ip = "10.0.0.7";
  EXPECT_TRUE(fields(c).empty());
}

TEST(ServerConfig, CredentialsNeedToken) {
  ServerConfig c;
  c.credentials = Credentials{"", "hub", "group", "project"};
  EXPECT_EQ(fields(c), std::vector<std::string>{"credentials.token"});
  c.credentials->token = "abc";
  EXPECT_TRUE(fields(c).empty());
}

TEST(ServerConfig, NumericLimits) {
  ServerConfig c;
  c.max_qubits = 0;
  c.default_shots = 0;
  c.job_workers = 0;
  c.max_datagram = 70000;
  EXPECT_EQ(fields(c), (std::vector<std::string>{"max_qubits", "default_shots", "job_workers",
                                                 "max_datagram"}));
}

TEST(RedactToken, KeepsLastFour) {
  EXPECT_EQ(redact_token("secret-token-1234"), "****1234");
  EXPECT_EQ(redact_token("abcd"), "****");
  EXPECT_EQ(redact_token(""), "****");
}

TEST(Describe, NeverContainsFullToken) {
  ServerConfig c;
  c.remote = true;
  c.bind_ip = "10.0.0.7";
  c.credentials = Credentials{"very-secret-token-WXYZ", "h", "g", "p"};
  const std::string d = describe(c);
  EXPECT_EQ(d.find("very-secret"), std::string::npos);
  EXPECT_NE(d.find("token=****WXYZ"), std::string::npos);
  EXPECT_NE(d.find("receive_port=1416 send_port=1417 target_ip=127.0.0.1 remote=on"), std::string::npos);
  EXPECT_NE(d.find("bind_ip=10.0.0.7"), std::string::npos);
}

TEST(BackendRegistry, AlwaysHasLocalSimulator) {
  const BackendRegistry r(12);
  const auto* b = r.find("qasm_simulator");
  ASSERT_NE(b, nullptr);
  EXPECT_EQ(b->kind, BackendKind::LocalSimulator);
  EXPECT_EQ(b->limits.max_qubits, 12u);
  EXPECT_EQ(r.names(), std::vector<std::string>{"qasm_simulator"});
}

TEST(BackendRegistry, NamesAreUnique) {
  BackendRegistry r;
  r.add({"mock_remote", BackendKind::Remote, {}});
  EXPECT_THROW(r.add({"mock_remote", BackendKind::Remote, {}}), std::invalid_argument);
  EXPECT_THROW(r.add({"qasm_simulator", BackendKind::Remote, {}}), std::invalid_argument);
  EXPECT_EQ(r.names().size(), 2u);
  EXPECT_EQ(r.find("nope"), nullptr);
}
