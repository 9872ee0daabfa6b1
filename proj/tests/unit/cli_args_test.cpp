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

#include <map>

#include "args.hpp"
#include "serve.hpp"

using namespace oscqasm;
using namespace oscqasm::cli;

namespace {

const EnvLookup kNoEnv = [](const std::string&) -> std::optional<std::string> { return std::nullopt; };

Invocation parse(const std::vector<std::string>& args, const EnvLookup& env = kNoEnv) {
  return parse_args(args, env);
}

std::string usage_error(const std::vector<std::string>& args) {
  try {
    parse(args);
  } catch (const UsageError& e) {
    return e.message();
  }
  return "accepted";
}

}  // namespace

TEST(ParseArgs, NoArgumentsGivesDefaults) {
  const auto inv = parse({});
  EXPECT_EQ(inv.mode, Mode::Serve);
  EXPECT_FALSE(inv.serve.headless);
  EXPECT_EQ(inv.serve.config, server::ServerConfig{});
  EXPECT_EQ(inv.serve.control_port, 8642);
}

TEST(ParseArgs, HeadlessDefaults) {
  const auto inv = parse({"--headless"});
  EXPECT_TRUE(inv.serve.headless);
  EXPECT_EQ(inv.serve.config.receive_port, 1416);
  EXPECT_EQ(inv.serve.config.send_port, 1417);
  EXPECT_EQ(inv.serve.config.target_ip, "127.0.0.1");
}

TEST(ParseArgs, PositionalInvocation) {
  const auto inv = parse({"3000", "3005", "192.168.0.1", "--headless"});
  EXPECT_TRUE(inv.serve.headless);
  EXPECT_EQ(inv.serve.config.receive_port, 3000);
  EXPECT_EQ(inv.serve.config.send_port, 3005);
  EXPECT_EQ(inv.serve.config.target_ip, "192.168.0.1");
  EXPECT_FALSE(inv.serve.config.remote);
}

TEST(ParseArgs, PartialPositionals) {
  const auto inv = parse({"4000"});
  EXPECT_EQ(inv.serve.config.receive_port, 4000);
  EXPECT_EQ(inv.serve.config.send_port, 1417);
}

TEST(ParseArgs, RemoteWithAndWithoutAddress) {
  auto inv = parse({"--remote", "10.0.0.7", "--headless"});
  EXPECT_TRUE(inv.serve.config.remote);
  EXPECT_EQ(inv.serve.config.bind_ip, "10.0.0.7");

  inv = parse({"--headless", "--remote"});
  EXPECT_TRUE(inv.serve.config.remote);
  EXPECT_FALSE(inv.serve.config.bind_ip.has_value());

  inv = parse({"3000", "3005", "10.0.0.9", "--remote"});
  EXPECT_EQ(inv.serve.config.receive_port, 3000);
  EXPECT_FALSE(inv.serve.config.bind_ip.has_value());

  EXPECT_EQ(usage_error({"--remote", "eth0"}), "bind-ip: not an IPv4 or IPv6 address");
}

TEST(ParseArgs, Credentials) {
  auto inv = parse({"--token", "abc123", "--hub", "h", "--group", "g", "--project", "p"});
  ASSERT_TRUE(inv.serve.config.credentials.has_value());
  EXPECT_EQ(*inv.serve.config.credentials, (server::Credentials{"abc123", "h", "g", "p"}));

  const EnvLookup env = [](const std::string& k) -> std::optional<std::string> {
    if (k == "OSCQASM_TOKEN") return "from-env";
    return std::nullopt;
  };
  inv = parse({}, env);
  EXPECT_EQ(inv.serve.config.credentials->token, "from-env");
  inv = parse({"--token", "flag-wins"}, env);
  EXPECT_EQ(inv.serve.config.credentials->token, "flag-wins");

  EXPECT_FALSE(parse({}).serve.config.credentials.has_value());
  EXPECT_EQ(usage_error({"--hub", "h"}), "token: token must not be empty");
}

TEST(ParseArgs, ServerKnobs) {
  const auto inv = parse({"--seed", "42", "--max-qubits", "16", "--default-shots", "100", "--jobs", "2",
                          "--poll-budget", "1.5", "--control-port", "9000", "--mock-remote"});
  const auto& c = inv.serve.config;
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.max_qubits, 16u);
  EXPECT_EQ(c.default_shots, 100u);
  EXPECT_EQ(c.job_workers, 2u);
  EXPECT_EQ(c.remote_poll_budget, std::chrono::milliseconds(1500));
  EXPECT_EQ(inv.serve.control_port, 9000);
  EXPECT_TRUE(inv.serve.mock_remote);
}

TEST(ParseArgs, UsageErrors) {
  EXPECT_NE(usage_error({"--bogus"}), "accepted");
  EXPECT_NE(usage_error({"0"}), "accepted");
  EXPECT_NE(usage_error({"70000"}), "accepted");
  EXPECT_NE(usage_error({"abc"}), "accepted");
  EXPECT_EQ(usage_error({"1416", "1416"}), "send-port: must differ from receive_port when replying to loopback");
  EXPECT_EQ(usage_error({"1416", "1417", "not-an-ip"}), "target-ip: not an IPv4 or IPv6 address");
  EXPECT_NE(usage_error({"--max-qubits", "31"}), "accepted");
  EXPECT_NE(usage_error({"--mock-remote", "--provider-url", "http://x"}), "accepted");
  EXPECT_NE(usage_error({"1", "2", "127.0.0.1", "extra"}), "accepted");
  // One line, no trailing newline.
  EXPECT_EQ(usage_error({"--bogus"}).find('\n'), std::string::npos);
}

TEST(ParseArgs, HelpListsEveryFlag) {
  const auto inv = parse({"--help"});
  ASSERT_EQ(inv.mode, Mode::Help);
  for (const char* flag : {"--headless", "--remote", "--token", "--hub", "--group", "--project", "--seed",
                           "--max-qubits", "--help", "receive_port", "send_port", "target_ip", "send"}) {
    EXPECT_NE(inv.help.find(flag), std::string::npos) << flag;
  }
  const auto send_help = parse({"send", "--help"});
  ASSERT_EQ(send_help.mode, Mode::Help);
  for (const char* flag : {"--file", "--host", "--rport", "--lport", "--shots", "--backend", "--timeout"}) {
    EXPECT_NE(send_help.help.find(flag), std::string::npos) << flag;
  }
}

TEST(ParseArgs, SendSubcommand) {
  const auto inv = parse({"send", "--file", "bell.qasm", "--host", "::1", "--rport", "3000", "--lport", "3005",
                          "--shots", "64", "--backend", "mock_remote", "--timeout", "2"});
  ASSERT_EQ(inv.mode, Mode::Send);
  EXPECT_EQ(inv.send.file, "bell.qasm");
  EXPECT_EQ(inv.send.host, "::1");
  EXPECT_EQ(inv.send.rport, 3000);
  EXPECT_EQ(inv.send.lport, 3005);
  EXPECT_EQ(inv.send.shots, 64);
  EXPECT_EQ(inv.send.backend, "mock_remote");
  EXPECT_EQ(inv.send.timeout, std::chrono::seconds(2));

  const auto defaults = parse({"send", "-f", "x.qasm"});
  EXPECT_EQ(defaults.send.host, "127.0.0.1");
  EXPECT_EQ(defaults.send.rport, 1416);
  EXPECT_EQ(defaults.send.lport, 1417);
  EXPECT_FALSE(defaults.send.shots.has_value());
  EXPECT_EQ(defaults.send.timeout, std::chrono::seconds(10));

  EXPECT_NE(usage_error({"send"}), "accepted");
  EXPECT_NE(usage_error({"send", "-f", "x", "--shots", "0"}), "accepted");
  EXPECT_NE(usage_error({"send", "-f", "x", "--host", "example.org"}), "accepted");
}

TEST(ParseArgs, MockProviderSubcommand) {
  const auto inv = parse({"mock-provider", "--port", "0", "--latency", "0.25", "--stall", "--accept-token", "t"});
  ASSERT_EQ(inv.mode, Mode::MockProvider);
  EXPECT_EQ(inv.mock.port, 0);
  EXPECT_EQ(inv.mock.latency, std::chrono::milliseconds(250));
  EXPECT_TRUE(inv.mock.stall);
  EXPECT_EQ(inv.mock.token, "t");
}

TEST(FormatLogLine, Shape) {
  server::LogEvent e;
  e.ts_ms = 0;
  e.level = server::LogLevel::Notice;
  e.line = "job 1 done";
  const std::string s = format_log_line(e);
  EXPECT_EQ(s.size(), std::string("HH:MM:SS.mmm ").size() + std::string("notice  ").size() + e.line.size());
  EXPECT_EQ(s.substr(8, 4), ".000");
  EXPECT_NE(s.find("notice"), std::string::npos);
  EXPECT_EQ(s.substr(s.size() - e.line.size()), e.line);
}
