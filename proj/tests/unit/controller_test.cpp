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

#include "oscqasm/server/controller.hpp"
#include "udp_harness.hpp"

using namespace oscqasm::server;

namespace {

ServerConfig loopback_config() {
  ServerConfig c;
  c.receive_port = oscqasm::testing::free_udp_port();
  c.send_port = oscqasm::testing::free_udp_port();
  return c;
}

std::string controller_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const ControllerError& e) {
    return e.code();
  }
  return "none";
}

}  // namespace

TEST(Controller, FreshStatus) {
  ServerController ctl(ServerConfig{}, nullptr);
  const auto s = ctl.status();
  EXPECT_EQ(s.state, ServerState::Stopped);
  EXPECT_EQ(to_string(s.state), "stopped");
  EXPECT_EQ(s.jobs_done, 0u);
  EXPECT_FALSE(s.last_error.has_value());
  EXPECT_FALSE(s.listen.has_value());
  EXPECT_EQ(s.effective_config.receive_port, 1416);
  EXPECT_EQ(s.effective_config.send_port, 1417);
  EXPECT_EQ(s.effective_config.target_ip, "127.0.0.1");
}

TEST(Controller, Lifecycle) {
  auto bus = std::make_shared<LogBus>();
  auto sub = bus->subscribe();
  ServerController ctl(loopback_config(), bus);
  auto s = ctl.start();
  EXPECT_EQ(s.state, ServerState::Running);
  ASSERT_TRUE(s.listen.has_value());
  EXPECT_EQ(s.listen->ip, "127.0.0.1");
  const auto events = sub->drain();
  ASSERT_GE(events.size(), 2u);
  EXPECT_EQ(events[0].line.rfind("config: ", 0), 0u);
  EXPECT_EQ(events[1].line.rfind("OSC server ready: listening on UDP port ", 0), 0u);

  EXPECT_EQ(controller_code([&] { ctl.start(); }), "IllegalTransition");
  EXPECT_EQ(controller_code([&] { ctl.apply_config(loopback_config()); }), "IllegalTransition");

  s = ctl.stop();
  EXPECT_EQ(s.state, ServerState::Stopped);
  EXPECT_FALSE(s.listen.has_value());
  EXPECT_EQ(controller_code([&] { ctl.stop(); }), "IllegalTransition");

  // Restart works and the port is released in between.
  EXPECT_EQ(ctl.start().state, ServerState::Running);
  ctl.stop();
}

TEST(Controller, ApplyConfigValidates) {
  ServerController ctl(ServerConfig{}, nullptr);
  ServerConfig c;
  c.receive_port = 0;
  try {
    ctl.apply_config(c);
    FAIL();
  } catch (const ControllerError& e) {
    EXPECT_EQ(e.code(), "ConfigRejected");
    ASSERT_EQ(e.fields().size(), 1u);
    EXPECT_EQ(e.fields()[0].field, "receive_port");
    EXPECT_EQ(e.fields()[0].message, "port out of range");
  }
  c.receive_port = 3000;
  EXPECT_EQ(ctl.apply_config(c).effective_config.receive_port, 3000);
}

TEST(Controller, BindFailureLatchesError) {
  auto blocker = UdpSocket::bind({"127.0.0.1", 0});
  ServerConfig c = loopback_config();
  c.receive_port = blocker.local_endpoint().port;
  auto bus = std::make_shared<LogBus>();
  ServerController ctl(c, bus);
  EXPECT_EQ(controller_code([&] { ctl.start(); }), "StartFailed");
  const auto s = ctl.status();
  EXPECT_EQ(s.state, ServerState::Stopped);
  ASSERT_TRUE(s.last_error.has_value());
  EXPECT_NE(s.last_error->find("BindFailure"), std::string::npos);
  EXPECT_EQ(bus->recent().back().line.rfind("start failed: BindFailure", 0), 0u);
}

TEST(Controller, StatusRedactsToken) {
  ServerConfig c = loopback_config();
  c.credentials = Credentials{"abcdefgh-secret-7890", "hub", "group", "project"};
  auto bus = std::make_shared<LogBus>();
  ServerController ctl(c, bus);
  ctl.start();
  const auto s = ctl.status();
  EXPECT_EQ(s.effective_config.credentials->token, "****7890");
  EXPECT_EQ(ctl.config().credentials->token, "abcdefgh-secret-7890");
  ctl.stop();
  for (const auto& e : bus->recent()) EXPECT_EQ(e.line.find("secret"), std::string::npos) << e.line;
}

TEST(Controller, JobsDoneAccumulatesAcrossRuns) {
  oscqasm::testing::ReplyCollector replies;
  ServerConfig c = loopback_config();
  c.send_port = replies.port();
  ServerController ctl(c, nullptr);
  for (int run = 0; run < 2; ++run) {
    const auto s = ctl.start();
    oscqasm::testing::send_message({"/QuTune", {std::string(oscqasm::testing::kBell), 8}},
                                   *s.listen);
    ASSERT_TRUE(replies.wait_terminal(static_cast<std::size_t>(run + 1), std::chrono::seconds(5)));
    ctl.stop();
  }
  EXPECT_EQ(ctl.status().jobs_done, 2u);
}

TEST(Controller, UptimeAdvancesWhileRunning) {
  ServerController ctl(loopback_config(), nullptr);
  ctl.start();
  std::this_thread::sleep_for(std::chrono::milliseconds(50));
  EXPECT_GE(ctl.status().uptime_s, 0.04);
  ctl.stop();
  EXPECT_EQ(ctl.status().uptime_s, 0.0);
}
