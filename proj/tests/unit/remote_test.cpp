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

#include <httplib.h>

#include "oscqasm/qasm/circuit.hpp"
#include "oscqasm/server/remote.hpp"
#include "oscqasm/sim/simulator.hpp"
#include "udp_harness.hpp"

using namespace oscqasm;
using namespace oscqasm::server;
using namespace std::chrono_literals;
using oscqasm::testing::kBell;

namespace {

RemoteSubmission bell(const std::string& token, std::uint64_t shots = 1024) {
  RemoteSubmission s;
  s.qasm = kBell;
  s.shots = shots;
  s.backend = "mock_remote";
  s.credentials = Credentials{token, "hub", "group", "project"};
  s.seed = 7;
  return s;
}

std::string remote_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const RemoteError& e) {
    return e.code();
  }
  return "none";
}

/// Provider scripted entirely in memory.
class ScriptedProvider : public RemoteProvider {
 public:
  std::vector<std::string> backends() const override { return {"scripted"}; }
  std::string submit(const RemoteSubmission&) override {
    ++submits;
    return "j";
  }
  RemoteJobStatus status(const std::string&, const Credentials&) override {
    ++polls;
    if (polls < done_after) return {RemoteJobState::Running, ""};
    return final_state;
  }
  sim::Counts result(const std::string&, const Credentials&) override { return {{"0", 1}}; }

  int submits = 0;
  int polls = 0;
  int done_after = 3;
  RemoteJobStatus final_state{RemoteJobState::Done, ""};
};

}  // namespace

TEST(SubmitRemote, PollsUntilDone) {
  ScriptedProvider p;
  const auto counts = submit_remote(p, bell("tok"), {5s, 1ms});
  EXPECT_EQ(counts, (sim::Counts{{"0", 1}}));
  EXPECT_EQ(p.submits, 1);
  EXPECT_EQ(p.polls, 3);
}

TEST(SubmitRemote, EmptyTokenFailsBeforeSubmit) {
  ScriptedProvider p;
  EXPECT_EQ(remote_code([&] { submit_remote(p, bell(""), {}); }), "AuthFailed");
  EXPECT_EQ(p.submits, 0);
}

TEST(SubmitRemote, FailedJobIsRejected) {
  ScriptedProvider p;
  p.final_state = {RemoteJobState::Failed, "calibration in progress"};
  try {
    submit_remote(p, bell("tok"), {5s, 1ms});
    FAIL();
  } catch (const RemoteError& e) {
    EXPECT_EQ(e.code(), "RemoteRejected");
    EXPECT_EQ(e.message(), "calibration in progress");
  }
}

TEST(SubmitRemote, BudgetExceeded) {
  ScriptedProvider p;
  p.done_after = 1'000'000;
  const auto t0 = std::chrono::steady_clock::now();
  EXPECT_EQ(remote_code([&] { submit_remote(p, bell("tok"), {200ms, 10ms}); }), "RemoteTimeout");
  const auto took = std::chrono::steady_clock::now() - t0;
  EXPECT_GE(took, 200ms);
  EXPECT_LT(took, 2s);
}

TEST(SubmitRemote, CancelStopsPolling) {
  ScriptedProvider p;
  p.done_after = 1'000'000;
  const auto t0 = std::chrono::steady_clock::now();
  EXPECT_EQ(remote_code([&] {
              submit_remote(p, bell("tok"), {60s, 200ms},
                            [&] { return std::chrono::steady_clock::now() - t0 > 100ms; });
            }),
            "Cancelled");
  EXPECT_LT(std::chrono::steady_clock::now() - t0, 1s);
}

class MockProviderTest : public ::testing::Test {
 protected:
  void SetUp() override { service.start(); }
  HttpRemoteProvider client() { return HttpRemoteProvider(service.base_url(), {"mock_remote"}); }

  MockProviderService service{MockProviderOptions{}};
};

TEST_F(MockProviderTest, BellMatchesLocalSimulatorUnderSameSeed) {
  auto http = client();
  const auto remote = submit_remote(http, bell("dummy-token"), {10s, 5ms});
  sim::RunOptions opts;
  opts.seed = 7;
  const auto local = sim::run(qasm::compile(kBell), 1024, opts);
  EXPECT_EQ(remote, local);
}

TEST_F(MockProviderTest, EmptyTokenNeverReachesService) {
  auto http = client();
  const auto before = service.request_count();
  EXPECT_EQ(remote_code([&] { submit_remote(http, bell(""), {10s, 5ms}); }), "AuthFailed");
  EXPECT_EQ(service.request_count(), before);
}

TEST_F(MockProviderTest, StallTimesOutAtBudget) {
  service.set_stall(true);
  auto http = client();
  const auto t0 = std::chrono::steady_clock::now();
  EXPECT_EQ(remote_code([&] { submit_remote(http, bell("dummy-token"), {1s, 50ms}); }), "RemoteTimeout");
  const auto took = std::chrono::steady_clock::now() - t0;
  EXPECT_GE(took, 1s);
  EXPECT_LT(took, 3s);
}

TEST_F(MockProviderTest, CompileFailureIsRejected) {
  auto http = client();
  auto s = bell("dummy-token");
  s.qasm = "OPENQASM 2.0; qreg q[1]; h q[0];";
  EXPECT_EQ(remote_code([&] { submit_remote(http, s, {10s, 5ms}); }), "RemoteRejected");
}

TEST_F(MockProviderTest, UnknownBackendIsRejected) {
  auto http = client();
  auto s = bell("dummy-token");
  s.backend = "ibmq_nowhere";
  EXPECT_EQ(remote_code([&] { http.submit(s); }), "RemoteRejected");
}

TEST_F(MockProviderTest, HttpContract) {
  httplib::Client cli(service.base_url());
  auto r = cli.Get("/api/backends");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(r->body, R"({"backends":["mock_remote"]})");

  r = cli.Post("/api/jobs", R"({"qasm":"x"})", "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 401);

  const httplib::Headers auth{{"Authorization", "Bearer abc"}};
  r = cli.Post("/api/jobs", auth, "not json", "application/json");
  EXPECT_EQ(r->status, 400);
  r = cli.Post("/api/jobs", auth, R"({"qasm":"x","shots":0})", "application/json");
  EXPECT_EQ(r->status, 400);
  r = cli.Get("/api/jobs/mock-999", auth);
  EXPECT_EQ(r->status, 404);
}

TEST(MockProvider, AcceptedTokenIsEnforced) {
  MockProviderOptions o;
  o.accepted_token = "right-token";
  MockProviderService service(o);
  service.start();
  HttpRemoteProvider http(service.base_url(), {"mock_remote"});
  EXPECT_EQ(remote_code([&] { submit_remote(http, bell("wrong-token"), {5s, 5ms}); }), "AuthFailed");
  EXPECT_NO_THROW(submit_remote(http, bell("right-token"), {5s, 5ms}));
}

TEST(MockProvider, LatencyDelaysCompletion) {
  MockProviderOptions o;
  o.latency = 300ms;
  MockProviderService service(o);
  service.start();
  HttpRemoteProvider http(service.base_url(), {"mock_remote"});
  const auto t0 = std::chrono::steady_clock::now();
  submit_remote(http, bell("tok"), {5s, 20ms});
  EXPECT_GE(std::chrono::steady_clock::now() - t0, 300ms);
}

TEST(MockProvider, BindConflictAndUnreachable) {
  MockProviderService a;
  a.start();
  MockProviderOptions o;
  o.port = a.port();
  MockProviderService b(o);
  EXPECT_EQ(remote_code([&] { b.start(); }), "BindFailure");

  const std::string url = a.base_url();
  a.stop();
  HttpRemoteProvider http(url, {"mock_remote"}, 500ms);
  EXPECT_EQ(remote_code([&] { http.submit(bell("tok")); }), "remote");
}
