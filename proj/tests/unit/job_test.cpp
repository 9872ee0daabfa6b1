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

#include <json.hpp>

#include "oscqasm/qasm/circuit.hpp"
#include "oscqasm/server/job.hpp"
#include "oscqasm/server/remote.hpp"
#include "oscqasm/sim/simulator.hpp"
#include "udp_harness.hpp"

using namespace oscqasm;
using namespace oscqasm::server;
using oscqasm::testing::kBell;

namespace {

const Endpoint kSource{"127.0.0.1", 40000};

std::string qutune_error(const osc::Message& m, const ServerConfig& c = {}) {
  try {
    handle_qutune(m, kSource, c);
  } catch (const JobError& e) {
    return e.code() + ": " + e.message();
  }
  return "accepted";
}

JobRequest request(const std::string& qasm, std::uint64_t shots = 1024,
                   const std::string& backend = "qasm_simulator") {
  JobRequest r;
  r.id = 7;
  r.qasm_source = qasm;
  r.shots = shots;
  r.backend_name = backend;
  return r;
}

struct Fixture {
  BackendRegistry registry{20};
  ExecutionContext ctx() {
    ExecutionContext c;
    c.registry = &registry;
    c.seed = 7;
    return c;
  }
};

/// Records submissions; answers with fixed counts.
class FakeProvider : public RemoteProvider {
 public:
  std::vector<std::string> backends() const override { return {"fake_remote"}; }
  std::string submit(const RemoteSubmission& s) override {
    submitted.push_back(s);
    return "fake-1";
  }
  RemoteJobStatus status(const std::string&, const Credentials&) override {
    return {RemoteJobState::Done, ""};
  }
  sim::Counts result(const std::string&, const Credentials&) override { return {{"11", 3}}; }
  std::vector<RemoteSubmission> submitted;
};

}  // namespace

TEST(HandleQuTune, BellMessageFromThreeValues) {
  ServerConfig c;
  c.target_ip = "192.168.0.1";
  c.send_port = 3005;
  const JobRequest r =
      handle_qutune({"/QuTune", {std::string(kBell), std::int32_t{1024}, std::string("qasm_simulator")}},
                    kSource, c);
  EXPECT_EQ(r.qasm_source, kBell);
  EXPECT_EQ(r.shots, 1024u);
  EXPECT_EQ(r.backend_name, "qasm_simulator");
  EXPECT_EQ(r.reply_addr, (Endpoint{"192.168.0.1", 3005}));
  EXPECT_EQ(r.source, kSource);
}

TEST(HandleQuTune, DefaultsFromSingleValue) {
  const JobRequest r = handle_qutune({"/QuTune", {std::string(kBell)}}, kSource, ServerConfig{});
  EXPECT_EQ(r.shots, 1024u);
  EXPECT_EQ(r.backend_name, "qasm_simulator");
  EXPECT_EQ(r.reply_addr, (Endpoint{"127.0.0.1", 1417}));

  ServerConfig c;
  c.default_shots = 99;
  EXPECT_EQ(handle_qutune({"/QuTune", {std::string(kBell)}}, kSource, c).shots, 99u);
  EXPECT_EQ(handle_qutune({"/QuTune", {std::string(kBell), 5, std::string()}}, kSource, c).backend_name,
            "qasm_simulator");
}

TEST(HandleQuTune, FloatShotsTruncate) {
  EXPECT_EQ(handle_qutune({"/QuTune", {std::string(kBell), 100.9f}}, kSource, {}).shots, 100u);
  EXPECT_EQ(qutune_error({"/QuTune", {std::string(kBell), 0.5f}}).rfind("ShotsOutOfRange", 0), 0u);
  EXPECT_EQ(qutune_error({"/QuTune", {std::string(kBell), std::numeric_limits<float>::infinity()}})
                .rfind("BadArgType", 0),
            0u);
  EXPECT_EQ(qutune_error({"/QuTune", {std::string(kBell), std::nanf("")}}).rfind("BadArgType", 0), 0u);
}

TEST(HandleQuTune, Errors) {
  EXPECT_EQ(qutune_error({"/QuTune", {}}).rfind("MissingQasm", 0), 0u);
  EXPECT_EQ(qutune_error({"/QuTune", {std::int32_t{5}}}), "BadArgType: first value must be Qasm text");
  EXPECT_EQ(qutune_error({"/QuTune", {std::string(kBell), std::string("many")}}).rfind("BadArgType", 0), 0u);
  EXPECT_EQ(qutune_error({"/QuTune", {std::string(kBell), 10, 3}}).rfind("BadArgType", 0), 0u);
  EXPECT_EQ(qutune_error({"/QuTune", {std::string(kBell), 10, std::string("a"), std::string("b")}})
                .rfind("BadArgType", 0),
            0u);
  EXPECT_EQ(qutune_error({"/QuTune", {std::string(kBell), 0}}).rfind("ShotsOutOfRange", 0), 0u);
  EXPECT_EQ(qutune_error({"/QuTune", {std::string(kBell), -3}}).rfind("ShotsOutOfRange", 0), 0u);
  EXPECT_EQ(qutune_error({"/QuTune", {std::string(kBell), static_cast<std::int32_t>(sim::kMaxShots + 1)}})
                .rfind("ShotsOutOfRange", 0),
            0u);
  EXPECT_EQ(qutune_error({"/qutune", {std::string(kBell)}}).rfind("UnknownPath", 0), 0u);
}

TEST(Execute, BellCountsGolden) {
  Fixture f;
  const JobResult r = execute(request(kBell), f.ctx());
  ASSERT_TRUE(r.ok()) << r.error->to_string();
  EXPECT_FALSE(r.error.has_value());
  EXPECT_EQ(r.num_qubits, 2u);
  // Frozen from a seed-7 run of the local simulator.
  EXPECT_EQ(counts_to_json(*r.counts), R"({"00": 527, "11": 497})");
}

TEST(Execute, UnknownBackendListsRegistry) {
  Fixture f;
  f.registry.add({"other", BackendKind::Remote, {}});
  const JobResult r = execute(request(kBell, 10, "does_not_exist"), f.ctx());
  ASSERT_FALSE(r.ok());
  EXPECT_FALSE(r.counts.has_value());
  EXPECT_EQ(r.error->code, "UnknownBackend");
  EXPECT_EQ(r.error->message, "unknown backend 'does_not_exist'; available: qasm_simulator, other");
}

TEST(Execute, NoMeasurements) {
  Fixture f;
  const JobResult r =
      execute(request("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1]; h q[0];"), f.ctx());
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.error->code, "NoMeasurements");
  EXPECT_NE(r.error->message.find("measure"), std::string::npos);
}

TEST(Execute, CompileErrorsCarryPosition) {
  Fixture f;
  const JobResult r = execute(request("OPENQASM 2.0;\nqreg q[1]\nh q[0];"), f.ctx());
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.error->code, "SyntaxError");
  EXPECT_NE(r.error->message.find("line 3"), std::string::npos);
  const auto msgs = reply_messages(r, request(""));
  ASSERT_EQ(msgs.size(), 1u);
  EXPECT_EQ(msgs[0].address, "/error");
  EXPECT_EQ(oscqasm::testing::text_arg(msgs[0]).rfind("SyntaxError: ", 0), 0u);
}

TEST(Execute, BackendQubitLimit) {
  BackendRegistry reg(16);
  ExecutionContext ctx;
  ctx.registry = &reg;
  const JobResult r = execute(
      request("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[20]; creg c[20]; h q; measure q -> c;"), ctx);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.error->code, "TooManyQubits");
  EXPECT_LT(r.elapsed.count(), 50);
}

TEST(Execute, RemoteDispatch) {
  Fixture f;
  FakeProvider provider;
  f.registry.add({"fake_remote", BackendKind::Remote, {}});
  auto ctx = f.ctx();
  ctx.provider = &provider;

  JobResult r = execute(request(kBell, 3, "fake_remote"), ctx);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.error->code, "AuthFailed");
  EXPECT_TRUE(provider.submitted.empty());

  ctx.credentials = Credentials{"tok-1234", "h", "g", "p"};
  r = execute(request(kBell, 3, "fake_remote"), ctx);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r.counts, (sim::Counts{{"11", 3}}));
  ASSERT_EQ(provider.submitted.size(), 1u);
  EXPECT_EQ(provider.submitted[0].backend, "fake_remote");
  EXPECT_EQ(provider.submitted[0].shots, 3u);
  EXPECT_EQ(provider.submitted[0].credentials.hub, "h");

  ctx.provider = nullptr;
  r = execute(request(kBell, 3, "fake_remote"), ctx);
  EXPECT_EQ(r.error->code, "remote");
}

TEST(CountsJson, OrderAndShape) {
  EXPECT_EQ(counts_to_json({{"00", 517}, {"11", 507}}), R"({"00": 517, "11": 507})");
  EXPECT_EQ(counts_to_json({{"00", 507}, {"11", 517}}), R"({"11": 517, "00": 507})");
  EXPECT_EQ(counts_to_json({{"b", 2}, {"a", 2}, {"c", 5}}), R"({"c": 5, "a": 2, "b": 2})");
  EXPECT_EQ(counts_to_json({}), "{}");
  const auto j = nlohmann::json::parse(counts_to_json({{"1 01", 3}, {"0 00", 1}}));
  EXPECT_EQ(j["1 01"], 3);
}

TEST(ReplyMessages, InfoThenCounts) {
  JobResult r;
  r.counts = sim::Counts{{"0", 4}};
  r.elapsed = std::chrono::milliseconds(12);
  const auto msgs = reply_messages(r, request(kBell));
  ASSERT_EQ(msgs.size(), 2u);
  EXPECT_EQ(msgs[0], (osc::Message{"/info", {std::string("job 7 done in 12 ms")}}));
  EXPECT_EQ(msgs[1], (osc::Message{"/counts", {std::string(R"({"0": 4})")}}));
}

TEST(ReplyMessages, ErrorIsCodeColonMessage) {
  EXPECT_EQ(error_message("Busy", "try later"), (osc::Message{"/error", {std::string("Busy: try later")}}));
}
