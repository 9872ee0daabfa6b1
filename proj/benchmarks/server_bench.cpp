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

#include <benchmark/benchmark.h>

#include "oscqasm/server/log_bus.hpp"
#include "oscqasm/server/server.hpp"
#include "udp_harness.hpp"

using namespace oscqasm;
using namespace std::chrono_literals;

namespace {

void BM_BellRoundTrip(benchmark::State& state) {
  testing::ReplyCollector replies;
  server::ServerConfig cfg;
  cfg.receive_port = testing::free_udp_port();
  cfg.send_port = replies.port();
  server::OscQasmServer srv(cfg, std::make_shared<server::LogBus>());
  srv.start();
  const osc::Message request{"/QuTune", {std::string(testing::kBell), std::int32_t{1024}}};
  for (auto _ : state) {
    replies.clear();
    testing::send_message(request, srv.listen_endpoint());
    if (!replies.wait_terminal(1, 5s)) state.SkipWithError("no reply");
  }
  srv.stop();
}
BENCHMARK(BM_BellRoundTrip)->Unit(benchmark::kMicrosecond);

void BM_ErrorRoundTrip(benchmark::State& state) {
  testing::ReplyCollector replies;
  server::ServerConfig cfg;
  cfg.receive_port = testing::free_udp_port();
  cfg.send_port = replies.port();
  server::OscQasmServer srv(cfg, std::make_shared<server::LogBus>());
  srv.start();
  const osc::Message request{"/QuTune", {std::int32_t{7}}};
  for (auto _ : state) {
    replies.clear();
    testing::send_message(request, srv.listen_endpoint());
    if (!replies.wait_terminal(1, 5s)) state.SkipWithError("no reply");
  }
  srv.stop();
}
BENCHMARK(BM_ErrorRoundTrip)->Unit(benchmark::kMicrosecond);

}  // namespace
