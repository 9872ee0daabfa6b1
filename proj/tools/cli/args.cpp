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

#include "args.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "oscqasm/server/net.hpp"

namespace oscqasm::cli {

std::optional<std::string> process_env(const std::string& name) {
  if (const char* v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

namespace {

std::chrono::milliseconds seconds_to_ms(double s) {
  return std::chrono::milliseconds(static_cast<std::int64_t>(std::llround(s * 1000.0)));
}

}  // namespace

Invocation parse_args(const std::vector<std::string>& args, const EnvLookup& env) {
  Invocation inv;
  auto& serve = inv.serve;
  auto& cfg = serve.config;

  CLI::App app{"OSC server that runs OpenQASM 2.0 programs and replies with measurement counts",
               "oscqasm"};
  app.set_help_flag("-h,--help", "Print this help and exit");
  app.footer(
      "Exit codes: 0 success, 1 runtime error or /error reply, 2 usage error, 3 timeout.\n"
      "OSCQASM_TOKEN may be used instead of --token.");

  std::optional<std::string> remote_ip;
  std::optional<std::string> token, hub, group, project;
  std::optional<std::uint64_t> seed;
  double poll_budget_s = 300.0;

  app.add_option("receive_port", cfg.receive_port, "UDP port to listen on (default 1416)")
      ->check(CLI::Range(1, 65535));
  app.add_option("send_port", cfg.send_port, "UDP port replies are sent to (default 1417)")
      ->check(CLI::Range(1, 65535));
  app.add_option("target_ip", cfg.target_ip, "Address replies are sent to (default 127.0.0.1)");
  app.add_flag("--headless", serve.headless, "Serve immediately without the control panel");
  app.add_option("--remote", remote_ip,
                 "Listen on a network adapter instead of loopback; optional explicit address "
                 "(default: the primary adapter)")
      ->expected(0, 1);
  app.add_option("--token", token, "Access token for remote backends");
  app.add_option("--hub", hub, "Remote account hub");
  app.add_option("--group", group, "Remote account group");
  app.add_option("--project", project, "Remote account project");
  app.add_option("--seed", seed, "Fixed simulator seed (reproducible counts)");
  app.add_option("--max-qubits", cfg.max_qubits, "Largest circuit accepted (default 20)")
      ->check(CLI::Range(1, 30));
  app.add_option("--default-shots", cfg.default_shots, "Shots when a request omits them")
      ->check(CLI::Range(1, 1'048'576));
  app.add_option("--jobs", cfg.job_workers, "Jobs run in parallel (default 1, keeps reply order)")
      ->check(CLI::Range(1, 64));
  app.add_option("--control-port", serve.control_port, "Control panel HTTP port (default 8642)")
      ->check(CLI::Range(0, 65535));
  app.add_option("--dashboard", serve.dashboard_dir, "Directory with the dashboard files")
      ->check(CLI::ExistingDirectory);
  app.add_flag("--mock-remote", serve.mock_remote,
               "Register the built-in mock remote provider (backend \"mock_remote\")");
  app.add_option("--provider-url", serve.provider_url, "Base URL of a remote provider service");
  app.add_option("--poll-budget", poll_budget_s, "Seconds to wait for a remote job (default 300)")
      ->check(CLI::PositiveNumber);

  auto* send = app.add_subcommand("send", "Send a Qasm file to a server and print the reply");
  auto& so = inv.send;
  double timeout_s = 10.0;
  send->add_option("--file,-f", so.file, "Qasm file to send")->required();
  send->add_option("--host", so.host, "Server address (default 127.0.0.1)");
  send->add_option("--rport", so.rport, "Server receive port (default 1416)")
      ->check(CLI::Range(1, 65535));
  send->add_option("--lport", so.lport, "Local port replies arrive on (default 1417)")
      ->check(CLI::Range(1, 65535));
  send->add_option("--shots", so.shots, "Number of shots")->check(CLI::Range(1, 1'048'576));
  send->add_option("--backend", so.backend, "Backend name (default qasm_simulator)");
  send->add_option("--timeout", timeout_s, "Seconds to wait for the reply (default 10)")
      ->check(CLI::PositiveNumber);

  auto* mock = app.add_subcommand("mock-provider", "Run the mock remote provider over HTTP");
  auto& mo = inv.mock;
  double latency_s = 0.0;
  mock->add_option("--bind", mo.bind_ip, "Address to listen on (default 127.0.0.1)");
  mock->add_option("--port", mo.port, "HTTP port (default 8650, 0 for any)")
      ->check(CLI::Range(0, 65535));
  mock->add_option("--latency", latency_s, "Seconds before a job completes")
      ->check(CLI::NonNegativeNumber);
  mock->add_flag("--stall", mo.stall, "Jobs never complete");
  mock->add_option("--accept-token", mo.token, "Only accept this token");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    inv.mode = Mode::Help;
    if (send->count() > 0) inv.help = send->help();
    else if (mock->count() > 0) inv.help = mock->help();
    else inv.help = app.help();
    return inv;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (send->parsed()) {
    inv.mode = Mode::Send;
    so.timeout = seconds_to_ms(timeout_s);
    if (!server::is_ip_literal(so.host)) throw UsageError("--host must be an IP address");
    return inv;
  }
  if (mock->parsed()) {
    inv.mode = Mode::MockProvider;
    mo.latency = seconds_to_ms(latency_s);
    if (!server::is_ip_literal(mo.bind_ip)) throw UsageError("--bind must be an IP address");
    return inv;
  }

  inv.mode = Mode::Serve;
  if (remote_ip) {
    cfg.remote = true;
    if (!remote_ip->empty()) cfg.bind_ip = *remote_ip;
  }
  if (!token) token = env("OSCQASM_TOKEN");
  if (token || hub || group || project) {
    cfg.credentials = server::Credentials{token.value_or(""), hub.value_or(""),
                                          group.value_or(""), project.value_or("")};
  }
  cfg.seed = seed;
  cfg.remote_poll_budget = seconds_to_ms(poll_budget_s);
  if (serve.mock_remote && serve.provider_url) {
    throw UsageError("--mock-remote and --provider-url cannot be combined");
  }

  if (const auto errors = server::validate(cfg); !errors.empty()) {
    std::string field = errors.front().field;
    std::replace(field.begin(), field.end(), '_', '-');
    if (field == "credentials.token") field = "token";
    throw UsageError(field + ": " + errors.front().message);
  }
  return inv;
}

}  // namespace oscqasm::cli
