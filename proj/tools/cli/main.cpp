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

#include <csignal>
#include <iostream>

#include "args.hpp"
#include "client.hpp"
#include "serve.hpp"

namespace {

sigset_t shutdown_signals() {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  return set;
}

void wait_for_shutdown() {
  const sigset_t set = shutdown_signals();
  int sig = 0;
  sigwait(&set, &sig);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace oscqasm::cli;

  // Blocked before any thread starts so only sigwait sees them.
  const sigset_t set = shutdown_signals();
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  std::signal(SIGPIPE, SIG_IGN);

  Invocation inv;
  try {
    inv = parse_args(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const UsageError& e) {
    std::cerr << "oscqasm: " << e.message() << "\nRun with --help for more information.\n";
    return kExitUsage;
  }

  switch (inv.mode) {
    case Mode::Help:
      std::cout << inv.help;
      return kExitOk;
    case Mode::Send:
      return run_send(inv.send, std::cout, std::cerr);
    case Mode::MockProvider:
      return run_mock_provider(inv.mock, std::cout, std::cerr, wait_for_shutdown);
    case Mode::Serve:
      break;
  }
  return run_serve(inv.serve, std::cout, std::cerr, wait_for_shutdown);
}
