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

#include "serve.hpp"

#include <ctime>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>

#include "oscqasm/control/api.hpp"
#include "oscqasm/server/controller.hpp"
#include "oscqasm/server/remote.hpp"

namespace oscqasm::cli {

std::string format_log_line(const server::LogEvent& event) {
  const std::time_t secs = static_cast<std::time_t>(event.ts_ms / 1000);
  std::tm tm{};
  ::localtime_r(&secs, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%H:%M:%S") << '.' << std::setw(3) << std::setfill('0')
     << event.ts_ms % 1000 << ' ' << std::left << std::setw(8) << std::setfill(' ')
     << server::to_string(event.level) << event.line;
  return os.str();
}

int run_serve(const ServeOptions& options, std::ostream& out, std::ostream& err,
              const std::function<void()>& wait) {
  auto bus = std::make_shared<server::LogBus>();
  bus->add_sink([&out](const server::LogEvent& e) {
    if (e.level == server::LogLevel::Debug) return;
    out << format_log_line(e) << std::endl;
  });

  std::unique_ptr<server::MockProviderService> mock;
  std::shared_ptr<server::RemoteProvider> provider;
  try {
    if (options.mock_remote) {
      mock = std::make_unique<server::MockProviderService>();
      mock->start();
      provider = std::make_shared<server::HttpRemoteProvider>(mock->base_url(),
                                                              mock->options().backends);
      bus->publish(server::LogLevel::Info, "mock remote provider at " + mock->base_url());
    } else if (options.provider_url) {
      provider = std::make_shared<server::HttpRemoteProvider>(
          *options.provider_url, std::vector<std::string>{"mock_remote"});
    }
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitError;
  }

  auto controller = std::make_shared<server::ServerController>(options.config, bus, provider);

  if (options.headless) {
    try {
      controller->start();
    } catch (const std::exception& e) {
      err << e.what() << '\n';
      return kExitError;
    }
    wait();
    controller->stop();
    return kExitOk;
  }

  control::ControlApiOptions api_opts;
  api_opts.port = options.control_port;
  api_opts.static_dir = options.dashboard_dir;
  control::ControlApi api(controller, api_opts);
  try {
    api.start();
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitError;
  }
  out << "control panel: " << api.url() << std::endl;
  wait();
  api.stop();
  if (controller->status().state == server::ServerState::Running) controller->stop();
  return kExitOk;
}

int run_mock_provider(const MockProviderCliOptions& options, std::ostream& out, std::ostream& err,
                      const std::function<void()>& wait) {
  server::MockProviderOptions mo;
  mo.bind_ip = options.bind_ip;
  mo.port = options.port;
  mo.latency = options.latency;
  mo.stall = options.stall;
  mo.accepted_token = options.token;
  server::MockProviderService service(mo);
  try {
    service.start();
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitError;
  }
  out << "mock provider: " << service.base_url() << std::endl;
  wait();
  service.stop();
  return kExitOk;
}

}  // namespace oscqasm::cli
