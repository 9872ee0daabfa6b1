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

#pragma once

#include <functional>
#include <iosfwd>

#include "args.hpp"
#include "oscqasm/server/log_bus.hpp"

namespace oscqasm::cli {

/// "HH:MM:SS.mmm level  line", local time.
std::string format_log_line(const server::LogEvent& event);

/// Runs the server (headless) or the control panel until `wait` returns.
/// Returns kExitError when the server or control panel cannot start.
int run_serve(const ServeOptions& options, std::ostream& out, std::ostream& err,
              const std::function<void()>& wait);

/// Runs the mock remote provider until `wait` returns.
int run_mock_provider(const MockProviderCliOptions& options, std::ostream& out, std::ostream& err,
                      const std::function<void()>& wait);

}  // namespace oscqasm::cli
