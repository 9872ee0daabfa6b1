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

#include <iosfwd>

#include "args.hpp"

namespace oscqasm::cli {

/// Sends one `/QuTune` request and waits for its terminal reply. `/counts`
/// payloads go to `out`; `/info` and `/error` payloads go to `err`.
/// Returns kExitOk on counts, kExitError on an `/error` reply or local
/// failure, kExitUsage when the file cannot be read, kExitTimeout when no
/// terminal reply arrives in time.
int run_send(const SendOptions& options, std::ostream& out, std::ostream& err);

}  // namespace oscqasm::cli
