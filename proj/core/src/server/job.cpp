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

#include "oscqasm/server/job.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oscqasm/qasm/circuit.hpp"

namespace oscqasm::server {

JobRequest handle_qutune(const osc::Message& msg, const Endpoint& source,
                         const ServerConfig& config) {
  if (msg.address != kQuTunePath) {
    throw JobError("UnknownPath", "no handler for OSC path '" + msg.address + "'; send " +
                                      kQuTunePath);
  }
  if (msg.args.empty()) {
    throw JobError("MissingQasm", "/QuTune needs Qasm text as its first value");
  }
  if (msg.args.size() > 3) {
    throw JobError("BadArgType", "/QuTune takes 1 to 3 values (qasm, shots, backend), got " +
                                     std::to_string(msg.args.size()));
  }
  const auto* qasm = std::get_if<std::string>(&msg.args[0]);
  if (!qasm) throw JobError("BadArgType", "first value must be Qasm text");

  JobRequest req;
  req.qasm_source = *qasm;
  req.shots = config.default_shots;
  req.source = source;
  req.reply_addr = Endpoint{config.target_ip, config.send_port};
  req.received_at = std::chrono::system_clock::now();

  if (msg.args.size() >= 2) {
    std::int64_t shots = 0;
    if (const auto* i = std::get_if<std::int32_t>(&msg.args[1])) {
      shots = *i;
    } else if (const auto* f = std::get_if<float>(&msg.args[1])) {
      if (!std::isfinite(*f)) throw JobError("BadArgType", "number of shots must be finite");
      const double t = std::trunc(static_cast<double>(*f));
      shots = t > 1e12 ? std::int64_t{1'000'000'000'000} : static_cast<std::int64_t>(std::max(t, -1.0));
    } else {
      throw JobError("BadArgType", "second value must be the number of shots (int or float)");
    }
    if (shots < 1 || static_cast<std::uint64_t>(shots) > sim::kMaxShots) {
      throw JobError("ShotsOutOfRange", "shots must be between 1 and " +
                                            std::to_string(sim::kMaxShots) + ", got " +
                                            std::to_string(shots));
    }
    req.shots = static_cast<std::uint64_t>(shots);
  }
  if (msg.args.size() == 3) {
    const auto* backend = std::get_if<std::string>(&msg.args[2]);
    if (!backend) throw JobError("BadArgType", "third value must be a backend name");
    if (!backend->empty()) req.backend_name = *backend;
  }
  return req;
}

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

sim::Counts dispatch(const JobRequest& request, const ExecutionContext& ctx,
                     std::size_t& num_qubits) {
  const BackendDescriptor* backend = ctx.registry->find(request.backend_name);
  if (!backend) {
    throw JobError("UnknownBackend", "unknown backend '" + request.backend_name +
                                         "'; available: " + join(ctx.registry->names()));
  }
  const qasm::CircuitIR circuit = qasm::compile(request.qasm_source);
  num_qubits = circuit.num_qubits;
  if (circuit.measure_count() == 0) {
    throw JobError("NoMeasurements",
                   "circuit has no measurement gates; measure at least one qubit to get counts");
  }
  if (circuit.num_qubits > backend->limits.max_qubits) {
    throw sim::SimError(sim::SimErrc::TooManyQubits,
                        "circuit uses " + std::to_string(circuit.num_qubits) + " qubits but '" +
                            backend->name + "' allows at most " +
                            std::to_string(backend->limits.max_qubits));
  }
  if (request.shots > backend->limits.max_shots) {
    throw JobError("ShotsOutOfRange", "backend '" + backend->name + "' accepts at most " +
                                          std::to_string(backend->limits.max_shots) + " shots");
  }

  if (backend->kind == BackendKind::LocalSimulator) {
    sim::RunOptions opts;
    opts.max_qubits = backend->limits.max_qubits;
    opts.seed = ctx.seed;
    return sim::run(circuit, request.shots, opts);
  }

  if (!ctx.provider) {
    throw RemoteError("remote", "no remote provider is configured for '" + backend->name + "'");
  }
  if (!ctx.credentials) {
    throw RemoteError("AuthFailed", "remote backend '" + backend->name +
                                        "' requires credentials (token) to be configured");
  }
  RemoteSubmission sub;
  sub.qasm = request.qasm_source;
  sub.shots = request.shots;
  sub.backend = backend->name;
  sub.credentials = *ctx.credentials;
  sub.seed = ctx.seed;
  return submit_remote(*ctx.provider, sub, ctx.poll, ctx.cancelled);
}

}  // namespace

JobResult execute(const JobRequest& request, const ExecutionContext& context) {
  JobResult result;
  const auto start = std::chrono::steady_clock::now();
  try {
    result.counts = dispatch(request, context, result.num_qubits);
  } catch (const Error& e) {
    result.error = JobFailure{e.code(), e.message()};
  } catch (const std::bad_alloc&) {
    result.error = JobFailure{"OutOfMemory", "not enough memory to simulate this circuit"};
  } catch (const std::exception& e) {
    result.error = JobFailure{"InternalError", e.what()};
  }
  result.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return result;
}

std::string counts_to_json(const sim::Counts& counts) {
  std::vector<std::pair<std::string, std::uint64_t>> items(counts.begin(), counts.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [key, n] : items) {
    if (!first) os << ", ";
    first = false;
    os << '"';
    for (const char c : key) {
      if (c == '"' || c == '\\') os << '\\';
      os << c;
    }
    os << "\": " << n;
  }
  os << '}';
  return os.str();
}

osc::Message error_message(const std::string& code, const std::string& message) {
  return osc::Message{kErrorPath, {code + ": " + message}};
}

std::vector<osc::Message> reply_messages(const JobResult& result, const JobRequest& request) {
  if (!result.ok()) {
    const auto& err = result.error ? *result.error : JobFailure{"InternalError", "empty result"};
    return {error_message(err.code, err.message)};
  }
  return {
      osc::Message{kInfoPath,
                   {"job " + std::to_string(request.id) + " done in " +
                    std::to_string(result.elapsed.count()) + " ms"}},
      osc::Message{kCountsPath, {counts_to_json(*result.counts)}},
  };
}

}  // namespace oscqasm::server
