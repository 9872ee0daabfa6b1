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

#include "client.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "oscqasm/osc/codec.hpp"
#include "oscqasm/server/job.hpp"
#include "oscqasm/server/net.hpp"

namespace oscqasm::cli {

int run_send(const SendOptions& options, std::ostream& out, std::ostream& err) {
  std::ifstream in(options.file, std::ios::binary);
  if (!in) {
    err << "FileNotFound: cannot read '" << options.file << "'\n";
    return kExitUsage;
  }
  std::ostringstream buf;
  buf << in.rdbuf();

  osc::Message request{server::kQuTunePath, {buf.str()}};
  if (options.shots || options.backend) {
    request.args.emplace_back(options.shots.value_or(1024));
  }
  if (options.backend) request.args.emplace_back(*options.backend);

  try {
    const bool v6 = options.host.find(':') != std::string::npos;
    const auto sock = server::UdpSocket::bind({v6 ? "::" : "0.0.0.0", options.lport});
    sock.send_to(osc::encode(request), {options.host, options.rport});

    const auto deadline = std::chrono::steady_clock::now() + options.timeout;
    for (;;) {
      const auto left = std::chrono::ceil<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) break;
      const auto d = sock.receive(left);
      if (!d) continue;
      osc::Message reply;
      try {
        reply = osc::decode(d->payload);
      } catch (const osc::CodecError&) {
        continue;
      }
      const auto* text = reply.args.empty() ? nullptr : std::get_if<std::string>(&reply.args[0]);
      if (!text) continue;
      if (reply.address == server::kCountsPath) {
        out << *text << '\n';
        return kExitOk;
      }
      if (reply.address == server::kErrorPath) {
        err << *text << '\n';
        return kExitError;
      }
      if (reply.address == server::kInfoPath) err << "info: " << *text << '\n';
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitError;
  }
  err << "Timeout: no reply from " << server::Endpoint{options.host, options.rport}.to_string()
      << " within " << options.timeout.count() / 1000.0 << " s\n";
  return kExitTimeout;
}

}  // namespace oscqasm::cli
