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

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oscqasm/error.hpp"

namespace oscqasm::server {

struct Endpoint {
  std::string ip;
  std::uint16_t port = 0;

  std::string to_string() const;
  bool operator==(const Endpoint&) const = default;
};

class NetError : public Error {
 public:
  using Error::Error;
};

struct Datagram {
  std::vector<std::uint8_t> payload;
  Endpoint source;
};

/// Owning wrapper around a POSIX UDP socket (IPv4 or IPv6 by address family
/// of the bound/target address).
class UdpSocket {
 public:
  UdpSocket() = default;
  ~UdpSocket();
  UdpSocket(UdpSocket&& other) noexcept;
  UdpSocket& operator=(UdpSocket&& other) noexcept;
  UdpSocket(const UdpSocket&) = delete;
  UdpSocket& operator=(const UdpSocket&) = delete;

  /// Binds exactly `local` (port 0 picks an ephemeral port). No
  /// SO_REUSEADDR, so a busy port raises NetError{"BindFailure"}.
  static UdpSocket bind(const Endpoint& local);
  /// Unbound socket able to reach `family_hint`'s address family.
  static UdpSocket for_destination(const std::string& family_hint);

  bool valid() const noexcept { return fd_ >= 0; }
  int native_handle() const noexcept { return fd_; }
  Endpoint local_endpoint() const;

  /// Throws NetError{"SendFailure"}.
  void send_to(std::span<const std::uint8_t> payload, const Endpoint& destination) const;
  /// Waits up to `timeout`. Returns nullopt on timeout.
  std::optional<Datagram> receive(std::chrono::milliseconds timeout) const;

 private:
  friend std::optional<std::string> primary_adapter_ip();
  explicit UdpSocket(int fd) : fd_(fd) {}
  int fd_ = -1;
};

bool is_loopback(const std::string& ip);
bool is_ip_literal(const std::string& ip);

/// Address of the adapter the OS would use for outbound traffic, found by
/// connecting a UDP socket toward a public address (no packet is sent).
std::optional<std::string> primary_adapter_ip();

}  // namespace oscqasm::server
