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

#include "oscqasm/server/net.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace oscqasm::server {
namespace {

struct SockAddr {
  sockaddr_storage storage{};
  socklen_t len = 0;
  int family() const { return storage.ss_family; }
};

std::optional<SockAddr> to_sockaddr(const Endpoint& ep) {
  SockAddr out;
  auto* v4 = reinterpret_cast<sockaddr_in*>(&out.storage);
  if (::inet_pton(AF_INET, ep.ip.c_str(), &v4->sin_addr) == 1) {
    v4->sin_family = AF_INET;
    v4->sin_port = htons(ep.port);
    out.len = sizeof(sockaddr_in);
    return out;
  }
  out.storage = {};
  auto* v6 = reinterpret_cast<sockaddr_in6*>(&out.storage);
  if (::inet_pton(AF_INET6, ep.ip.c_str(), &v6->sin6_addr) == 1) {
    v6->sin6_family = AF_INET6;
    v6->sin6_port = htons(ep.port);
    out.len = sizeof(sockaddr_in6);
    return out;
  }
  return std::nullopt;
}

Endpoint from_sockaddr(const sockaddr_storage& ss) {
  char buf[INET6_ADDRSTRLEN] = {};
  if (ss.ss_family == AF_INET) {
    const auto* v4 = reinterpret_cast<const sockaddr_in*>(&ss);
    ::inet_ntop(AF_INET, &v4->sin_addr, buf, sizeof buf);
    return Endpoint{buf, ntohs(v4->sin_port)};
  }
  const auto* v6 = reinterpret_cast<const sockaddr_in6*>(&ss);
  ::inet_ntop(AF_INET6, &v6->sin6_addr, buf, sizeof buf);
  return Endpoint{buf, ntohs(v6->sin6_port)};
}

std::string errno_text() { return std::strerror(errno); }

}  // namespace

std::string Endpoint::to_string() const {
  if (ip.find(':') != std::string::npos) return "[" + ip + "]:" + std::to_string(port);
  return ip + ":" + std::to_string(port);
}

UdpSocket::~UdpSocket() {
  if (fd_ >= 0) ::close(fd_);
}

UdpSocket::UdpSocket(UdpSocket&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

UdpSocket& UdpSocket::operator=(UdpSocket&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = other.fd_;
    other.fd_ = -1;
  }
  return *this;
}

UdpSocket UdpSocket::bind(const Endpoint& local) {
  const auto addr = to_sockaddr(local);
  if (!addr) throw NetError("BindFailure", "'" + local.ip + "' is not an IP address");
  const int fd = ::socket(addr->family(), SOCK_DGRAM | SOCK_CLOEXEC, 0);
  if (fd < 0) throw NetError("BindFailure", "socket(): " + errno_text());
  UdpSocket sock(fd);
  if (addr->family() == AF_INET6) {
    const int on = 1;
    ::setsockopt(fd, IPPROTO_IPV6, IPV6_V6ONLY, &on, sizeof on);
  }
  if (::bind(fd, reinterpret_cast<const sockaddr*>(&addr->storage), addr->len) != 0) {
    throw NetError("BindFailure", "cannot bind UDP " + local.to_string() + ": " + errno_text());
  }
  return sock;
}

UdpSocket UdpSocket::for_destination(const std::string& family_hint) {
  const int family = family_hint.find(':') != std::string::npos ? AF_INET6 : AF_INET;
  const int fd = ::socket(family, SOCK_DGRAM | SOCK_CLOEXEC, 0);
  if (fd < 0) throw NetError("SendFailure", "socket(): " + errno_text());
  return UdpSocket(fd);
}

Endpoint UdpSocket::local_endpoint() const {
  sockaddr_storage ss{};
  socklen_t len = sizeof ss;
  if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&ss), &len) != 0) return {};
  return from_sockaddr(ss);
}

void UdpSocket::send_to(std::span<const std::uint8_t> payload, const Endpoint& destination) const {
  const auto addr = to_sockaddr(destination);
  if (!addr) throw NetError("SendFailure", "'" + destination.ip + "' is not an IP address");
  const ssize_t n = ::sendto(fd_, payload.data(), payload.size(), 0,
                             reinterpret_cast<const sockaddr*>(&addr->storage), addr->len);
  if (n < 0 || static_cast<std::size_t>(n) != payload.size()) {
    throw NetError("SendFailure", "sendto " + destination.to_string() + ": " + errno_text());
  }
}

std::optional<Datagram> UdpSocket::receive(std::chrono::milliseconds timeout) const {
  pollfd pfd{fd_, POLLIN, 0};
  const int ready = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
  if (ready <= 0 || !(pfd.revents & POLLIN)) return std::nullopt;
  Datagram d;
  d.payload.resize(65536);
  sockaddr_storage ss{};
  socklen_t len = sizeof ss;
  const ssize_t n = ::recvfrom(fd_, d.payload.data(), d.payload.size(), 0,
                               reinterpret_cast<sockaddr*>(&ss), &len);
  if (n < 0) return std::nullopt;
  d.payload.resize(static_cast<std::size_t>(n));
  d.source = from_sockaddr(ss);
  return d;
}

bool is_ip_literal(const std::string& ip) { return to_sockaddr(Endpoint{ip, 0}).has_value(); }

bool is_loopback(const std::string& ip) {
  in_addr v4{};
  if (::inet_pton(AF_INET, ip.c_str(), &v4) == 1) return (ntohl(v4.s_addr) >> 24) == 127;
  in6_addr v6{};
  if (::inet_pton(AF_INET6, ip.c_str(), &v6) == 1) return IN6_IS_ADDR_LOOPBACK(&v6);
  return false;
}

std::optional<std::string> primary_adapter_ip() {
  const int fd = ::socket(AF_INET, SOCK_DGRAM | SOCK_CLOEXEC, 0);
  if (fd < 0) return std::nullopt;
  UdpSocket guard(fd);
  // connect() on UDP only selects a route; nothing goes on the wire.
  sockaddr_in probe{};
  probe.sin_family = AF_INET;
  probe.sin_port = htons(53);
  ::inet_pton(AF_INET, "8.8.8.8", &probe.sin_addr);
  if (::connect(fd, reinterpret_cast<const sockaddr*>(&probe), sizeof probe) != 0) {
    return std::nullopt;
  }
  const Endpoint local = guard.local_endpoint();
  if (local.ip.empty() || local.ip == "0.0.0.0" || is_loopback(local.ip)) return std::nullopt;
  return local.ip;
}

}  // namespace oscqasm::server
