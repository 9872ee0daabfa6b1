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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "oscqasm/error.hpp"

namespace oscqasm::osc {

/// Largest UDP payload over IPv4.
inline constexpr std::size_t kMaxDatagramSize = 65507;

enum class CodecErrc {
  InvalidAddress,
  OversizeMessage,
  Truncated,
  BadPadding,
  UnsupportedTag,
  NotAMessage,
  BundleNotSupported,
};

std::string_view to_string(CodecErrc code);

class CodecError : public Error {
 public:
  CodecError(CodecErrc code, std::string message)
      : Error(std::string(to_string(code)), std::move(message)), errc_(code) {}
  CodecErrc errc() const noexcept { return errc_; }

 private:
  CodecErrc errc_;
};

/// One OSC argument. Only the `i`, `f` and `s` typetags are supported.
/// Strings are raw bytes (no encoding is assumed) and may not contain NUL.
using Arg = std::variant<std::int32_t, float, std::string>;

char type_tag(const Arg& arg);

struct Message {
  std::string address;
  std::vector<Arg> args;

  bool operator==(const Message&) const = default;
};

using Bytes = std::vector<std::uint8_t>;

/// True when `path` is acceptable as the address of an emitted message:
/// leading '/', at least two characters, no whitespace, NUL, or OSC pattern
/// characters.
bool is_valid_address(std::string_view path);

/// Serializes `msg` per OSC 1.0. The result is always 4-byte aligned.
/// Throws CodecError{InvalidAddress} or CodecError{OversizeMessage}.
Bytes encode(const Message& msg, std::size_t max_size = kMaxDatagramSize);

/// Parses one OSC message. Never reads outside `datagram`; every malformed
/// input raises a CodecError.
Message decode(std::span<const std::uint8_t> datagram);

/// Human-readable rendering for logs, e.g. `/QuTune ,sis "OPENQASM..." 1024 "qasm_simulator"`.
std::string describe(const Message& msg, std::size_t max_string = 40);

}  // namespace oscqasm::osc
