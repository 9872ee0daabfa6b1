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

#include "oscqasm/osc/codec.hpp"

#include <bit>
#include <cstring>
#include <sstream>

namespace oscqasm::osc {
namespace {

constexpr std::size_t padded(std::size_t n) { return (n + 3) & ~std::size_t{3}; }

void put_u32(Bytes& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

// NUL-terminated, zero-padded to a multiple of 4 (at least one NUL).
void put_string(Bytes& out, std::string_view s) {
  out.insert(out.end(), s.begin(), s.end());
  const std::size_t total = padded(s.size() + 1);
  out.insert(out.end(), total - s.size(), std::uint8_t{0});
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::size_t offset() const { return pos_; }
  bool at_end() const { return pos_ == data_.size(); }

  std::string read_string(const char* what) {
    const std::size_t start = pos_;
    std::size_t nul = start;
    while (nul < data_.size() && data_[nul] != 0) ++nul;
    if (nul == data_.size()) {
      throw CodecError(CodecErrc::Truncated,
                       std::string(what) + " at offset " + std::to_string(start) +
                           " is not NUL-terminated");
    }
    const std::size_t end = start + padded(nul - start + 1);
    if (end > data_.size()) {
      throw CodecError(CodecErrc::Truncated,
                       std::string(what) + " padding runs past end of datagram");
    }
    for (std::size_t i = nul; i < end; ++i) {
      if (data_[i] != 0) {
        throw CodecError(CodecErrc::BadPadding,
                         std::string(what) + " has non-zero padding at offset " +
                             std::to_string(i));
      }
    }
    pos_ = end;
    return std::string(reinterpret_cast<const char*>(data_.data() + start), nul - start);
  }

  std::uint32_t read_u32(const char* what) {
    if (data_.size() - pos_ < 4) {
      throw CodecError(CodecErrc::Truncated,
                       std::string(what) + " at offset " + std::to_string(pos_) +
                           " runs past end of datagram");
    }
    const auto* p = data_.data() + pos_;
    pos_ += 4;
    return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
           (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
  }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view to_string(CodecErrc code) {
  switch (code) {
    case CodecErrc::InvalidAddress: return "InvalidAddress";
    case CodecErrc::OversizeMessage: return "OversizeMessage";
    case CodecErrc::Truncated: return "Truncated";
    case CodecErrc::BadPadding: return "BadPadding";
    case CodecErrc::UnsupportedTag: return "UnsupportedTag";
    case CodecErrc::NotAMessage: return "NotAMessage";
    case CodecErrc::BundleNotSupported: return "BundleNotSupported";
  }
  return "CodecError";
}

char type_tag(const Arg& arg) {
  switch (arg.index()) {
    case 0: return 'i';
    case 1: return 'f';
    default: return 's';
  }
}

bool is_valid_address(std::string_view path) {
  if (path.size() < 2 || path.front() != '/') return false;
  for (const char c : path) {
    const auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || u == 0x7f) return false;
    switch (c) {
      case '#': case '*': case ',': case '?':
      case '[': case ']': case '{': case '}':
        return false;
      default:
        break;
    }
  }
  return true;
}

Bytes encode(const Message& msg, std::size_t max_size) {
  if (!is_valid_address(msg.address)) {
    throw CodecError(CodecErrc::InvalidAddress, "invalid OSC address '" + msg.address + "'");
  }
  std::string tags = ",";
  std::size_t size = padded(msg.address.size() + 1) + padded(msg.args.size() + 2);
  for (const auto& arg : msg.args) {
    tags.push_back(type_tag(arg));
    if (const auto* s = std::get_if<std::string>(&arg)) {
      if (s->find('\0') != std::string::npos) {
        throw CodecError(CodecErrc::InvalidAddress, "string argument contains NUL");
      }
      size += padded(s->size() + 1);
    } else {
      size += 4;
    }
  }
  if (size > max_size) {
    throw CodecError(CodecErrc::OversizeMessage,
                     "message of " + std::to_string(size) + " bytes exceeds limit of " +
                         std::to_string(max_size));
  }

  Bytes out;
  out.reserve(size);
  put_string(out, msg.address);
  put_string(out, tags);
  for (const auto& arg : msg.args) {
    if (const auto* i = std::get_if<std::int32_t>(&arg)) {
      put_u32(out, static_cast<std::uint32_t>(*i));
    } else if (const auto* f = std::get_if<float>(&arg)) {
      put_u32(out, std::bit_cast<std::uint32_t>(*f));
    } else {
      put_string(out, std::get<std::string>(arg));
    }
  }
  return out;
}

Message decode(std::span<const std::uint8_t> datagram) {
  if (datagram.size() < 8) {
    throw CodecError(CodecErrc::Truncated,
                     "datagram of " + std::to_string(datagram.size()) +
                         " bytes is shorter than the 8-byte minimum");
  }
  if (datagram[0] == '#') {
    static constexpr char kBundle[] = "#bundle";
    if (std::memcmp(datagram.data(), kBundle, sizeof kBundle) == 0) {
      throw CodecError(CodecErrc::BundleNotSupported, "OSC bundles are not supported");
    }
    throw CodecError(CodecErrc::NotAMessage, "datagram starts with '#' but is not a bundle");
  }
  if (datagram[0] != '/') {
    throw CodecError(CodecErrc::NotAMessage, "datagram does not start with '/'");
  }
  if (datagram.size() % 4 != 0) {
    throw CodecError(CodecErrc::BadPadding,
                     "datagram length " + std::to_string(datagram.size()) +
                         " is not a multiple of 4");
  }

  Reader in(datagram);
  Message msg;
  msg.address = in.read_string("address");
  if (in.at_end()) {
    throw CodecError(CodecErrc::Truncated, "missing type tag string");
  }
  const std::string tags = in.read_string("type tag string");
  if (tags.empty() || tags.front() != ',') {
    throw CodecError(CodecErrc::UnsupportedTag, "type tag string must begin with ','");
  }
  for (std::size_t k = 1; k < tags.size(); ++k) {
    const char t = tags[k];
    if (t != 'i' && t != 'f' && t != 's') {
      throw CodecError(CodecErrc::UnsupportedTag,
                       std::string("unsupported type tag '") + t + "'");
    }
  }
  msg.args.reserve(tags.size() - 1);
  for (std::size_t k = 1; k < tags.size(); ++k) {
    switch (tags[k]) {
      case 'i':
        msg.args.emplace_back(static_cast<std::int32_t>(in.read_u32("int32 argument")));
        break;
      case 'f':
        msg.args.emplace_back(std::bit_cast<float>(in.read_u32("float32 argument")));
        break;
      default:
        msg.args.emplace_back(in.read_string("string argument"));
        break;
    }
  }
  if (!in.at_end()) {
    throw CodecError(CodecErrc::BadPadding,
                     std::to_string(datagram.size() - in.offset()) +
                         " trailing bytes after last argument");
  }
  return msg;
}

std::string describe(const Message& msg, std::size_t max_string) {
  std::ostringstream os;
  os << msg.address << " ,";
  for (const auto& arg : msg.args) os << type_tag(arg);
  for (const auto& arg : msg.args) {
    os << ' ';
    if (const auto* i = std::get_if<std::int32_t>(&arg)) {
      os << *i;
    } else if (const auto* f = std::get_if<float>(&arg)) {
      os << *f;
    } else {
      const auto& s = std::get<std::string>(arg);
      os << '"';
      for (std::size_t k = 0; k < s.size() && k < max_string; ++k) {
        const char c = s[k];
        os << (c == '\n' ? ' ' : c);
      }
      if (s.size() > max_string) os << "...";
      os << '"';
    }
  }
  return os.str();
}

}  // namespace oscqasm::osc
