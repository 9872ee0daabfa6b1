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
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oscqasm::server {

enum class LogLevel { Debug, Info, Notice, Warning, Error };

std::string_view to_string(LogLevel level);

struct LogEvent {
  std::uint64_t seq = 0;
  std::int64_t ts_ms = 0;  // wall clock, milliseconds since epoch; never decreases
  LogLevel level = LogLevel::Info;
  std::string line;
};

class LogBus;

/// Bounded per-subscriber queue. When full, the oldest event is dropped and
/// the next read yields a warning marker announcing how many were lost.
class LogSubscription {
 public:
  std::optional<LogEvent> next(std::chrono::milliseconds timeout);
  std::vector<LogEvent> drain();
  void close();
  bool closed() const;

 private:
  friend class LogBus;
  explicit LogSubscription(std::size_t capacity) : capacity_(capacity) {}
  void push(const LogEvent& e);
  std::optional<LogEvent> pop_locked();

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<LogEvent> queue_;
  std::size_t capacity_;
  std::uint64_t dropped_ = 0;
  bool closed_ = false;
};

/// Ordered fan-out of log lines to sinks (synchronous callbacks) and
/// subscriptions (buffered).
class LogBus {
 public:
  using Sink = std::function<void(const LogEvent&)>;

  void publish(LogLevel level, std::string line);
  std::shared_ptr<LogSubscription> subscribe(std::size_t capacity = 4096);
  void add_sink(Sink sink);
  /// Copy of the most recent events (up to 256).
  std::vector<LogEvent> recent() const;

 private:
  mutable std::mutex mu_;
  std::uint64_t next_seq_ = 1;
  std::int64_t last_ts_ = 0;
  std::vector<Sink> sinks_;
  std::vector<std::weak_ptr<LogSubscription>> subscribers_;
  std::deque<LogEvent> recent_;
};

}  // namespace oscqasm::server
