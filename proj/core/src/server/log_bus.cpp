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

#include "oscqasm/server/log_bus.hpp"

#include <algorithm>

namespace oscqasm::server {

std::string_view to_string(LogLevel level) {
  switch (level) {
    case LogLevel::Debug: return "debug";
    case LogLevel::Info: return "info";
    case LogLevel::Notice: return "notice";
    case LogLevel::Warning: return "warning";
    case LogLevel::Error: return "error";
  }
  return "info";
}

void LogSubscription::push(const LogEvent& e) {
  {
    std::lock_guard lock(mu_);
    if (closed_) return;
    if (queue_.size() >= capacity_) {
      queue_.pop_front();
      ++dropped_;
    }
    queue_.push_back(e);
  }
  cv_.notify_one();
}

std::optional<LogEvent> LogSubscription::pop_locked() {
  if (dropped_ != 0) {
    LogEvent marker;
    marker.level = LogLevel::Warning;
    marker.line = "log overflow: " + std::to_string(dropped_) + " event(s) dropped";
    if (!queue_.empty()) {
      marker.ts_ms = queue_.front().ts_ms;
      marker.seq = queue_.front().seq;
    }
    dropped_ = 0;
    return marker;
  }
  if (queue_.empty()) return std::nullopt;
  LogEvent e = std::move(queue_.front());
  queue_.pop_front();
  return e;
}

std::optional<LogEvent> LogSubscription::next(std::chrono::milliseconds timeout) {
  std::unique_lock lock(mu_);
  cv_.wait_for(lock, timeout, [&] { return closed_ || dropped_ != 0 || !queue_.empty(); });
  return pop_locked();
}

std::vector<LogEvent> LogSubscription::drain() {
  std::lock_guard lock(mu_);
  std::vector<LogEvent> out;
  while (auto e = pop_locked()) out.push_back(std::move(*e));
  return out;
}

void LogSubscription::close() {
  {
    std::lock_guard lock(mu_);
    closed_ = true;
  }
  cv_.notify_all();
}

bool LogSubscription::closed() const {
  std::lock_guard lock(mu_);
  return closed_;
}

void LogBus::publish(LogLevel level, std::string line) {
  // Delivery happens under the bus lock so every consumer sees one global order.
  std::lock_guard lock(mu_);
  LogEvent e;
  e.seq = next_seq_++;
  const auto now = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  last_ts_ = std::max<std::int64_t>(last_ts_, now);
  e.ts_ms = last_ts_;
  e.level = level;
  e.line = std::move(line);

  for (const auto& sink : sinks_) sink(e);
  subscribers_.erase(std::remove_if(subscribers_.begin(), subscribers_.end(),
                                    [&](const std::weak_ptr<LogSubscription>& w) {
                                      const auto sub = w.lock();
                                      if (!sub || sub->closed()) return true;
                                      sub->push(e);
                                      return false;
                                    }),
                     subscribers_.end());
  recent_.push_back(std::move(e));
  if (recent_.size() > 256) recent_.pop_front();
}

std::shared_ptr<LogSubscription> LogBus::subscribe(std::size_t capacity) {
  std::shared_ptr<LogSubscription> sub(new LogSubscription(std::max<std::size_t>(capacity, 1)));
  std::lock_guard lock(mu_);
  subscribers_.push_back(sub);
  return sub;
}

void LogBus::add_sink(Sink sink) {
  std::lock_guard lock(mu_);
  sinks_.push_back(std::move(sink));
}

std::vector<LogEvent> LogBus::recent() const {
  std::lock_guard lock(mu_);
  return {recent_.begin(), recent_.end()};
}

}  // namespace oscqasm::server
