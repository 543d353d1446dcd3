// Copyright 2026 The ssogate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

#include "ssogate/time.hpp"

namespace ssogate::store {

/// Memory-only map whose entries disappear after a fixed time-to-live.
/// Every operation is atomic with respect to the others.
template <typename T>
class ExpiringMap {
 public:
  explicit ExpiringMap(std::chrono::seconds ttl) : ttl_(ttl) {}

  void put(const std::string& key, T value, Instant now) {
    std::lock_guard lock(mu_);
    sweep(now);
    entries_[key] = Entry{std::move(value), now + ttl_};
  }

  std::optional<T> get(const std::string& key, Instant now) const {
    std::lock_guard lock(mu_);
    auto it = entries_.find(key);
    if (it == entries_.end() || it->second.expires_at <= now) return std::nullopt;
    return it->second.value;
  }

  /// Removes and returns the entry; at most one concurrent caller receives it.
  std::optional<T> take(const std::string& key, Instant now) {
    std::lock_guard lock(mu_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    Entry e = std::move(it->second);
    entries_.erase(it);
    if (e.expires_at <= now) return std::nullopt;
    return std::move(e.value);
  }

  void erase(const std::string& key) {
    std::lock_guard lock(mu_);
    entries_.erase(key);
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
  }

 private:
  struct Entry {
    T value;
    Instant expires_at;
  };

  void sweep(Instant now) {
    for (auto it = entries_.begin(); it != entries_.end();) {
      it = it->second.expires_at <= now ? entries_.erase(it) : std::next(it);
    }
  }

  std::chrono::seconds ttl_;
  mutable std::mutex mu_;
  std::map<std::string, Entry> entries_;
};

/// Single-use nonce registry scoped per issuing endpoint.
class NonceStore {
 public:
  explicit NonceStore(std::chrono::seconds retention = std::chrono::seconds{600}) : retention_(retention) {}

  /// Atomically records (scope, nonce). False if it was already recorded and
  /// has not aged out of the retention period.
  bool check_and_store(std::string_view scope, std::string_view nonce, Instant now);

  std::size_t size() const;

 private:
  std::chrono::seconds retention_;
  mutable std::mutex mu_;
  std::map<std::pair<std::string, std::string>, Instant> seen_;
  std::multimap<Instant, std::pair<std::string, std::string>> by_expiry_;
};

}  // namespace ssogate::store
