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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ssogate::store {

/// Record families. Each lives in its own `<dir>/<kind>.log`.
enum class RecordKind {
  user,
  role,
  assignment,
  revocation,
  privilege,
  binding,
  association,
};

std::string_view to_string(RecordKind kind) noexcept;
/// Throws Error(validation, "unknown-record-kind").
RecordKind parse_kind(std::string_view name);
const std::vector<RecordKind>& all_kinds();

struct StoreRecord {
  RecordKind kind{};
  std::string key;
  std::string payload;  // canonical serialized form
  std::uint64_t version = 0;

  friend bool operator==(const StoreRecord&, const StoreRecord&) = default;
};

/// Keyed record storage. Read-your-writes within one handle; scans are in key order.
/// Implementations are safe to share across threads.
class Store {
 public:
  virtual ~Store() = default;

  /// Inserts or overwrites; returns the stored record with its new version.
  virtual StoreRecord put(RecordKind kind, std::string_view key, std::string_view payload) = 0;
  virtual std::optional<StoreRecord> get(RecordKind kind, std::string_view key) const = 0;
  virtual std::vector<StoreRecord> scan(RecordKind kind) const = 0;
  /// Returns whether a record was removed.
  virtual bool erase(RecordKind kind, std::string_view key) = 0;
  virtual bool empty() const = 0;
};

struct OpenOptions {
  /// Receives recoverable problems such as a truncated trailing record.
  std::function<void(std::string_view)> warn;
  /// Compact a kind's log on open once it holds this many superseded lines.
  std::size_t compaction_threshold = 1024;
  bool fsync_writes = false;
};

std::unique_ptr<Store> open_memory_store();

/// Opens (creating if needed) a directory store and takes its LOCK file.
/// Throws Error(storage) when the directory is unusable and Error(locked)
/// when another handle owns it.
std::unique_ptr<Store> open_store(const std::filesystem::path& dir, OpenOptions options = {});

/// In-memory when `dir` is empty, otherwise the directory store.
std::unique_ptr<Store> open(const std::optional<std::filesystem::path>& dir, OpenOptions options = {});

/// Zero-padded so lexicographic key order equals numeric order.
std::string sequence_key(std::uint64_t n);

}  // namespace ssogate::store
