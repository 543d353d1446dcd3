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

#include <cstdio>
#include <map>
#include <mutex>
#include <shared_mutex>

#include "ssogate/error.hpp"
#include "ssogate/store/store.hpp"
#include "store_internal.hpp"

namespace ssogate::store {

namespace {

struct KindInfo {
  RecordKind kind;
  std::string_view name;
};

constexpr KindInfo kKinds[] = {
    {RecordKind::user, "user"},
    {RecordKind::role, "role"},
    {RecordKind::assignment, "assignment"},
    {RecordKind::revocation, "revocation"},
    {RecordKind::privilege, "privilege"},
    {RecordKind::binding, "binding"},
    {RecordKind::association, "association"},
};

class MemoryStore final : public Store {
 public:
  StoreRecord put(RecordKind kind, std::string_view key, std::string_view payload) override {
    std::unique_lock lock(mu_);
    return table_.put(kind, key, payload);
  }

  std::optional<StoreRecord> get(RecordKind kind, std::string_view key) const override {
    std::shared_lock lock(mu_);
    return table_.get(kind, key);
  }

  std::vector<StoreRecord> scan(RecordKind kind) const override {
    std::shared_lock lock(mu_);
    return table_.scan(kind);
  }

  bool erase(RecordKind kind, std::string_view key) override {
    std::unique_lock lock(mu_);
    return table_.erase(kind, key);
  }

  bool empty() const override {
    std::shared_lock lock(mu_);
    return table_.empty();
  }

 private:
  mutable std::shared_mutex mu_;
  RecordTable table_;
};

}  // namespace

std::string_view to_string(RecordKind kind) noexcept {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

RecordKind parse_kind(std::string_view name) {
  for (const auto& k : kKinds) {
    if (k.name == name) return k.kind;
  }
  fail(Errc::validation, "unknown-record-kind", "unknown record kind '" + std::string(name) + "'");
}

const std::vector<RecordKind>& all_kinds() {
  static const std::vector<RecordKind> kinds = [] {
    std::vector<RecordKind> v;
    for (const auto& k : kKinds) v.push_back(k.kind);
    return v;
  }();
  return kinds;
}

std::string sequence_key(std::uint64_t n) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%012llu", static_cast<unsigned long long>(n));
  return buf;
}

StoreRecord RecordTable::put(RecordKind kind, std::string_view key, std::string_view payload) {
  auto& slot = tables_[kind][std::string(key)];
  slot.kind = kind;
  slot.key = std::string(key);
  slot.payload = std::string(payload);
  slot.version += 1;
  return slot;
}

void RecordTable::restore(StoreRecord record) {
  auto key = record.key;
  auto kind = record.kind;
  tables_[kind][key] = std::move(record);
}

std::optional<StoreRecord> RecordTable::get(RecordKind kind, std::string_view key) const {
  auto t = tables_.find(kind);
  if (t == tables_.end()) return std::nullopt;
  auto it = t->second.find(std::string(key));
  if (it == t->second.end()) return std::nullopt;
  return it->second;
}

std::vector<StoreRecord> RecordTable::scan(RecordKind kind) const {
  std::vector<StoreRecord> out;
  auto t = tables_.find(kind);
  if (t == tables_.end()) return out;
  out.reserve(t->second.size());
  for (const auto& [key, rec] : t->second) out.push_back(rec);
  return out;
}

bool RecordTable::erase(RecordKind kind, std::string_view key) {
  auto t = tables_.find(kind);
  if (t == tables_.end()) return false;
  return t->second.erase(std::string(key)) > 0;
}

bool RecordTable::empty() const {
  for (const auto& [kind, table] : tables_) {
    if (!table.empty()) return false;
  }
  return true;
}

std::size_t RecordTable::size(RecordKind kind) const {
  auto t = tables_.find(kind);
  return t == tables_.end() ? 0 : t->second.size();
}

std::unique_ptr<Store> open_memory_store() { return std::make_unique<MemoryStore>(); }

std::unique_ptr<Store> open(const std::optional<std::filesystem::path>& dir, OpenOptions options) {
  if (!dir || dir->empty()) return open_memory_store();
  return open_store(*dir, std::move(options));
}

}  // namespace ssogate::store
