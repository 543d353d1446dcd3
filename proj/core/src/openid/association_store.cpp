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

#include "ssogate/openid/association_store.hpp"

#include <json.hpp>

#include "ssogate/error.hpp"

namespace ssogate::openid {

namespace {

using nlohmann::json;

std::string encode(const Association& a, std::string_view server) {
  return json{{"handle", a.handle},
              {"mac_key", crypto::base64_encode(a.mac_key)},
              {"type", std::string(to_string(a.type))},
              {"issued_at", a.issued_at.time_since_epoch().count()},
              {"lifetime", a.lifetime.count()},
              {"server", std::string(server)}}
      .dump();
}

}  // namespace

AssociationStore::AssociationStore(store::Store* backing) : backing_(backing) {
  if (!backing_) return;
  for (const auto& rec : backing_->scan(store::RecordKind::association)) {
    try {
      auto j = json::parse(rec.payload);
      auto key = crypto::base64_decode(j.at("mac_key").get<std::string>());
      auto type = parse_assoc_type(j.at("type").get<std::string>());
      if (!key || !type) continue;
      Association a{j.at("handle").get<std::string>(), *key, *type,
                    Instant(std::chrono::seconds{j.at("issued_at").get<long long>()}),
                    std::chrono::seconds{j.at("lifetime").get<long long>()}};
      std::string handle = a.handle;
      entries_[handle] = Entry{std::move(a), j.at("server").get<std::string>()};
    } catch (const json::exception&) {
      // Skip unreadable entries; the association is simply renegotiated.
    }
  }
}

void AssociationStore::put(const Association& assoc, std::string_view server_url) {
  std::lock_guard lock(mu_);
  if (backing_) backing_->put(store::RecordKind::association, assoc.handle, encode(assoc, server_url));
  entries_[assoc.handle] = Entry{assoc, std::string(server_url)};
}

std::optional<Association> AssociationStore::get(std::string_view handle, Instant now) const {
  std::lock_guard lock(mu_);
  auto it = entries_.find(handle);
  if (it == entries_.end() || it->second.assoc.expired(now)) return std::nullopt;
  return it->second.assoc;
}

std::optional<Association> AssociationStore::best_for(std::string_view server_url, Instant now) const {
  std::lock_guard lock(mu_);
  const Association* best = nullptr;
  for (const auto& [handle, e] : entries_) {
    if (e.server_url != server_url || e.assoc.expired(now)) continue;
    if (!best || e.assoc.expires_at() > best->expires_at()) best = &e.assoc;
  }
  if (!best) return std::nullopt;
  return *best;
}

void AssociationStore::expire(std::string_view handle) {
  std::lock_guard lock(mu_);
  auto it = entries_.find(handle);
  if (it == entries_.end()) return;
  entries_.erase(it);
  if (backing_) backing_->erase(store::RecordKind::association, handle);
}

std::size_t AssociationStore::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

}  // namespace ssogate::openid
