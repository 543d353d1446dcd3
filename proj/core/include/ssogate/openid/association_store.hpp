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

#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "ssogate/openid/signing.hpp"
#include "ssogate/store/store.hpp"

namespace ssogate::openid {

/// Associations keyed by handle, each tagged with the provider endpoint it
/// belongs to. Every operation is individually atomic. With a backing store
/// the associations survive restarts (the relying party's "smart mode" storage).
class AssociationStore {
 public:
  explicit AssociationStore(store::Store* backing = nullptr);

  /// Last writer wins for a given handle.
  void put(const Association& assoc, std::string_view server_url = {});
  /// Absent when unknown or expired at `now`.
  std::optional<Association> get(std::string_view handle, Instant now) const;
  /// Freshest unexpired association for `server_url`.
  std::optional<Association> best_for(std::string_view server_url, Instant now) const;
  /// Idempotent.
  void expire(std::string_view handle);
  std::size_t size() const;

 private:
  struct Entry {
    Association assoc;
    std::string server_url;
  };

  store::Store* backing_;
  mutable std::mutex mu_;
  std::map<std::string, Entry, std::less<>> entries_;
};

}  // namespace ssogate::openid
