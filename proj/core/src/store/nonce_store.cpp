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

#include "ssogate/store/ttl.hpp"

namespace ssogate::store {

bool NonceStore::check_and_store(std::string_view scope, std::string_view nonce, Instant now) {
  std::lock_guard lock(mu_);
  while (!by_expiry_.empty() && by_expiry_.begin()->first <= now) {
    seen_.erase(by_expiry_.begin()->second);
    by_expiry_.erase(by_expiry_.begin());
  }
  auto key = std::make_pair(std::string(scope), std::string(nonce));
  auto [it, inserted] = seen_.emplace(key, now + retention_);
  if (!inserted) return false;
  by_expiry_.emplace(now + retention_, std::move(key));
  return true;
}

std::size_t NonceStore::size() const {
  std::lock_guard lock(mu_);
  return seen_.size();
}

}  // namespace ssogate::store
