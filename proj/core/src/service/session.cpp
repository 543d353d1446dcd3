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

#include "ssogate/service/session.hpp"

#include <json.hpp>

#include "ssogate/error.hpp"

namespace ssogate::service {

namespace {

using nlohmann::json;

constexpr std::string_view kPrefix = "v1.";
constexpr std::string_view kAad = "ssogate-session-v1";

}  // namespace

SessionCodec::SessionCodec(Bytes key) : key_(std::move(key)) {
  if (key_.size() != crypto::kAeadKeyLength) {
    fail(Errc::config, "invalid-server-key", "server key must be 32 bytes");
  }
}

std::string SessionCodec::mint(const SessionToken& token, RandomSource& rng) const {
  json j = {{"u", token.user.value},
            {"id", token.identity},
            {"g", token.groups},
            {"r", token.roles},
            {"iat", token.issued_at.time_since_epoch().count()},
            {"exp", token.expires_at.time_since_epoch().count()},
            {"rat", token.roles_at.time_since_epoch().count()}};
  std::string plain = j.dump();
  Bytes sealed = crypto::aead_seal(key_, crypto::as_bytes(plain), crypto::as_bytes(kAad), rng);
  return std::string(kPrefix) + crypto::base64url_encode(sealed);
}

std::optional<SessionToken> SessionCodec::read(std::string_view cookie, Instant now) const {
  if (cookie.substr(0, kPrefix.size()) != kPrefix) return std::nullopt;
  auto sealed = crypto::base64url_decode(cookie.substr(kPrefix.size()));
  if (!sealed) return std::nullopt;
  auto plain = crypto::aead_open(key_, *sealed, crypto::as_bytes(kAad));
  if (!plain) return std::nullopt;
  try {
    json j = json::parse(plain->begin(), plain->end());
    SessionToken t;
    t.user = rbac::UserId{j.at("u").get<std::uint64_t>()};
    t.identity = j.at("id").get<std::string>();
    t.groups = j.at("g").get<std::set<std::string>>();
    t.roles = j.at("r").get<std::set<std::string>>();
    t.issued_at = Instant{std::chrono::seconds{j.at("iat").get<std::int64_t>()}};
    t.expires_at = Instant{std::chrono::seconds{j.at("exp").get<std::int64_t>()}};
    t.roles_at = Instant{std::chrono::seconds{j.at("rat").get<std::int64_t>()}};
    if (now >= t.expires_at) return std::nullopt;
    return t;
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

Bytes SessionCodec::parse_key(std::string_view text) {
  std::optional<Bytes> key;
  if (text.size() == 64) key = crypto::hex_decode(text);
  if (!key) key = crypto::base64_decode(text);
  if (!key) key = crypto::base64url_decode(text);
  if (!key || key->size() != crypto::kAeadKeyLength) {
    fail(Errc::config, "invalid-server-key", "server key must be 64 hex digits or base64 of 32 bytes");
  }
  return *key;
}

}  // namespace ssogate::service
