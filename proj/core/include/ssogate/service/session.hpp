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

#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "ssogate/crypto.hpp"
#include "ssogate/random.hpp"
#include "ssogate/rbac/types.hpp"
#include "ssogate/time.hpp"

namespace ssogate::service {

inline constexpr std::string_view kSessionCookie = "ssogate_session";
inline constexpr std::string_view kValidOpenIdUser = "VALID_OPENID_USER";

struct SessionToken {
  rbac::UserId user;
  std::string identity;
  std::set<std::string> groups;
  std::set<std::string> roles;  // snapshot taken at roles_at
  Instant issued_at{};
  Instant expires_at{};
  Instant roles_at{};

  friend bool operator==(const SessionToken&, const SessionToken&) = default;
};

/// Seals session tokens into cookie values: "v1." + base64url(iv | ciphertext | tag)
/// under AES-256-GCM. Any modification, expiry or key change reads as absent.
class SessionCodec {
 public:
  /// Throws Error(config, "invalid-server-key") unless the key is 32 bytes.
  explicit SessionCodec(Bytes key);

  std::string mint(const SessionToken& token, RandomSource& rng) const;
  std::optional<SessionToken> read(std::string_view cookie, Instant now) const;

  /// Accepts 64 hex digits or base64/base64url of 32 bytes.
  /// Throws Error(config, "invalid-server-key").
  static Bytes parse_key(std::string_view text);

 private:
  Bytes key_;
};

}  // namespace ssogate::service
