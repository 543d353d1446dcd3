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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssogate/crypto.hpp"
#include "ssogate/openid/message.hpp"
#include "ssogate/time.hpp"

namespace ssogate::openid {

enum class AssocType { hmac_sha1, hmac_sha256 };

std::string_view to_string(AssocType t) noexcept;
std::optional<AssocType> parse_assoc_type(std::string_view name) noexcept;
crypto::Digest digest_of(AssocType t) noexcept;
inline std::size_t mac_key_length(AssocType t) noexcept { return crypto::digest_length(digest_of(t)); }

/// Shared MAC key between a relying party and a provider.
struct Association {
  std::string handle;
  Bytes mac_key;
  AssocType type = AssocType::hmac_sha256;
  Instant issued_at{};
  std::chrono::seconds lifetime{0};

  Instant expires_at() const { return issued_at + lifetime; }
  bool expired(Instant now) const { return now >= expires_at(); }

  /// Throws Error(validation, "invalid-association") when the key length does
  /// not match the type or the handle is not printable ASCII of at most 255 bytes.
  void validate() const;
};

/// Field names covered by a signature, in signing order.
class SignedFieldList {
 public:
  SignedFieldList() = default;
  explicit SignedFieldList(std::vector<std::string> names) : names_(std::move(names)) {}

  /// Parses the comma-separated "signed" field value.
  static SignedFieldList parse(std::string_view joined);
  std::string join() const;

  const std::vector<std::string>& names() const { return names_; }
  bool contains(std::string_view name) const;

 private:
  std::vector<std::string> names_;
};

/// base64(HMAC(mac_key, kv_encode(signed fields in listed order))).
/// Throws Error(protocol, "missing-signed-field") if a listed field is absent.
std::string sign(const Message& msg, const Association& assoc, const SignedFieldList& signed_fields);

/// Sets assoc_handle, signed and sig on `msg`.
void sign_in_place(Message& msg, const Association& assoc, const SignedFieldList& signed_fields);

/// Recomputes the signature named by the message's "signed" field and
/// compares it to "sig" in constant time. False on any missing piece.
bool verify_signature(const Message& msg, const Association& assoc);

/// Replay-protection token: second-resolution UTC timestamp plus salt.
struct Nonce {
  Instant timestamp{};
  std::string salt;

  /// "2009-07-04T10:00:00Z" followed by the salt.
  std::string str() const;
  /// Throws Error(protocol, "invalid-nonce") if no leading timestamp parses.
  static Nonce parse(std::string_view text);
};

inline constexpr std::size_t kNonceSaltLength = 6;
inline constexpr std::string_view kNonceAlphabet =
    "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";

Nonce generate_nonce(Instant now, RandomSource& rng);

}  // namespace ssogate::openid
