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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ssogate/bigint.hpp"
#include "ssogate/openid/message.hpp"
#include "ssogate/openid/signing.hpp"

namespace ssogate::openid {

/// Diffie-Hellman group. Only the modulus is trusted to be prime.
struct DhParams {
  BigInt modulus;
  BigInt generator;

  /// The OpenID default group (1024-bit modulus, generator 2).
  static const DhParams& openid_default();
  bool is_default() const;
  /// Throws Error(validation, "invalid-dh-params") unless 1 < g < p.
  void validate() const;
};

struct DhKeyPair {
  BigInt private_key;
  BigInt public_key;
};

/// Private key drawn uniformly from [1, p-2].
DhKeyPair dh_generate(const DhParams& params, RandomSource& rng);
/// Key pair for a caller-chosen private key; throws if outside [1, p-2].
DhKeyPair dh_from_private(const DhParams& params, const BigInt& private_key);
/// their_public^private mod p. Throws Error(protocol, "dh-public-out-of-range")
/// unless 1 < their_public < p.
BigInt dh_shared(const BigInt& private_key, const BigInt& their_public, const DhParams& params);

/// hash(btwoc(Z)) XOR mac_key. Throws Error(validation, "mac-key-length") on
/// a length mismatch. Unblinding is the same operation.
Bytes blind_mac_key(const BigInt& shared, std::span<const std::uint8_t> mac_key, crypto::Digest session_hash);
Bytes unblind_mac_key(const BigInt& shared, std::span<const std::uint8_t> enc_mac_key, crypto::Digest session_hash);

enum class SessionType { dh_sha1, dh_sha256 };

std::string_view to_string(SessionType t) noexcept;
std::optional<SessionType> parse_session_type(std::string_view name) noexcept;
crypto::Digest digest_of(SessionType t) noexcept;
/// The session type whose hash matches the association type's MAC length.
SessionType session_for(AssocType t) noexcept;

/// What a provider accepts; the first pair is what it suggests on refusal.
struct AssociationPolicy {
  std::vector<std::pair<AssocType, SessionType>> supported{{AssocType::hmac_sha256, SessionType::dh_sha256},
                                                           {AssocType::hmac_sha1, SessionType::dh_sha1}};
  std::chrono::seconds lifetime{3600};
  bool refuse_all = false;

  bool supports(AssocType a, SessionType s) const;
};

/// Relying-party half: the pending request and its ephemeral key.
struct AssociationRequest {
  AssocType assoc_type = AssocType::hmac_sha256;
  SessionType session_type = SessionType::dh_sha256;
  DhParams params;
  DhKeyPair consumer;

  Message to_message() const;
};

AssociationRequest make_association_request(AssocType assoc, SessionType session, const DhParams& params,
                                            RandomSource& rng);

/// A provider's refusal, carrying the type pair it offered instead (if any).
struct NegotiationError {
  std::string message;
  std::optional<AssocType> suggested_assoc;
  std::optional<SessionType> suggested_session;
};

/// Parses the response. Returns the association, or the negotiation error
/// when the provider answered "unsupported-type". Throws Error(protocol) on
/// anything malformed.
std::variant<Association, NegotiationError> finish_association(const AssociationRequest& request,
                                                              const Message& response, Instant now);

/// Provider half.
struct AssociationGrant {
  Message response;
  std::optional<Association> association;  // absent when refused
  bool client_error = false;               // malformed request: HTTP 400
};

AssociationGrant answer_association(const Message& request, const AssociationPolicy& policy, RandomSource& rng,
                                    Instant now);

/// Handle format: base64 of 16 random bytes.
std::string new_association_handle(RandomSource& rng);

}  // namespace ssogate::openid
