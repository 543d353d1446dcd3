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

#include "ssogate/openid/association.hpp"

#include <openssl/crypto.h>

#include <charconv>

#include "ssogate/error.hpp"
#include "ssogate/openid/btwoc.hpp"

namespace ssogate::openid {

namespace {

constexpr std::string_view kDefaultModulusHex =
    "DCF93A0B883972EC0E19989AC5A2CE310E1D37717E8D9571BB7623731866E61EF75A2E27898B057F9891C2E27A639C3F29B60814581CD3B2"
    "CA3986D2683705577D45C2E7E52DC81C7A171876E5CEA74B1448BFDFAF18828EFD2519F14E45E3826634AF1949E5B535CC829A483B8A7622"
    "3E5D490A257F05BDFF16F2FB22C583AB";

Bytes xor_with_hash(const BigInt& shared, std::span<const std::uint8_t> key, crypto::Digest session_hash) {
  Bytes pad = crypto::hash(session_hash, btwoc_encode(shared));
  if (pad.size() != key.size()) {
    fail(Errc::validation, "mac-key-length", "MAC key length does not match the session hash");
  }
  Bytes out(key.size());
  for (std::size_t i = 0; i < key.size(); ++i) out[i] = pad[i] ^ key[i];
  OPENSSL_cleanse(pad.data(), pad.size());
  return out;
}

Message error_response(const Message& request, std::string_view text) {
  Message m = request.version() == ProtocolVersion::v2_0 ? Message::v2() : Message();
  m.set("error", text);
  return m;
}

BigInt field_int(const Message& m, std::string_view key) {
  auto v = m.get(key);
  if (!v || v->empty()) fail(Errc::protocol, "missing-field", "association message lacks " + std::string(key));
  return btwoc_from_base64(*v);
}

}  // namespace

const DhParams& DhParams::openid_default() {
  static const DhParams params{BigInt::from_hex(kDefaultModulusHex), BigInt(2)};
  return params;
}

bool DhParams::is_default() const {
  const auto& d = openid_default();
  return modulus == d.modulus && generator == d.generator;
}

void DhParams::validate() const {
  if (!(BigInt(1) < generator && generator < modulus)) {
    fail(Errc::validation, "invalid-dh-params", "DH generator must satisfy 1 < g < p");
  }
}

DhKeyPair dh_from_private(const DhParams& params, const BigInt& private_key) {
  params.validate();
  if (private_key < BigInt(1) || params.modulus - BigInt(2) < private_key) {
    fail(Errc::validation, "dh-private-out-of-range", "DH private key must lie in [1, p-2]");
  }
  return DhKeyPair{private_key, params.generator.mod_exp(private_key, params.modulus)};
}

DhKeyPair dh_generate(const DhParams& params, RandomSource& rng) {
  params.validate();
  for (;;) {
    DhKeyPair kp = dh_from_private(params, BigInt::random_range(BigInt(1), params.modulus - BigInt(2), rng));
    // A public value of 1 would make every shared secret 1.
    if (BigInt(1) < kp.public_key) return kp;
  }
}

BigInt dh_shared(const BigInt& private_key, const BigInt& their_public, const DhParams& params) {
  if (!(BigInt(1) < their_public && their_public < params.modulus)) {
    fail(Errc::protocol, "dh-public-out-of-range", "peer DH public key must satisfy 1 < y < p");
  }
  return their_public.mod_exp(private_key, params.modulus);
}

Bytes blind_mac_key(const BigInt& shared, std::span<const std::uint8_t> mac_key, crypto::Digest session_hash) {
  return xor_with_hash(shared, mac_key, session_hash);
}

Bytes unblind_mac_key(const BigInt& shared, std::span<const std::uint8_t> enc_mac_key, crypto::Digest session_hash) {
  return xor_with_hash(shared, enc_mac_key, session_hash);
}

std::string_view to_string(SessionType t) noexcept { return t == SessionType::dh_sha1 ? "DH-SHA1" : "DH-SHA256"; }

std::optional<SessionType> parse_session_type(std::string_view name) noexcept {
  if (name == "DH-SHA1") return SessionType::dh_sha1;
  if (name == "DH-SHA256") return SessionType::dh_sha256;
  return std::nullopt;
}

crypto::Digest digest_of(SessionType t) noexcept {
  return t == SessionType::dh_sha1 ? crypto::Digest::sha1 : crypto::Digest::sha256;
}

SessionType session_for(AssocType t) noexcept {
  return t == AssocType::hmac_sha1 ? SessionType::dh_sha1 : SessionType::dh_sha256;
}

bool AssociationPolicy::supports(AssocType a, SessionType s) const {
  if (refuse_all) return false;
  for (const auto& [sa, ss] : supported) {
    if (sa == a && ss == s) return true;
  }
  return false;
}

Message AssociationRequest::to_message() const {
  Message m = Message::v2();
  m.set("mode", "associate");
  m.set("assoc_type", to_string(assoc_type));
  m.set("session_type", to_string(session_type));
  if (!params.is_default()) {
    m.set("dh_modulus", btwoc_base64(params.modulus));
    m.set("dh_gen", btwoc_base64(params.generator));
  }
  m.set("dh_consumer_public", btwoc_base64(consumer.public_key));
  return m;
}

AssociationRequest make_association_request(AssocType assoc, SessionType session, const DhParams& params,
                                            RandomSource& rng) {
  return AssociationRequest{assoc, session, params, dh_generate(params, rng)};
}

std::variant<Association, NegotiationError> finish_association(const AssociationRequest& request,
                                                              const Message& response, Instant now) {
  if (response.value("error_code") == "unsupported-type") {
    return NegotiationError{response.value("error"), parse_assoc_type(response.value("assoc_type")),
                            parse_session_type(response.value("session_type"))};
  }
  if (auto err = response.get("error")) fail(Errc::protocol, "association-error", "provider refused: " + *err);
  if (response.value("assoc_type") != to_string(request.assoc_type) ||
      response.value("session_type") != to_string(request.session_type)) {
    fail(Errc::protocol, "association-type-mismatch", "provider answered with a different association type");
  }
  auto handle = response.value("assoc_handle");
  auto expires = response.value("expires_in");
  long long lifetime = -1;
  auto [ptr, ec] = std::from_chars(expires.data(), expires.data() + expires.size(), lifetime);
  if (handle.empty() || ec != std::errc() || ptr != expires.data() + expires.size() || lifetime < 0) {
    fail(Errc::protocol, "association-malformed", "association response lacks a handle or lifetime");
  }
  BigInt server_public = field_int(response, "dh_server_public");
  auto enc = crypto::base64_decode(response.value("enc_mac_key"));
  if (!enc) fail(Errc::protocol, "association-malformed", "enc_mac_key is not base64");

  BigInt shared = dh_shared(request.consumer.private_key, server_public, request.params);
  Association assoc{handle, unblind_mac_key(shared, *enc, digest_of(request.session_type)), request.assoc_type, now,
                    std::chrono::seconds{lifetime}};
  assoc.validate();
  return assoc;
}

std::string new_association_handle(RandomSource& rng) { return crypto::base64_encode(rng.bytes(16)); }

AssociationGrant answer_association(const Message& request, const AssociationPolicy& policy, RandomSource& rng,
                                    Instant now) {
  if (request.value("mode") != "associate") {
    return {error_response(request, "expected mode associate"), std::nullopt, true};
  }
  auto assoc_type = parse_assoc_type(request.value("assoc_type"));
  auto session_type = parse_session_type(request.value("session_type"));
  if (!assoc_type || !session_type || !policy.supports(*assoc_type, *session_type)) {
    Message m = error_response(request, "Unsupported association or session type");
    m.set("error_code", "unsupported-type");
    if (!policy.refuse_all && !policy.supported.empty()) {
      m.set("session_type", to_string(policy.supported.front().second));
      m.set("assoc_type", to_string(policy.supported.front().first));
    }
    return {m, std::nullopt, false};
  }
  if (!request.contains("dh_consumer_public")) {
    return {error_response(request, "missing dh_consumer_public"), std::nullopt, true};
  }

  try {
    DhParams params = DhParams::openid_default();
    if (request.contains("dh_modulus") || request.contains("dh_gen")) {
      params = DhParams{field_int(request, "dh_modulus"), field_int(request, "dh_gen")};
      params.validate();
    }
    BigInt consumer_public = field_int(request, "dh_consumer_public");
    DhKeyPair server = dh_generate(params, rng);
    BigInt shared = dh_shared(server.private_key, consumer_public, params);

    Association assoc{new_association_handle(rng), rng.bytes(mac_key_length(*assoc_type)), *assoc_type, now,
                      policy.lifetime};
    Message m = request.version() == ProtocolVersion::v2_0 ? Message::v2() : Message();
    m.set("assoc_handle", assoc.handle);
    m.set("session_type", to_string(*session_type));
    m.set("assoc_type", to_string(*assoc_type));
    m.set("expires_in", std::to_string(policy.lifetime.count()));
    m.set("dh_server_public", btwoc_base64(server.public_key));
    m.set("enc_mac_key", crypto::base64_encode(blind_mac_key(shared, assoc.mac_key, digest_of(*session_type))));
    return {m, assoc, false};
  } catch (const Error& e) {
    return {error_response(request, e.what()), std::nullopt, true};
  }
}

}  // namespace ssogate::openid
