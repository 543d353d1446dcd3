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

#include "ssogate/openid/signing.hpp"

#include <algorithm>

#include "ssogate/error.hpp"

namespace ssogate::openid {

std::string_view to_string(AssocType t) noexcept { return t == AssocType::hmac_sha1 ? "HMAC-SHA1" : "HMAC-SHA256"; }

std::optional<AssocType> parse_assoc_type(std::string_view name) noexcept {
  if (name == "HMAC-SHA1") return AssocType::hmac_sha1;
  if (name == "HMAC-SHA256") return AssocType::hmac_sha256;
  return std::nullopt;
}

crypto::Digest digest_of(AssocType t) noexcept {
  return t == AssocType::hmac_sha1 ? crypto::Digest::sha1 : crypto::Digest::sha256;
}

void Association::validate() const {
  if (mac_key.size() != mac_key_length(type)) {
    fail(Errc::validation, "invalid-association", "MAC key length does not match " + std::string(to_string(type)));
  }
  if (handle.empty() || handle.size() > 255 ||
      !std::all_of(handle.begin(), handle.end(), [](char c) { return c >= 33 && c <= 126; })) {
    fail(Errc::validation, "invalid-association", "association handle must be 1-255 printable characters");
  }
}

SignedFieldList SignedFieldList::parse(std::string_view joined) {
  std::vector<std::string> names;
  while (!joined.empty()) {
    auto comma = joined.find(',');
    names.emplace_back(joined.substr(0, comma));
    if (comma == std::string_view::npos) break;
    joined.remove_prefix(comma + 1);
  }
  return SignedFieldList(std::move(names));
}

std::string SignedFieldList::join() const {
  std::string out;
  for (const auto& n : names_) {
    if (!out.empty()) out.push_back(',');
    out += n;
  }
  return out;
}

bool SignedFieldList::contains(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::string sign(const Message& msg, const Association& assoc, const SignedFieldList& signed_fields) {
  Message covered;
  for (const auto& name : signed_fields.names()) {
    auto v = msg.get(name);
    if (!v) fail(Errc::protocol, "missing-signed-field", "signed field '" + name + "' is not in the message");
    covered.set(name, *v);
  }
  const std::string data = kv_encode(covered);
  return crypto::base64_encode(crypto::hmac(digest_of(assoc.type), assoc.mac_key, crypto::as_bytes(data)));
}

void sign_in_place(Message& msg, const Association& assoc, const SignedFieldList& signed_fields) {
  msg.set("assoc_handle", assoc.handle);
  msg.set("signed", signed_fields.join());
  msg.set("sig", sign(msg, assoc, signed_fields));
}

bool verify_signature(const Message& msg, const Association& assoc) {
  auto carried = msg.get("sig");
  auto list = msg.get("signed");
  if (!carried || !list || list->empty()) return false;
  std::string expected;
  try {
    expected = sign(msg, assoc, SignedFieldList::parse(*list));
  } catch (const Error&) {
    return false;
  }
  return crypto::constant_time_equal(expected, *carried);
}

std::string Nonce::str() const { return format_instant(timestamp) + salt; }

Nonce Nonce::parse(std::string_view text) {
  if (text.size() < 20) fail(Errc::protocol, "invalid-nonce", "nonce too short");
  try {
    return Nonce{parse_instant(text.substr(0, 20)), std::string(text.substr(20))};
  } catch (const Error&) {
    fail(Errc::protocol, "invalid-nonce", "nonce does not start with a UTC timestamp");
  }
}

Nonce generate_nonce(Instant now, RandomSource& rng) {
  return Nonce{now, rng.pick(kNonceSaltLength, kNonceAlphabet)};
}

}  // namespace ssogate::openid
