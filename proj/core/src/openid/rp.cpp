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

#include "ssogate/openid/rp.hpp"

#include <cstdlib>

#include "ssogate/crypto.hpp"
#include "ssogate/error.hpp"
#include "ssogate/openid/realm.hpp"

namespace ssogate::openid {

namespace {

constexpr std::string_view kFormType = "application/x-www-form-urlencoded";
constexpr std::string_view kRpNonceParam = "rp_nonce";

AuthOutcome failure(std::string cause, const std::string& detail) {
  AuthOutcome out;
  out.status = AuthStatus::failure;
  out.message = std::string(kFailurePrefix) + detail;
  out.cause = std::move(cause);
  return out;
}

Message post_direct(Fetcher& fetcher, const std::string& endpoint, const Message& msg) {
  HttpResponse response = fetcher.post(endpoint, form_body(msg), std::string(kFormType));
  if (response.status != 200 && response.status != 400) {
    fail(Errc::network, "provider-http-error", "provider answered HTTP " + std::to_string(response.status));
  }
  return kv_decode(response.body);
}

std::optional<std::string> query_param(std::string_view url, std::string_view name) {
  auto parsed = Url::try_parse(url);
  if (!parsed || !parsed->query) return std::nullopt;
  return find_param(form_decode(*parsed->query), name);
}

}  // namespace

std::string_view to_string(AuthStatus s) noexcept {
  switch (s) {
    case AuthStatus::success: return "success";
    case AuthStatus::failure: return "failure";
    case AuthStatus::cancel: return "cancel";
    case AuthStatus::setup_needed: return "setup-needed";
  }
  return "failure";
}

Consumer::Consumer(Fetcher& fetcher, AssociationStore& associations, store::NonceStore& nonces,
                   PendingRequests& pending, RandomSource& rng, ConsumerOptions options)
    : fetcher_(fetcher),
      associations_(associations),
      nonces_(nonces),
      pending_(pending),
      rng_(rng),
      options_(options) {}

AuthRequest Consumer::begin(std::string_view raw_identifier, Instant now) {
  ClaimedIdentifier id;
  try {
    id = normalize(raw_identifier);
  } catch (const Error& e) {
    if (e.cause() == "empty-identifier") throw;
    fail(Errc::discovery, e.cause(), std::string(kDiscoveryFailedMessage));
  }
  std::vector<OPEndpoint> endpoints;
  try {
    endpoints = discover(id, fetcher_);
  } catch (const Error& e) {
    fail(Errc::discovery, "discovery-failed", std::string(kDiscoveryFailedMessage));
  }

  AuthRequest request;
  request.claimed_id = id;
  request.endpoint = endpoints.front();
  request.assoc_handle = ensure_association(request.endpoint, now);
  request.session_key = crypto::base64url_encode(rng_.bytes(24));
  pending_.put(request.session_key, request, now);
  return request;
}

std::optional<std::string> Consumer::ensure_association(const OPEndpoint& endpoint, Instant now) {
  if (!options_.use_associations) return std::nullopt;
  if (auto existing = associations_.best_for(endpoint.endpoint_url, now)) return existing->handle;

  AssocType assoc = options_.assoc_type;
  SessionType session = options_.session_type;
  if (endpoint.version == ProtocolVersion::v1_1) {
    assoc = AssocType::hmac_sha1;
    session = SessionType::dh_sha1;
  }
  try {
    if (auto a = negotiate(endpoint, assoc, session, now, true)) {
      associations_.put(*a, endpoint.endpoint_url);
      return a->handle;
    }
  } catch (const Error&) {
    // Any association failure falls back to stateless verification.
  }
  return std::nullopt;
}

std::optional<Association> Consumer::negotiate(const OPEndpoint& endpoint, AssocType assoc, SessionType session,
                                               Instant now, bool may_retry) {
  AssociationRequest request = make_association_request(assoc, session, DhParams::openid_default(), rng_);
  Message msg = request.to_message();
  if (endpoint.version == ProtocolVersion::v1_1) msg.erase("ns");
  auto result = finish_association(request, post_direct(fetcher_, endpoint.endpoint_url, msg), now);
  if (auto* a = std::get_if<Association>(&result)) return *a;

  const auto& refusal = std::get<NegotiationError>(result);
  if (may_retry && refusal.suggested_assoc && refusal.suggested_session &&
      (*refusal.suggested_assoc != assoc || *refusal.suggested_session != session)) {
    return negotiate(endpoint, *refusal.suggested_assoc, *refusal.suggested_session, now, false);
  }
  return std::nullopt;
}

void Consumer::add_sreg(AuthRequest& request, std::vector<std::string> required,
                        std::vector<std::string> optional) const {
  SregRequest sreg{std::move(required), std::move(optional)};
  sreg.validate();
  for (auto& name : sreg.required) request.sreg.required.push_back(std::move(name));
  for (auto& name : sreg.optional) request.sreg.optional.push_back(std::move(name));
}

std::string Consumer::redirect_url(AuthRequest& request, std::string_view realm, std::string_view return_to,
                                   Instant now) {
  if (!validate_realm(realm, return_to)) {
    fail(Errc::validation, "realm-mismatch",
         "return_to '" + std::string(return_to) + "' is not within realm '" + std::string(realm) + "'");
  }
  const OPEndpoint& ep = request.endpoint;
  bool v2 = ep.version == ProtocolVersion::v2_0;

  Message msg = v2 ? Message::v2() : Message();
  msg.set("mode", "checkid_setup");
  if (v2) msg.set("claimed_id", ep.claimed_id);
  msg.set("identity", ep.op_local_id());
  std::string sent_return_to(return_to);
  if (!v2) {
    // 1.1 responses carry no nonce; the relying party plants its own.
    sent_return_to = append_query(return_to, {{std::string(kRpNonceParam), generate_nonce(now, rng_).str()}});
  }
  msg.set("return_to", sent_return_to);
  msg.set(v2 ? "realm" : "trust_root", realm);
  if (request.assoc_handle) msg.set("assoc_handle", *request.assoc_handle);
  add_sreg_request(msg, request.sreg);

  request.realm = std::string(realm);
  request.return_to = sent_return_to;
  pending_.put(request.session_key, request, now);
  return indirect_encode(msg, ep.endpoint_url);
}

AuthOutcome Consumer::complete(const Params& returned, std::string_view session_key, Instant now) {
  Message msg = Message::from_params(returned);
  std::string mode = msg.value("mode");

  if (mode == "cancel") {
    pending_.erase(std::string(session_key));
    AuthOutcome out;
    out.status = AuthStatus::cancel;
    out.message = std::string(kCancelMessage);
    out.cause = "cancelled";
    return out;
  }
  if (mode == "error") return failure("provider-error", msg.value("error"));
  if (mode == "setup_needed" || (mode == "id_res" && msg.contains("user_setup_url"))) {
    AuthOutcome out;
    out.status = AuthStatus::setup_needed;
    out.message = "Provider needs user interaction.";
    out.cause = "setup-needed";
    return out;
  }
  if (mode != "id_res") return failure("unexpected-mode", "unexpected mode '" + mode + "'");

  auto request = pending_.get(std::string(session_key), now);
  if (!request || request->return_to.empty()) {
    return failure("no-pending-request", "no authentication request is pending for this session");
  }
  try {
    return verify(msg, *request, now);
  } catch (const Error& e) {
    return failure(e.cause(), e.what());
  }
}

AuthOutcome Consumer::verify(const Message& msg, const AuthRequest& request, Instant now) {
  const OPEndpoint& ep = request.endpoint;
  bool v2 = ep.version == ProtocolVersion::v2_0;

  if (msg.version() != ep.version) return failure("version-mismatch", "response protocol version differs from discovery");
  if (msg.value("return_to") != request.return_to) return failure("return-to-mismatch", "return_to does not match the request");
  if (v2) {
    if (msg.value("op_endpoint") != ep.endpoint_url) return failure("endpoint-mismatch", "op_endpoint differs from the discovered endpoint");
    if (msg.value("claimed_id") != ep.claimed_id) return failure("identity-mismatch", "claimed_id differs from the discovered identifier");
  }
  if (msg.value("identity") != ep.op_local_id()) return failure("identity-mismatch", "identity differs from the discovered identifier");

  auto signed_fields = SignedFieldList::parse(msg.value("signed"));
  std::vector<std::string_view> must_sign = {"return_to", "identity"};
  if (v2) must_sign = {"op_endpoint", "return_to", "response_nonce", "assoc_handle", "claimed_id", "identity"};
  for (auto name : must_sign) {
    if (!signed_fields.contains(name)) return failure("unsigned-field", "field '" + std::string(name) + "' is not signed");
  }

  std::string handle = msg.value("assoc_handle");
  if (auto assoc = associations_.get(handle, now)) {
    if (!verify_signature(msg, *assoc)) return failure("bad-signature", "signature does not verify");
  } else {
    bool valid = false;
    try {
      valid = check_authentication(msg, ep.endpoint_url);
    } catch (const Error& e) {
      return failure("check-authentication-error", e.what());
    }
    if (!valid) return failure("check-authentication-failed", "provider did not confirm the assertion");
  }
  std::string nonce_text;
  if (v2) {
    nonce_text = msg.value("response_nonce");
  } else {
    nonce_text = query_param(msg.value("return_to"), kRpNonceParam).value_or("");
  }
  Nonce nonce;
  try {
    nonce = Nonce::parse(nonce_text);
  } catch (const Error&) {
    return failure("invalid-nonce", "missing or malformed nonce");
  }
  auto skew = std::chrono::abs(now - nonce.timestamp);
  if (skew > options_.nonce_window) return failure("nonce-out-of-window", "nonce timestamp outside the accepted window");
  std::string scope = v2 ? ep.endpoint_url : "rp:" + ep.endpoint_url;
  if (!nonces_.check_and_store(scope, nonce_text, now)) return failure("nonce-reused", "response was already used");

  AuthOutcome out;
  out.status = AuthStatus::success;
  out.identity = ep.claimed_id;
  out.sreg = extract_sreg(msg, true);
  out.message = "You have successfully verified " + ep.claimed_id + " as your identity.";
  return out;
}

bool Consumer::check_authentication(const Message& assertion, const std::string& op_endpoint) {
  Message msg = assertion;
  msg.set("mode", "check_authentication");
  Message response = post_direct(fetcher_, op_endpoint, msg);
  if (auto invalidate = response.get("invalidate_handle")) associations_.expire(*invalidate);
  return response.value("is_valid") == "true";
}

}  // namespace ssogate::openid
