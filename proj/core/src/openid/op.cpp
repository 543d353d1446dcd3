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

#include "ssogate/openid/op.hpp"

#include <charconv>

#include "ssogate/crypto.hpp"
#include "ssogate/error.hpp"
#include "ssogate/openid/discovery.hpp"
#include "ssogate/openid/realm.hpp"
#include "ssogate/url.hpp"

namespace ssogate::openid {

namespace {

constexpr std::size_t kSaltLength = 16;
constexpr std::size_t kDigestLength = 32;

bool valid_username(std::string_view name) {
  if (name.empty() || name.size() > 64) return false;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' || c == '_' ||
              c == '-';
    if (!ok) return false;
  }
  return true;
}

Message direct_error(const Message& request, const std::string& text) {
  Message m = request.version() == ProtocolVersion::v2_0 ? Message::v2() : Message();
  m.set("error", text);
  return m;
}

}  // namespace

// --- passwords ---

std::string PasswordRecord::str() const {
  return algorithm + "$" + std::to_string(iterations) + "$" + crypto::base64_encode(salt) + "$" +
         crypto::base64_encode(digest);
}

PasswordRecord PasswordRecord::parse(std::string_view text) {
  auto bad = [&] { fail(Errc::validation, "invalid-password-record", "malformed password record"); };
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '$') {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() != 4) bad();
  PasswordRecord r;
  r.algorithm = std::string(parts[0]);
  auto [ptr, ec] = std::from_chars(parts[1].data(), parts[1].data() + parts[1].size(), r.iterations);
  if (ec != std::errc() || ptr != parts[1].data() + parts[1].size() || r.iterations == 0) bad();
  auto salt = crypto::base64_decode(parts[2]);
  auto digest = crypto::base64_decode(parts[3]);
  if (!salt || !digest || salt->empty() || digest->empty()) bad();
  r.salt = std::move(*salt);
  r.digest = std::move(*digest);
  return r;
}

PasswordRecord PasswordHasher::hash(std::string_view password, RandomSource& rng) const {
  PasswordRecord r;
  r.iterations = iterations_;
  r.salt = rng.bytes(kSaltLength);
  r.digest = crypto::pbkdf2_sha256(password, r.salt, iterations_, kDigestLength);
  return r;
}

bool PasswordHasher::verify(const PasswordRecord& record, std::string_view password) const {
  if (record.algorithm != "pbkdf2-sha256" || record.iterations == 0) return false;
  Bytes computed = crypto::pbkdf2_sha256(password, record.salt, record.iterations, record.digest.size());
  return crypto::constant_time_equal(computed, record.digest);
}

// --- provider ---

Provider::Provider(ProviderOptions options, RandomSource& rng, Clock clock)
    : options_(std::move(options)), rng_(rng), clock_(std::move(clock)), hasher_(options_.password_iterations) {
  Url::parse(options_.endpoint_url);
  dummy_record_ = hasher_.hash("unused", rng_);
}

const OpUserAccount& Provider::add_account(std::string_view username, std::string_view password, SregValues profile) {
  if (!valid_username(username)) {
    fail(Errc::validation, "invalid-user-name", "invalid account name '" + std::string(username) + "'");
  }
  std::lock_guard lock(mu_);
  if (accounts_.count(username)) {
    fail(Errc::duplicate, "account-exists", "account '" + std::string(username) + "' already exists");
  }
  OpUserAccount account{std::string(username), hasher_.hash(password, rng_), identity_url(username), std::move(profile)};
  return accounts_.emplace(account.username, std::move(account)).first->second;
}

std::optional<OpUserAccount> Provider::find_account(std::string_view username) const {
  std::lock_guard lock(mu_);
  auto it = accounts_.find(username);
  if (it == accounts_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> Provider::authenticate_user(std::string_view username, std::string_view password) const {
  auto account = find_account(username);
  bool ok = hasher_.verify(account ? account->password : dummy_record_, password);
  if (!account || !ok) return std::nullopt;
  return account->username;
}

std::string Provider::identity_url(std::string_view username) const {
  return options_.identity_base + std::string(username);
}

std::optional<std::string> Provider::user_for_identity(std::string_view url) const {
  const std::string& base = options_.identity_base;
  if (url.size() <= base.size() || url.substr(0, base.size()) != base) return std::nullopt;
  std::string name(url.substr(base.size()));
  if (!find_account(name)) return std::nullopt;
  return name;
}

std::string Provider::xrds_url(std::string_view username) const { return identity_url(username) + "/xrds"; }

std::string Provider::identity_page(std::string_view username) const {
  std::string id = html_escape(identity_url(username));
  std::string ep = html_escape(options_.endpoint_url);
  return "<!DOCTYPE html>\n<html><head><title>" + html_escape(username) +
         "</title>\n"
         "<meta http-equiv=\"X-XRDS-Location\" content=\"" +
         html_escape(xrds_url(username)) +
         "\">\n"
         "<link rel=\"openid2.provider\" href=\"" +
         ep + "\">\n<link rel=\"openid2.local_id\" href=\"" + id + "\">\n<link rel=\"openid.server\" href=\"" + ep +
         "\">\n<link rel=\"openid.delegate\" href=\"" + id + "\">\n</head><body><p>OpenID identity page for " +
         html_escape(username) + ".</p></body></html>\n";
}

std::string Provider::xrds_document(std::string_view username) const {
  std::string id = html_escape(identity_url(username));
  std::string ep = html_escape(options_.endpoint_url);
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<xrds:XRDS xmlns:xrds=\"xri://$xrds\" xmlns=\"xri://$xrd*($v*2.0)\" xmlns:openid=\"http://openid.net/xmlns/1.0\">\n"
         "<XRD>\n"
         "<Service priority=\"0\">\n<Type>" +
         std::string(kTypeSignon20) + "</Type>\n<URI>" + ep + "</URI>\n<LocalID>" + id +
         "</LocalID>\n</Service>\n"
         "<Service priority=\"1\">\n<Type>" +
         std::string(kTypeSignon11) + "</Type>\n<URI>" + ep + "</URI>\n<openid:Delegate>" + id +
         "</openid:Delegate>\n</Service>\n"
         "</XRD>\n</xrds:XRDS>\n";
}

DirectResponse Provider::handle_associate(const Message& request) {
  AssociationGrant grant;
  {
    std::lock_guard lock(mu_);
    grant = answer_association(request, options_.policy, rng_, clock_());
  }
  if (grant.association) {
    shared_.put(*grant.association, options_.endpoint_url);
    return {200, grant.response};
  }
  return {400, grant.response};
}

CheckidRequest Provider::parse_checkid(const Message& msg) const {
  if (msg.value("mode") != "checkid_setup") {
    fail(Errc::protocol, "unsupported-mode", "expected mode checkid_setup, got '" + msg.value("mode") + "'");
  }
  CheckidRequest req;
  req.version = msg.version();
  bool v2 = req.version == ProtocolVersion::v2_0;
  req.return_to = msg.value("return_to");
  if (req.return_to.empty()) fail(Errc::protocol, "missing-return-to", "request lacks return_to");
  req.realm = msg.value(v2 ? "realm" : "trust_root");
  if (req.realm.empty()) req.realm = req.return_to;
  if (!validate_realm(req.realm, req.return_to)) {
    fail(Errc::protocol, "realm-mismatch", "return_to '" + req.return_to + "' is outside realm '" + req.realm + "'");
  }
  req.identity = msg.value("identity");
  if (req.identity.empty()) fail(Errc::protocol, "missing-identity", "request lacks an identity");
  if (v2) {
    req.claimed_id = msg.value("claimed_id");
    if (req.claimed_id.empty()) fail(Errc::protocol, "missing-claimed-id", "request lacks claimed_id");
  } else {
    req.claimed_id = req.identity;
  }
  if (auto h = msg.get("assoc_handle")) req.assoc_handle = *h;
  req.sreg = parse_sreg_request(msg);
  return req;
}

Association Provider::private_association(AssocType type, Instant now) {
  Association assoc;
  {
    std::lock_guard lock(mu_);
    assoc = Association{new_association_handle(rng_), rng_.bytes(mac_key_length(type)), type, now,
                        options_.private_lifetime};
  }
  private_.put(assoc, options_.endpoint_url);
  return assoc;
}

std::string Provider::respond(const CheckidRequest& request, const std::string& username,
                              const ApprovalDecision& decision) {
  if (decision.realm != request.realm) {
    fail(Errc::protocol, "undisplayed-realm", "decision does not name the requesting realm");
  }
  {
    std::lock_guard lock(mu_);
    decisions_.push_back({username, decision});
  }
  bool v2 = request.version == ProtocolVersion::v2_0;
  Message m = v2 ? Message::v2() : Message();
  if (decision.decision == Decision::deny) {
    m.set("mode", "cancel");
    return indirect_encode(m, request.return_to);
  }

  auto account = find_account(username);
  if (!account) fail(Errc::unauthorized, "unknown-account", "signed-in account no longer exists");
  std::string identity = request.identity;
  std::string claimed = request.claimed_id;
  if (identity == kIdentifierSelect) {
    identity = claimed = account->identity_url;
  } else if (identity != account->identity_url) {
    fail(Errc::unauthorized, "identity-not-owned", "'" + identity + "' does not belong to " + username);
  }

  Instant now = clock_();
  std::optional<Association> assoc;
  if (request.assoc_handle) assoc = shared_.get(*request.assoc_handle, now);
  bool invalidate = request.assoc_handle && !assoc;
  if (!assoc) assoc = private_association(v2 ? AssocType::hmac_sha256 : AssocType::hmac_sha1, now);

  std::vector<std::string> signed_fields;
  m.set("mode", "id_res");
  if (v2) {
    m.set("op_endpoint", options_.endpoint_url);
    m.set("claimed_id", claimed);
  }
  m.set("identity", identity);
  m.set("return_to", request.return_to);
  if (v2) {
    std::lock_guard lock(mu_);
    m.set("response_nonce", generate_nonce(now, rng_).str());
  }
  if (invalidate) m.set("invalidate_handle", *request.assoc_handle);
  if (v2) {
    signed_fields = {"op_endpoint", "claimed_id", "identity", "return_to", "response_nonce", "assoc_handle", "mode"};
  } else {
    signed_fields = {"mode", "identity", "return_to", "assoc_handle"};
  }
  m.set("assoc_handle", assoc->handle);

  SregValues released;
  for (const auto* list : {&request.sreg.required, &request.sreg.optional}) {
    for (const auto& name : *list) {
      auto it = account->profile.find(name);
      if (it != account->profile.end()) released[name] = it->second;
    }
  }
  add_sreg_response(m, released, signed_fields);
  sign_in_place(m, *assoc, SignedFieldList(signed_fields));
  return indirect_encode(m, request.return_to);
}

std::string Provider::handle_checkid_setup(const Message& msg, const std::optional<std::string>& session_user,
                                           const DecisionHook& hook) {
  CheckidRequest request = parse_checkid(msg);
  if (!session_user) fail(Errc::unauthorized, "login-required", "sign in to continue");
  return respond(request, *session_user, hook(request, *session_user));
}

DirectResponse Provider::handle_check_authentication(const Message& msg) {
  Message response = msg.version() == ProtocolVersion::v2_0 ? Message::v2() : Message();
  if (msg.value("mode") != "check_authentication") {
    return {400, direct_error(msg, "expected mode check_authentication")};
  }
  Instant now = clock_();
  bool valid = false;
  {
    std::lock_guard lock(check_mu_);
    std::string handle = msg.value("assoc_handle");
    if (auto assoc = private_.get(handle, now)) {
      Message echoed = msg;
      echoed.set("mode", "id_res");
      valid = verify_signature(echoed, *assoc);
      if (valid) private_.expire(handle);
    }
  }
  response.set("is_valid", valid ? "true" : "false");
  if (auto h = msg.get("invalidate_handle"); h && !shared_.get(*h, now)) response.set("invalidate_handle", *h);
  return {200, response};
}

std::vector<Provider::DecisionLogEntry> Provider::decisions() const {
  std::lock_guard lock(mu_);
  return decisions_;
}

}  // namespace ssogate::openid
