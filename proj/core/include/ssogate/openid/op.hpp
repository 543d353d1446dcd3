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

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssogate/openid/association.hpp"
#include "ssogate/openid/association_store.hpp"
#include "ssogate/openid/sreg.hpp"
#include "ssogate/random.hpp"

namespace ssogate::openid {

inline constexpr std::string_view kIdentifierSelect = "http://specs.openid.net/auth/2.0/identifier_select";

/// Salted, iterated password digest. Serialized as
/// "pbkdf2-sha256$<iterations>$<base64 salt>$<base64 digest>".
struct PasswordRecord {
  std::string algorithm = "pbkdf2-sha256";
  std::uint32_t iterations = 0;
  Bytes salt;
  Bytes digest;

  std::string str() const;
  /// Throws Error(validation, "invalid-password-record").
  static PasswordRecord parse(std::string_view text);
};

class PasswordHasher {
 public:
  static constexpr std::uint32_t kDefaultIterations = 1u << 15;

  explicit PasswordHasher(std::uint32_t iterations = kDefaultIterations) : iterations_(iterations) {}

  PasswordRecord hash(std::string_view password, RandomSource& rng) const;
  /// Uses the record's own algorithm and cost; false for unknown algorithms.
  bool verify(const PasswordRecord& record, std::string_view password) const;
  std::uint32_t iterations() const { return iterations_; }

 private:
  std::uint32_t iterations_;
};

struct OpUserAccount {
  std::string username;
  PasswordRecord password;
  std::string identity_url;
  SregValues profile;
};

enum class Decision { approve_once, deny };

struct ApprovalDecision {
  std::string realm;
  Decision decision = Decision::deny;
  Instant decided_at{};
};

/// A validated checkid_setup request.
struct CheckidRequest {
  ProtocolVersion version = ProtocolVersion::v2_0;
  std::string realm;
  std::string return_to;
  std::string claimed_id;
  std::string identity;
  std::optional<std::string> assoc_handle;
  SregRequest sreg;
};

/// Shown the request and the signed-in user; returns the user's verdict.
using DecisionHook = std::function<ApprovalDecision(const CheckidRequest&, const std::string& username)>;

struct DirectResponse {
  int status = 200;
  Message body;
};

struct ProviderOptions {
  std::string endpoint_url;   // e.g. http://host:port/openid/server
  std::string identity_base;  // identity URL = identity_base + username
  AssociationPolicy policy;
  std::uint32_t password_iterations = PasswordHasher::kDefaultIterations;
  std::chrono::seconds private_lifetime{300};
};

/// Minimal identity provider.
class Provider {
 public:
  Provider(ProviderOptions options, RandomSource& rng, Clock clock);

  const ProviderOptions& options() const { return options_; }

  /// Throws Error(duplicate, "account-exists") or Error(validation, "invalid-user-name").
  const OpUserAccount& add_account(std::string_view username, std::string_view password, SregValues profile = {});
  std::optional<OpUserAccount> find_account(std::string_view username) const;
  /// Username on success. Unknown users cost the same as wrong passwords.
  std::optional<std::string> authenticate_user(std::string_view username, std::string_view password) const;

  std::string identity_url(std::string_view username) const;
  /// Username owning `identity_url`, if any.
  std::optional<std::string> user_for_identity(std::string_view identity_url) const;
  /// HTML identity page with discovery links and an X-XRDS-Location meta tag.
  std::string identity_page(std::string_view username) const;
  std::string xrds_document(std::string_view username) const;
  std::string xrds_url(std::string_view username) const;

  DirectResponse handle_associate(const Message& request);

  /// Throws Error(protocol, ...) for malformed requests and
  /// Error(protocol, "realm-mismatch") when return_to is outside the realm.
  CheckidRequest parse_checkid(const Message& msg) const;

  /// Redirect URL carrying a signed assertion or a cancel. The decision must
  /// name the request's realm (Error(protocol, "undisplayed-realm")).
  std::string respond(const CheckidRequest& request, const std::string& username, const ApprovalDecision& decision);

  /// parse_checkid + hook + respond. Throws Error(unauthorized,
  /// "login-required") when no user is signed in.
  std::string handle_checkid_setup(const Message& msg, const std::optional<std::string>& session_user,
                                   const DecisionHook& hook);

  DirectResponse handle_check_authentication(const Message& msg);

  struct DecisionLogEntry {
    std::string username;
    ApprovalDecision decision;
  };
  std::vector<DecisionLogEntry> decisions() const;

 private:
  Association private_association(AssocType type, Instant now);

  ProviderOptions options_;
  RandomSource& rng_;
  Clock clock_;
  PasswordHasher hasher_;
  PasswordRecord dummy_record_;

  mutable std::mutex mu_;  // accounts_, decisions_, rng_
  std::map<std::string, OpUserAccount, std::less<>> accounts_;
  std::vector<DecisionLogEntry> decisions_;

  AssociationStore shared_;
  AssociationStore private_;
  std::mutex check_mu_;  // makes stateless checks single-use
};

}  // namespace ssogate::openid
