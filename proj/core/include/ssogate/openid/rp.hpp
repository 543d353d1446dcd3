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

#include "ssogate/openid/association.hpp"
#include "ssogate/openid/association_store.hpp"
#include "ssogate/openid/discovery.hpp"
#include "ssogate/openid/fetcher.hpp"
#include "ssogate/openid/sreg.hpp"
#include "ssogate/store/ttl.hpp"

namespace ssogate::openid {

/// Pending authentication, kept server-side between begin and complete.
struct AuthRequest {
  ClaimedIdentifier claimed_id;
  OPEndpoint endpoint;
  std::optional<std::string> assoc_handle;
  SregRequest sreg;
  std::string session_key;
  // Filled by redirect_url.
  std::string realm;
  std::string return_to;
};

enum class AuthStatus { success, failure, cancel, setup_needed };

std::string_view to_string(AuthStatus s) noexcept;

struct AuthOutcome {
  AuthStatus status = AuthStatus::failure;
  std::optional<std::string> identity;
  SregValues sreg;
  std::string message;
  std::string cause;  // kebab-case, empty on success
};

using PendingRequests = store::ExpiringMap<AuthRequest>;

struct ConsumerOptions {
  AssocType assoc_type = AssocType::hmac_sha256;
  SessionType session_type = SessionType::dh_sha256;
  bool use_associations = true;
  std::chrono::seconds nonce_window{300};
};

inline constexpr std::string_view kCancelMessage = "Verification cancelled.";
inline constexpr std::string_view kEmptyIdentifierMessage = "Expected an OpenID URL.";
inline constexpr std::string_view kDiscoveryFailedMessage = "Authentication error.";
inline constexpr std::string_view kFailurePrefix = "OpenID authentication failed: ";

/// Relying-party state machine. Holds no mutable state of its own; the
/// association, nonce and pending-request stores are injected.
class Consumer {
 public:
  Consumer(Fetcher& fetcher, AssociationStore& associations, store::NonceStore& nonces, PendingRequests& pending,
           RandomSource& rng, ConsumerOptions options = {});

  /// Discovers the identifier, ensures an association and records the
  /// request. Throws Error(validation, "empty-identifier") with
  /// kEmptyIdentifierMessage, or Error(discovery, ...) with kDiscoveryFailedMessage.
  AuthRequest begin(std::string_view raw_identifier, Instant now);

  /// Throws Error(validation, "unknown-sreg-field").
  void add_sreg(AuthRequest& request, std::vector<std::string> required, std::vector<std::string> optional) const;

  /// checkid_setup URL on the provider endpoint. Throws
  /// Error(validation, "realm-mismatch") when return_to is outside realm.
  std::string redirect_url(AuthRequest& request, std::string_view realm, std::string_view return_to, Instant now);

  /// Verifies the provider's response for the request pending under
  /// `session_key`. Never throws; every problem becomes a Failure outcome.
  AuthOutcome complete(const Params& returned, std::string_view session_key, Instant now);

  /// Stateless verification: POSTs the assertion back to its provider.
  /// Throws Error(network) when the provider cannot be reached.
  bool check_authentication(const Message& assertion, const std::string& op_endpoint);

 private:
  std::optional<std::string> ensure_association(const OPEndpoint& endpoint, Instant now);
  std::optional<Association> negotiate(const OPEndpoint& endpoint, AssocType assoc, SessionType session, Instant now,
                                       bool may_retry);
  AuthOutcome verify(const Message& msg, const AuthRequest& request, Instant now);

  Fetcher& fetcher_;
  AssociationStore& associations_;
  store::NonceStore& nonces_;
  PendingRequests& pending_;
  RandomSource& rng_;
  ConsumerOptions options_;
};

}  // namespace ssogate::openid
