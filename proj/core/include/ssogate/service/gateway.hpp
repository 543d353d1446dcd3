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

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ssogate/openid/rp.hpp"
#include "ssogate/rbac/engine.hpp"
#include "ssogate/service/config.hpp"
#include "ssogate/service/session.hpp"
#include "ssogate/store/store.hpp"

namespace httplib {
class Server;
struct Request;
struct Response;
}  // namespace httplib

namespace ssogate::service {

inline constexpr std::string_view kPendingAuthCookie = "ssogate_auth";
/// Global role granted to every verified OpenID login.
inline const std::string kOpenIdRole = "6";
inline const std::string kOpenIdRoleName = "OPENID_ROLE";
inline constexpr int kProvisionedValidityDays = 365;

/// What a route demands before its handler runs.
struct Requirement {
  enum class Kind { open, authenticated, privilege };
  Kind kind = Kind::open;
  std::string privilege;

  static Requirement open() { return {Kind::open, {}}; }
  static Requirement authenticated() { return {Kind::authenticated, {}}; }
  static Requirement privileged(std::string id) { return {Kind::privilege, std::move(id)}; }
};

struct RouteSpec {
  std::string method;
  std::string pattern;
  Requirement requirement;
};

/// Links a verified OpenID identity to a local user.
struct IdentityBinding {
  std::string openid_identity;
  rbac::UserId user;
  std::set<std::string> groups;
  std::set<std::string> auto_roles;
};

/// Privileges the gateway registers at boot, with the roles granted each.
struct DemoPrivilege {
  std::string id;
  std::string description;
  std::vector<std::string> roles;
};
const std::vector<DemoPrivilege>& gateway_privileges();

/// The single sign-on gateway: login pages, OpenID relying-party flow,
/// encrypted session cookies, privilege-gated pages and the admin REST API.
class Gateway {
 public:
  /// Boot: registers OPENID_ROLE and the gateway privileges as the
  /// administrator (bootstrapping "root" when the catalog is empty) and loads
  /// identity bindings from `bindings`.
  Gateway(GatewayConfig config, rbac::RbacEngine& engine, store::Store* bindings, openid::Fetcher& fetcher,
          RandomSource& rng, Clock clock = system_clock());
  ~Gateway();

  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  /// Registers every route, then checks that each carries a requirement.
  void mount(httplib::Server& server);

  const std::vector<RouteSpec>& routes() const { return routes_; }
  const GatewayConfig& config() const { return config_; }
  const SessionCodec& sessions() const { return sessions_; }
  rbac::UserId administrator() const { return admin_; }

  std::optional<IdentityBinding> find_binding(const std::string& identity) const;
  /// Cookie value for a fresh session of `user` (roles resolved now).
  std::string mint_session(rbac::UserId user, const std::string& identity, std::set<std::string> groups = {});

 private:
  using Handler = std::function<void(const httplib::Request&, httplib::Response&, const std::optional<SessionToken>&)>;

  void route(httplib::Server& server, const std::string& method, const std::string& pattern, Requirement requirement,
             Handler handler);
  std::optional<SessionToken> load_session(const httplib::Request& req, httplib::Response& res);
  bool permitted(const SessionToken& token, const std::string& privilege) const;
  void deny(const httplib::Request& req, httplib::Response& res, bool had_session, const std::string& cause);
  IdentityBinding bind_identity(const std::string& identity);
  bool op_allowed(const std::string& endpoint) const;
  Date today() const;

  void login_page(const httplib::Request& req, httplib::Response& res, const std::optional<SessionToken>& session);
  void try_auth(const httplib::Request& req, httplib::Response& res);
  void finish_auth(const httplib::Request& req, httplib::Response& res);
  void home(httplib::Response& res, const SessionToken& session);
  void mount_api(httplib::Server& server);

  GatewayConfig config_;
  rbac::RbacEngine& engine_;
  store::Store* bindings_store_;
  RandomSource& rng_;
  Clock clock_;
  SessionCodec sessions_;
  rbac::UserId admin_;

  openid::AssociationStore associations_;
  store::NonceStore nonces_;
  openid::PendingRequests pending_;
  openid::Consumer consumer_;

  mutable std::mutex bindings_mu_;
  std::map<std::string, IdentityBinding> bindings_;

  std::vector<RouteSpec> routes_;
};

}  // namespace ssogate::service
