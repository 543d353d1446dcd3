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

#include "ssogate/service/gateway.hpp"

#include <algorithm>

#include <httplib.h>
#include <json.hpp>

#include "http_util.hpp"
#include "ssogate/error.hpp"

namespace ssogate::service {

namespace {

using nlohmann::json;
using detail::page;
using detail::redirect;
using detail::request_cookie;

constexpr int kPendingCookieSeconds = 600;

std::set<std::string> role_strings(const std::set<rbac::RoleId>& roles) {
  std::set<std::string> out;
  for (const auto& r : roles) out.insert(r.str());
  return out;
}

std::string join(const std::set<std::string>& items) {
  std::string out;
  for (const auto& i : items) {
    if (!out.empty()) out += ", ";
    out += i;
  }
  return out;
}

std::string login_form(const std::string& error) {
  std::string body = "<h1>Academy sign in</h1>\n";
  if (!error.empty()) body += "<p class=\"error\">" + html_escape(error) + "</p>\n";
  body +=
      "<form method=\"get\" action=\"/try_auth\">\n"
      "<label>Identity URL: <input type=\"text\" name=\"openid_url\"></label>\n"
      "<input type=\"submit\" value=\"Verify\">\n"
      "</form>";
  return page("Sign in", body);
}

json encode_binding(const IdentityBinding& b) {
  return {{"identity", b.openid_identity}, {"user", b.user.value}, {"groups", b.groups}, {"auto_roles", b.auto_roles}};
}

IdentityBinding decode_binding(const std::string& payload) {
  try {
    json j = json::parse(payload);
    return IdentityBinding{j.at("identity").get<std::string>(), rbac::UserId{j.at("user").get<std::uint64_t>()},
                           j.at("groups").get<std::set<std::string>>(),
                           j.at("auto_roles").get<std::set<std::string>>()};
  } catch (const json::exception& e) {
    fail(Errc::storage, "corrupt-record", std::string("corrupt identity binding: ") + e.what());
  }
}

// --- REST helpers ---

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

int status_for(Errc code) {
  switch (code) {
    case Errc::validation: return 400;
    case Errc::not_found: return 404;
    case Errc::duplicate: return 409;
    case Errc::unauthorized: return 403;
    case Errc::storage:
    case Errc::locked: return 503;
    default: return 500;
  }
}

void send_error(httplib::Response& res, const Error& e) {
  send_json(res, status_for(e.code()), {{"error", e.what()}, {"cause", e.cause()}});
}

json parse_body(const httplib::Request& req) {
  try {
    json j = json::parse(req.body);
    if (!j.is_object()) fail(Errc::validation, "invalid-json", "request body must be a JSON object");
    return j;
  } catch (const json::exception&) {
    fail(Errc::validation, "invalid-json", "request body is not valid JSON");
  }
}

std::string field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end() || !it->is_string()) {
    fail(Errc::validation, "missing-field", std::string("field '") + name + "' must be a string");
  }
  return it->get<std::string>();
}

json encode_assignment(const rbac::RoleAssignment& a) {
  return {{"s_no", a.s_no},
          {"user", a.user.value},
          {"role", a.role.str()},
          {"from", a.period.from().to_string()},
          {"upto", a.period.upto().to_string()},
          {"assigner", a.assigner.value},
          {"kind", std::string(rbac::to_string(a.kind))}};
}

json encode_period(const rbac::ValidityPeriod& p) { return {{"from", p.from().to_string()}, {"upto", p.upto().to_string()}}; }

}  // namespace

const std::vector<DemoPrivilege>& gateway_privileges() {
  static const std::vector<DemoPrivilege> kPrivileges = {
      {"openid.access", "Signed-in OpenID users", {kOpenIdRole}},
      {"student_affairs.full", "Full access to the Student Affairs section", {"10"}},
      {"academic.write", "Write access to the Academic section", {"20"}},
      {"student.self_read", "Students read their own records", {"1"}},
      {"rbac.admin", "Role administration", {rbac::kAdministratorRole}},
  };
  return kPrivileges;
}

Gateway::Gateway(GatewayConfig config, rbac::RbacEngine& engine, store::Store* bindings, openid::Fetcher& fetcher,
                 RandomSource& rng, Clock clock)
    : config_(std::move(config)),
      engine_(engine),
      bindings_store_(bindings),
      rng_(rng),
      clock_(std::move(clock)),
      sessions_(config_.server_key),
      associations_(bindings),
      nonces_(std::max(std::chrono::seconds{600}, 2 * config_.clock_skew)),
      pending_(std::chrono::seconds{kPendingCookieSeconds}),
      consumer_(fetcher, associations_, nonces_, pending_, rng_,
                openid::ConsumerOptions{openid::AssocType::hmac_sha256, openid::SessionType::dh_sha256, true,
                                        config_.clock_skew}) {
  Date d = today();
  if (auto admin_role = engine_.find_role(rbac::RoleId::parse(rbac::kAdministratorRole))) {
    admin_ = admin_role->owner;
  } else {
    admin_ = engine_.bootstrap_administrator("root").id;
  }
  // Owning role 0 is not holding it; sessions need a live assignment.
  auto root_role = rbac::RoleId::parse(rbac::kAdministratorRole);
  if (!engine_.holding_end(admin_, root_role, d)) {
    engine_.assign_owner_role(admin_, admin_, root_role,
                              rbac::ValidityPeriod(d, d.plus_days(kProvisionedValidityDays - 1)), d);
  }
  auto openid_role = rbac::RoleId::parse(kOpenIdRole);
  if (!engine_.find_role(openid_role)) engine_.register_role(admin_, {openid_role, kOpenIdRoleName, admin_}, d);
  for (const auto& p : gateway_privileges()) {
    rbac::Privilege priv{p.id, p.description, {}};
    for (const auto& r : p.roles) {
      auto id = rbac::RoleId::parse(r);
      if (engine_.find_role(id)) priv.granted_to.insert(id);
    }
    engine_.register_privilege(admin_, priv, d);
  }
  if (bindings_store_) {
    for (const auto& rec : bindings_store_->scan(store::RecordKind::binding)) {
      auto b = decode_binding(rec.payload);
      bindings_.emplace(b.openid_identity, b);
    }
  }
}

Gateway::~Gateway() = default;

Date Gateway::today() const { return Date::of(clock_()); }

bool Gateway::op_allowed(const std::string& endpoint) const {
  if (config_.op_allowlist.empty()) return true;
  return std::any_of(config_.op_allowlist.begin(), config_.op_allowlist.end(),
                     [&](const std::string& prefix) { return endpoint.rfind(prefix, 0) == 0; });
}

std::optional<IdentityBinding> Gateway::find_binding(const std::string& identity) const {
  std::lock_guard lock(bindings_mu_);
  auto it = bindings_.find(identity);
  if (it == bindings_.end()) return std::nullopt;
  return it->second;
}

IdentityBinding Gateway::bind_identity(const std::string& identity) {
  std::lock_guard lock(bindings_mu_);
  Date d = today();
  IdentityBinding binding;
  if (auto it = bindings_.find(identity); it != bindings_.end()) {
    binding = it->second;
  } else {
    auto user = engine_.find_user(std::string_view(identity));
    if (!user) user = engine_.add_user(identity);
    binding = IdentityBinding{identity, user->id, {std::string(kValidOpenIdUser)}, {kOpenIdRole}};
    if (bindings_store_) bindings_store_->put(store::RecordKind::binding, identity, encode_binding(binding).dump());
    bindings_.emplace(identity, binding);
  }
  for (const auto& r : binding.auto_roles) {
    auto role = rbac::RoleId::parse(r);
    if (!engine_.holding_end(binding.user, role, d)) {
      engine_.assign_owner_role(admin_, binding.user, role,
                                rbac::ValidityPeriod(d, d.plus_days(kProvisionedValidityDays - 1)), d);
    }
  }
  return binding;
}

std::string Gateway::mint_session(rbac::UserId user, const std::string& identity, std::set<std::string> groups) {
  Instant now = clock_();
  SessionToken token;
  token.user = user;
  token.identity = identity;
  token.groups = std::move(groups);
  token.roles = role_strings(engine_.resolve_roles(user, Date::of(now)));
  token.issued_at = now;
  token.expires_at = now + config_.session_ttl;
  token.roles_at = now;
  return sessions_.mint(token, rng_);
}

std::optional<SessionToken> Gateway::load_session(const httplib::Request& req, httplib::Response& res) {
  auto cookie = request_cookie(req, kSessionCookie);
  if (!cookie) return std::nullopt;
  Instant now = clock_();
  auto token = sessions_.read(*cookie, now);
  if (!token) return std::nullopt;
  if (now - token->roles_at >= config_.staleness) {
    try {
      token->roles = role_strings(engine_.resolve_roles(token->user, Date::of(now)));
    } catch (const Error&) {
      return std::nullopt;
    }
    token->roles_at = now;
    auto remaining = std::chrono::duration_cast<std::chrono::seconds>(token->expires_at - now).count();
    res.set_header("Set-Cookie",
                   detail::set_cookie(kSessionCookie, sessions_.mint(*token, rng_),
                                      {static_cast<int>(remaining), config_.base_url().rfind("https", 0) == 0}));
  }
  return token;
}

bool Gateway::permitted(const SessionToken& token, const std::string& privilege) const {
  auto priv = engine_.find_privilege(privilege);
  if (!priv) return false;
  return std::any_of(token.roles.begin(), token.roles.end(), [&](const std::string& r) {
    return rbac::RoleId::well_formed(r) && priv->granted_to.count(rbac::RoleId::parse(r)) > 0;
  });
}

void Gateway::deny(const httplib::Request& req, httplib::Response& res, bool had_session, const std::string& cause) {
  res.headers.erase("Set-Cookie");
  res.set_header("Set-Cookie", detail::clear_cookie(kSessionCookie));
  if (req.path.rfind("/api/", 0) == 0) {
    send_json(res, had_session && cause != "no-session" ? 403 : 401,
              {{"error", cause == "no-session" ? "authentication required" : "access denied"}, {"cause", cause}});
    return;
  }
  redirect(res, "/login");
}

void Gateway::route(httplib::Server& server, const std::string& method, const std::string& pattern,
                    Requirement requirement, Handler handler) {
  auto wrapped = [this, requirement, handler = std::move(handler)](const httplib::Request& req,
                                                                    httplib::Response& res) {
    auto session = load_session(req, res);
    if (requirement.kind != Requirement::Kind::open) {
      if (!session) return deny(req, res, false, "no-session");
      if (requirement.kind == Requirement::Kind::privilege && !permitted(*session, requirement.privilege)) {
        return deny(req, res, true, "privilege-violation");
      }
    }
    try {
      handler(req, res, session);
    } catch (const Error& e) {
      if (req.path.rfind("/api/", 0) == 0) return send_error(res, e);
      res.status = status_for(e.code());
      res.set_content(page("Error", "<p>" + html_escape(e.what()) + "</p>"), "text/html");
    }
  };
  if (method == "GET") {
    server.Get(pattern, wrapped);
  } else if (method == "POST") {
    server.Post(pattern, wrapped);
  } else if (method == "DELETE") {
    server.Delete(pattern, wrapped);
  } else {
    fail(Errc::config, "unsupported-method", "cannot route method " + method);
  }
  routes_.push_back({method, pattern, std::move(requirement)});
}

void Gateway::mount(httplib::Server& server) {
  using R = Requirement;
  route(server, "GET", "/login", R::open(),
        [this](const auto& req, auto& res, const auto& session) { login_page(req, res, session); });
  route(server, "GET", "/try_auth", R::open(), [this](const auto& req, auto& res, const auto&) { try_auth(req, res); });
  route(server, "GET", "/finish_auth", R::open(),
        [this](const auto& req, auto& res, const auto&) { finish_auth(req, res); });
  route(server, "GET", "/logout", R::open(), [](const auto&, auto& res, const auto&) {
    res.set_header("Set-Cookie", detail::clear_cookie(kSessionCookie));
    redirect(res, "/login");
  });
  route(server, "GET", "/", R::privileged("openid.access"),
        [this](const auto&, auto& res, const auto& session) { home(res, *session); });

  auto section = [](std::string title) {
    return [title](const httplib::Request& req, httplib::Response& res, const std::optional<SessionToken>& session) {
      std::string verb = req.method == "POST" ? "Record saved" : "Records";
      res.set_content(page(title, "<h1>" + html_escape(title) + "</h1>\n<p>" + verb + " for " +
                                      html_escape(session->identity.empty() ? "user " + rbac::to_string(session->user)
                                                                            : session->identity) +
                                      ".</p>"),
                      "text/html");
    };
  };
  route(server, "GET", "/sections/student-affairs", R::privileged("student_affairs.full"),
        section("Student Affairs"));
  route(server, "GET", "/sections/academic", R::privileged("academic.write"), section("Academic Section"));
  route(server, "POST", "/sections/academic", R::privileged("academic.write"), section("Academic Section"));
  route(server, "GET", "/sections/student", R::privileged("student.self_read"), section("Student Records"));
  route(server, "GET", "/admin", R::privileged("rbac.admin"), section("Role Administration"));

  mount_api(server);

  if (config_.console_dir) {
    if (!server.set_mount_point("/console", config_.console_dir->string())) {
      fail(Errc::config, "console-dir-missing", "console directory not found: " + config_.console_dir->string());
    }
    routes_.push_back({"GET", "/console", R::open()});
  } else {
    route(server, "GET", "/console", R::open(), [](const auto&, auto& res, const auto&) {
      res.status = 404;
      res.set_content(page("Console", "<p>The admin console is not installed.</p>"), "text/html");
    });
  }

  // Every route must name its requirement, and privileges must exist.
  for (const auto& r : routes_) {
    if (r.requirement.kind == R::Kind::privilege &&
        (r.requirement.privilege.empty() || !engine_.find_privilege(r.requirement.privilege))) {
      fail(Errc::config, "route-without-requirement", "route " + r.method + " " + r.pattern + " has no valid privilege");
    }
  }
}

void Gateway::login_page(const httplib::Request&, httplib::Response& res, const std::optional<SessionToken>& session) {
  if (session) return redirect(res, "/");
  res.set_content(login_form(""), "text/html");
}

void Gateway::try_auth(const httplib::Request& req, httplib::Response& res) {
  std::string raw = req.get_param_value("openid_url");
  Instant now = clock_();
  try {
    auto request = consumer_.begin(raw, now);
    if (!op_allowed(request.endpoint.endpoint_url)) {
      pending_.erase(request.session_key);
      fail(Errc::discovery, "provider-not-allowed", std::string(openid::kDiscoveryFailedMessage));
    }
    consumer_.add_sreg(request, {}, {"email"});
    std::string base = config_.base_url();
    std::string location = consumer_.redirect_url(request, base, base + "finish_auth", now);
    res.set_header("Set-Cookie", detail::set_cookie(kPendingAuthCookie, request.session_key,
                                                    {kPendingCookieSeconds, base.rfind("https", 0) == 0}));
    redirect(res, location);
  } catch (const Error& e) {
    res.status = 400;
    res.set_content(login_form(e.what()), "text/html");
  }
}

void Gateway::finish_auth(const httplib::Request& req, httplib::Response& res) {
  auto key = request_cookie(req, kPendingAuthCookie).value_or("");
  auto outcome = consumer_.complete(detail::request_params(req), key, clock_());

  if (outcome.status != openid::AuthStatus::success) {
    if (outcome.status == openid::AuthStatus::cancel) res.set_header("Set-Cookie", detail::clear_cookie(kPendingAuthCookie));
    res.status = outcome.status == openid::AuthStatus::cancel ? 200 : 401;
    res.set_content(page("Sign in", "<p class=\"result\">" + html_escape(outcome.message) +
                                        "</p>\n<p><a href=\"/login\">Back to sign in</a></p>"),
                    "text/html");
    return;
  }

  const std::string& identity = *outcome.identity;
  IdentityBinding binding = bind_identity(identity);
  std::string cookie = mint_session(binding.user, identity, binding.groups);
  bool secure = config_.base_url().rfind("https", 0) == 0;
  res.set_header("Set-Cookie", detail::set_cookie(kSessionCookie, cookie,
                                                  {static_cast<int>(config_.session_ttl.count()), secure}));
  res.set_header("Set-Cookie", detail::clear_cookie(kPendingAuthCookie));

  std::string esc = html_escape(identity);
  std::string msg = "You have successfully verified <a href=\"" + esc + "\">" + esc + "</a> as your identity.";
  if (auto email = outcome.sreg.find("email"); email != outcome.sreg.end() && !email->second.empty()) {
    msg += " You also returned '" + html_escape(email->second) + "' as your email.";
  }
  res.set_content(page("Signed in", "<p class=\"result\">" + msg + "</p>\n<p><a href=\"/\">Continue</a></p>"),
                  "text/html");
}

void Gateway::home(httplib::Response& res, const SessionToken& session) {
  std::set<std::string> role_names;
  for (const auto& r : session.roles) {
    auto desc = rbac::RoleId::well_formed(r) ? engine_.find_role(rbac::RoleId::parse(r)) : std::nullopt;
    role_names.insert(desc ? desc->name : r);
  }
  std::string body = "<h1>Academy Automation</h1>\n<dl>\n<dt>Remote user</dt><dd id=\"remote-user\">" +
                     html_escape(session.identity) + "</dd>\n<dt>Groups</dt><dd id=\"groups\">" +
                     html_escape(join(session.groups)) + "</dd>\n<dt>Roles</dt><dd id=\"roles\">" +
                     html_escape(join(role_names)) + "</dd>\n</dl>\n<p><a href=\"/logout\">Sign out</a></p>";
  res.set_content(page("Home", body), "text/html");
}

void Gateway::mount_api(httplib::Server& server) {
  using R = Requirement;

  auto resolve_user = [this](const json& v) -> rbac::UserId {
    std::optional<rbac::UserRecord> user;
    if (v.is_number_unsigned()) {
      user = engine_.find_user(rbac::UserId{v.get<std::uint64_t>()});
    } else if (v.is_string()) {
      auto s = v.get<std::string>();
      user = engine_.find_user(std::string_view(s));
      if (!user && !s.empty() && std::all_of(s.begin(), s.end(), ::isdigit)) {
        user = engine_.find_user(rbac::UserId{std::stoull(s)});
      }
    } else {
      fail(Errc::validation, "missing-field", "user must be an id or a name");
    }
    if (!user) fail(Errc::not_found, "user-not-found", "no such user: " + v.dump());
    return user->id;
  };
  auto resolve_role = [this](const std::string& s) -> rbac::RoleId {
    if (rbac::RoleId::well_formed(s)) return rbac::RoleId::parse(s);
    auto role = engine_.find_role_by_name(s);
    if (!role) fail(Errc::not_found, "role-not-found", "no such role: " + s);
    return role->id;
  };
  auto period_of = [](const json& body) {
    return rbac::ValidityPeriod(Date::parse(field(body, "from")), Date::parse(field(body, "upto")));
  };
  auto date_param = [this](const httplib::Request& req) {
    return req.has_param("at") ? Date::parse(req.get_param_value("at")) : today();
  };

  route(server, "POST", "/api/users", R::privileged("rbac.admin"), [this](const auto& req, auto& res, const auto&) {
    auto body = parse_body(req);
    auto user = engine_.add_user(field(body, "name"));
    send_json(res, 201, {{"id", user.id.value}, {"name", user.name}});
  });

  route(server, "POST", "/api/roles", R::privileged("rbac.admin"),
        [this, resolve_user](const auto& req, auto& res, const auto& session) {
          auto body = parse_body(req);
          auto owner = body.contains("owner") ? resolve_user(body["owner"]) : session->user;
          rbac::RoleDescriptor desc{rbac::RoleId::parse(field(body, "id")), field(body, "name"), owner};
          auto role = engine_.register_role(session->user, desc, today());
          auto scope = role.scope();
          send_json(res, 201,
                    {{"id", role.id.str()},
                     {"name", role.name},
                     {"owner", role.owner.value},
                     {"scope", scope.is_global() ? "global" : "local"}});
        });

  route(server, "POST", "/api/assignments", R::authenticated(),
        [this, resolve_user, resolve_role, period_of](const auto& req, auto& res, const auto& session) {
          auto body = parse_body(req);
          if (!body.contains("user")) fail(Errc::validation, "missing-field", "field 'user' is required");
          auto a = engine_.assign_owner_role(session->user, resolve_user(body["user"]),
                                             resolve_role(field(body, "role")), period_of(body), today());
          send_json(res, 201, encode_assignment(a));
        });

  route(server, "POST", "/api/delegations", R::authenticated(),
        [this, resolve_user, resolve_role, period_of](const auto& req, auto& res, const auto& session) {
          auto body = parse_body(req);
          if (!body.contains("to")) fail(Errc::validation, "missing-field", "field 'to' is required");
          auto result = engine_.delegate_role(session->user, resolve_user(body["to"]),
                                              resolve_role(field(body, "role")), period_of(body), today());
          send_json(res, 201,
                    {{"assignment", encode_assignment(result.assignment)},
                     {"requested", encode_period(result.requested)},
                     {"effective", encode_period(result.assignment.period)},
                     {"clamped", result.clamped()},
                     {"start_clamped", result.start_clamped},
                     {"end_clamped", result.end_clamped}});
        });

  route(server, "GET", "/api/users/:id/roles", R::authenticated(),
        [this, resolve_user, date_param](const auto& req, auto& res, const auto&) {
          auto user = resolve_user(json(req.path_params.at("id")));
          json roles = json::array();
          for (const auto& r : engine_.resolve_roles(user, date_param(req))) roles.push_back(r.str());
          send_json(res, 200, roles);
        });

  route(server, "GET", "/api/roles/:id/holder", R::authenticated(),
        [this, resolve_role, date_param](const auto& req, auto& res, const auto&) {
          auto role = resolve_role(req.path_params.at("id"));
          Date at = date_param(req);
          auto holder = engine_.effective_holder(role, at);
          auto user = engine_.find_user(holder);
          send_json(res, 200,
                    {{"role", role.str()},
                     {"at", at.to_string()},
                     {"holder", holder.value},
                     {"holder_name", user ? user->name : ""}});
        });

  route(server, "DELETE", "/api/assignments/:s_no", R::authenticated(),
        [this](const auto& req, auto& res, const auto& session) {
          const auto& text = req.path_params.at("s_no");
          if (text.empty() || !std::all_of(text.begin(), text.end(), ::isdigit) || text.size() > 18) {
            fail(Errc::validation, "invalid-s-no", "assignment number must be digits");
          }
          engine_.revoke_assignment(session->user, std::stoull(text), today());
          res.status = 204;
        });
}

}  // namespace ssogate::service
