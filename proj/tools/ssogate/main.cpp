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

// ssogate: operator tool for the single sign-on gateway.

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "ssogate/error.hpp"
#include "ssogate/rbac/engine.hpp"
#include "ssogate/service/browser.hpp"
#include "ssogate/service/config.hpp"
#include "ssogate/service/gateway.hpp"
#include "ssogate/service/http_fetcher.hpp"
#include "ssogate/service/local_stack.hpp"
#include "ssogate/service/op_server.hpp"
#include "ssogate/service/request_log.hpp"
#include "ssogate/store/seed.hpp"

namespace {

using namespace ssogate;
using nlohmann::json;

enum Exit : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kValidation = 3,
  kNotFound = 4,
  kUnauthorized = 5,
  kDuplicate = 6,
  kStorage = 7,
  kNetwork = 8,
};

int exit_code(Errc code) {
  switch (code) {
    case Errc::validation:
    case Errc::config: return kValidation;
    case Errc::not_found: return kNotFound;
    case Errc::unauthorized: return kUnauthorized;
    case Errc::duplicate: return kDuplicate;
    case Errc::storage:
    case Errc::locked: return kStorage;
    case Errc::protocol:
    case Errc::negotiation:
    case Errc::discovery:
    case Errc::network:
    case Errc::crypto: return kNetwork;
  }
  return kInternal;
}

struct Globals {
  std::string store_dir;
  std::string config;
  bool json = false;
  std::string today;
  std::string actor;
};

Globals g;

void emit(const json& record, const std::string& human) {
  if (g.json) {
    std::cout << record.dump() << '\n';
  } else {
    std::cout << human << '\n';
  }
}

Date today() { return g.today.empty() ? Date::of(system_clock()()) : Date::parse(g.today); }

std::unique_ptr<store::Store> open_store() {
  std::string dir = g.store_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("SSOGATE_STORE_DIR")) dir = env;
  }
  if (dir.empty()) dir = "ssogate-data";
  store::OpenOptions options;
  options.warn = [](std::string_view msg) { std::cerr << "warning: " << msg << '\n'; };
  return store::open_store(dir, options);
}

rbac::UserRecord find_user(const rbac::RbacEngine& engine, const std::string& ref) {
  if (auto u = engine.find_user(std::string_view(ref))) return *u;
  if (!ref.empty() && ref.find_first_not_of("0123456789") == std::string::npos && ref.size() < 19) {
    if (auto u = engine.find_user(rbac::UserId{std::stoull(ref)})) return *u;
  }
  fail(Errc::not_found, "user-not-found", "no such user: " + ref);
}

rbac::RoleId find_role(const rbac::RbacEngine& engine, const std::string& ref) {
  if (auto r = engine.find_role_by_name(ref)) return r->id;
  if (rbac::RoleId::well_formed(ref)) return rbac::RoleId::parse(ref);
  fail(Errc::not_found, "role-not-found", "no such role: " + ref);
}

rbac::UserId actor(const rbac::RbacEngine& engine) {
  if (!g.actor.empty()) return find_user(engine, g.actor).id;
  auto admin = engine.find_role(rbac::RoleId::parse(rbac::kAdministratorRole));
  if (!admin) fail(Errc::not_found, "no-administrator", "store has no administrator; run 'ssogate seed' or pass --actor");
  return admin->owner;
}

json assignment_json(const rbac::RoleAssignment& a) {
  return {{"s_no", a.s_no},
          {"user", a.user.value},
          {"role", a.role.str()},
          {"from", a.period.from().to_string()},
          {"upto", a.period.upto().to_string()},
          {"assigner", a.assigner.value},
          {"kind", std::string(rbac::to_string(a.kind))}};
}

httplib::Server* g_server = nullptr;

void serve_forever(httplib::Server& server, const std::string& host, int port) {
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->stop();
  });
  if (!server.listen(host, port)) {
    fail(Errc::network, "listen-failed", "cannot listen on " + host + ":" + std::to_string(port));
  }
}

// --- verbs ---

int cmd_serve() {
  std::optional<std::filesystem::path> config_file;
  if (!g.config.empty()) config_file = g.config;
  else if (const char* env = std::getenv("SSOGATE_CONFIG")) config_file = env;
  auto config = service::load_config(config_file);
  if (!g.store_dir.empty()) config.store_dir = g.store_dir;

  store::OpenOptions options;
  options.warn = [](std::string_view msg) { std::cerr << "warning: " << msg << '\n'; };
  auto store = store::open(config.store_dir, options);
  rbac::RbacEngine engine(store.get());
  SystemRandom rng;
  service::HttpFetcher fetcher;
  service::Gateway gateway(config, engine, store.get(), fetcher, rng);
  httplib::Server server;
  gateway.mount(server);
  service::install_request_log(server, service::stderr_request_log());
  std::cerr << "gateway listening on " << config.listen_host << ":" << config.listen_port << " (" << config.base_url()
            << ")\n";
  serve_forever(server, config.listen_host, config.listen_port);
  return kOk;
}

int cmd_op_serve(const std::string& listen, std::string public_url, const std::vector<std::string>& users) {
  auto [host, port] = service::parse_listen(listen);
  if (public_url.empty()) public_url = "http://" + listen;
  SystemRandom rng;
  openid::Provider provider(service::provider_options_for(public_url), rng, system_clock());
  for (const auto& spec : users) {
    // name:password[:email]
    auto first = spec.find(':');
    if (first == std::string::npos) fail(Errc::validation, "invalid-user-spec", "expected name:password[:email]");
    auto second = spec.find(':', first + 1);
    std::string name = spec.substr(0, first);
    std::string password = spec.substr(first + 1, second == std::string::npos ? std::string::npos : second - first - 1);
    openid::SregValues profile;
    if (second != std::string::npos) profile["email"] = spec.substr(second + 1);
    provider.add_account(name, password, profile);
    std::cerr << "account " << name << " -> " << provider.identity_url(name) << '\n';
  }
  service::OpServer op(provider, rng);
  httplib::Server server;
  op.mount(server);
  service::install_request_log(server, service::stderr_request_log());
  std::cerr << "provider listening on " << host << ":" << port << '\n';
  serve_forever(server, host, port);
  return kOk;
}

int cmd_seed() {
  auto store = open_store();
  store::load_seed_fixture(*store);
  emit({{"users", store::seed_users().size()},
        {"roles", store::seed_roles().size()},
        {"assignments", store::seed_assignments().size()}},
       "seeded " + std::to_string(store::seed_users().size()) + " users, " +
           std::to_string(store::seed_roles().size()) + " roles, " +
           std::to_string(store::seed_assignments().size()) + " assignments");
  return kOk;
}

int cmd_user_add(const std::string& name) {
  auto store = open_store();
  rbac::RbacEngine engine(store.get());
  auto user = engine.add_user(name);
  emit({{"id", user.id.value}, {"name", user.name}}, std::to_string(user.id.value));
  return kOk;
}

int cmd_role_add(const std::string& id, const std::string& name, const std::string& owner) {
  auto store = open_store();
  rbac::RbacEngine engine(store.get());
  auto a = actor(engine);
  auto owner_id = owner.empty() ? a : find_user(engine, owner).id;
  auto role = engine.register_role(a, {rbac::RoleId::parse(id), name, owner_id}, today());
  emit({{"id", role.id.str()},
        {"name", role.name},
        {"owner", role.owner.value},
        {"scope", role.scope().is_global() ? "global" : "local"}},
       role.id.str() + " " + role.name);
  return kOk;
}

int cmd_assign(const std::string& user, const std::string& role, const std::string& from, const std::string& until) {
  auto store = open_store();
  rbac::RbacEngine engine(store.get());
  auto a = engine.assign_owner_role(actor(engine), find_user(engine, user).id, find_role(engine, role),
                                    rbac::ValidityPeriod(Date::parse(from), Date::parse(until)), today());
  emit(assignment_json(a), "assignment " + std::to_string(a.s_no) + ": " + a.period.from().to_string() + ".." +
                               a.period.upto().to_string());
  return kOk;
}

int cmd_delegate(const std::string& role, const std::string& from_user, const std::string& to_user,
                 const std::string& start, const std::string& until) {
  auto store = open_store();
  rbac::RbacEngine engine(store.get());
  Date d = today();
  Date begin = start.empty() ? d : Date::parse(start);
  auto result = engine.delegate_role(find_user(engine, from_user).id, find_user(engine, to_user).id,
                                     find_role(engine, role), rbac::ValidityPeriod(begin, Date::parse(until)), d);
  const auto& p = result.assignment.period;
  json out = assignment_json(result.assignment);
  out["requested"] = {{"from", result.requested.from().to_string()}, {"upto", result.requested.upto().to_string()}};
  out["clamped"] = result.clamped();
  std::string human = "delegation " + std::to_string(result.assignment.s_no) + ": " + p.from().to_string() + ".." +
                      p.upto().to_string();
  if (result.end_clamped) human += " (end clamped from " + result.requested.upto().to_string() + ")";
  if (result.start_clamped) human += " (start clamped from " + result.requested.from().to_string() + ")";
  emit(out, human);
  return kOk;
}

int cmd_resolve(const std::string& user, const std::string& at) {
  auto store = open_store();
  rbac::RbacEngine engine(store.get());
  Date when = at.empty() ? today() : Date::parse(at);
  auto u = find_user(engine, user);
  json roles = json::array();
  std::string human;
  for (const auto& r : engine.resolve_roles(u.id, when)) {
    roles.push_back(r.str());
    if (!human.empty()) human += ' ';
    human += r.str();
  }
  emit({{"user", u.id.value}, {"at", when.to_string()}, {"roles", roles}}, human);
  return kOk;
}

int cmd_holder(const std::string& role, const std::string& at) {
  auto store = open_store();
  rbac::RbacEngine engine(store.get());
  Date when = at.empty() ? today() : Date::parse(at);
  auto id = find_role(engine, role);
  auto holder = engine.effective_holder(id, when);
  auto user = engine.find_user(holder);
  std::string name = user ? user->name : std::to_string(holder.value);
  emit({{"role", id.str()}, {"at", when.to_string()}, {"holder", holder.value}, {"holder_name", name}}, name);
  return kOk;
}

int cmd_revoke(std::uint64_t s_no) {
  auto store = open_store();
  rbac::RbacEngine engine(store.get());
  engine.revoke_assignment(actor(engine), s_no, today());
  emit({{"revoked", s_no}}, "revoked " + std::to_string(s_no));
  return kOk;
}

int cmd_e2e_login(const std::string& gateway, const std::string& identity, const std::string& username,
                  const std::string& password, bool deny) {
  std::unique_ptr<service::LocalStack> stack;
  service::ScriptedLogin script{gateway, identity, username, password, !deny};
  if (gateway.empty()) {
    service::LocalStackOptions options;
    options.accounts = {{username, password, {{"email", username + "@example.org"}}}};
    stack = std::make_unique<service::LocalStack>(options);
    script.gateway_url = stack->gateway_url();
    if (script.identity_url.empty()) script.identity_url = stack->identity_url(username);
  }
  service::Browser browser;
  auto result = service::scripted_login(browser, script);
  json out = {{"success", result.success},
              {"message", result.message},
              {"identity", result.identity.value_or("")},
              {"email", result.email.value_or("")}};
  if (!result.success) out["failed_step"] = result.failed_step;
  std::string human = result.success ? "verified " + result.identity.value_or("") +
                                           (result.email ? " email " + *result.email : std::string())
                                     : "login failed at " + result.failed_step + ": " + result.message;
  emit(out, human);
  return result.success ? kOk : kNetwork;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ssogate: single sign-on gateway with temporal role delegation"};
  app.require_subcommand(1);
  app.add_option("--store", g.store_dir, "Store directory (default $SSOGATE_STORE_DIR or ./ssogate-data)");
  app.add_option("--config", g.config, "Gateway config file (default $SSOGATE_CONFIG)");
  app.add_flag("--json", g.json, "Emit JSON lines");
  app.add_option("--today", g.today, "Override the current date (YYYY-MM-DD)");
  app.add_option("--actor", g.actor, "Acting user, by name or id (default: the administrator)");

  std::function<int()> run;

  auto* serve = app.add_subcommand("serve", "Run the gateway");
  serve->callback([&] { run = cmd_serve; });

  auto* op_serve = app.add_subcommand("op-serve", "Run the fixture OpenID provider");
  std::string op_listen = "127.0.0.1:8000", op_public;
  std::vector<std::string> op_users;
  op_serve->add_option("--listen", op_listen, "host:port")->capture_default_str();
  op_serve->add_option("--public-url", op_public, "Origin the provider is reached at");
  op_serve->add_option("--user", op_users, "Account as name:password[:email] (repeatable)");
  op_serve->callback([&] { run = [&] { return cmd_op_serve(op_listen, op_public, op_users); }; });

  auto* seed = app.add_subcommand("seed", "Load the fixture tables into an empty store");
  seed->callback([&] { run = cmd_seed; });

  auto* user = app.add_subcommand("user", "Manage users");
  user->require_subcommand(1);
  auto* user_add = user->add_subcommand("add", "Add a user");
  std::string user_name;
  user_add->add_option("name", user_name)->required();
  user_add->callback([&] { run = [&] { return cmd_user_add(user_name); }; });

  auto* role = app.add_subcommand("role", "Manage roles");
  role->require_subcommand(1);
  auto* role_add = role->add_subcommand("add", "Register a role");
  std::string role_id, role_name, role_owner;
  role_add->add_option("--id", role_id, "Digit-string role id")->required();
  role_add->add_option("--name", role_name, "Display name")->required();
  role_add->add_option("--owner", role_owner, "Owner (default: the actor)");
  role_add->callback([&] { run = [&] { return cmd_role_add(role_id, role_name, role_owner); }; });

  auto* assign = app.add_subcommand("assign", "Give a user an owner assignment");
  std::string as_user, as_role, as_from, as_until;
  assign->add_option("--user", as_user)->required();
  assign->add_option("--role", as_role)->required();
  assign->add_option("--from", as_from)->required();
  assign->add_option("--until", as_until)->required();
  assign->callback([&] { run = [&] { return cmd_assign(as_user, as_role, as_from, as_until); }; });

  auto* delegate = app.add_subcommand("delegate", "Delegate a held role for a period");
  std::string dg_role, dg_from, dg_to, dg_start, dg_until;
  delegate->add_option("--role", dg_role)->required();
  delegate->add_option("--from", dg_from, "Delegating holder")->required();
  delegate->add_option("--to", dg_to, "Receiving user")->required();
  delegate->add_option("--start", dg_start, "First day (default: today)");
  delegate->add_option("--until", dg_until, "Last day, inclusive")->required();
  delegate->callback([&] { run = [&] { return cmd_delegate(dg_role, dg_from, dg_to, dg_start, dg_until); }; });

  auto* resolve = app.add_subcommand("resolve", "Roles a user holds on a date");
  std::string rs_user, rs_at;
  resolve->add_option("--user", rs_user)->required();
  resolve->add_option("--at", rs_at);
  resolve->callback([&] { run = [&] { return cmd_resolve(rs_user, rs_at); }; });

  auto* holder = app.add_subcommand("holder", "Effective holder of a role on a date");
  std::string hd_role, hd_at;
  holder->add_option("--role", hd_role)->required();
  holder->add_option("--at", hd_at);
  holder->callback([&] { run = [&] { return cmd_holder(hd_role, hd_at); }; });

  auto* revoke = app.add_subcommand("revoke", "Revoke an assignment");
  std::uint64_t rv_sno = 0;
  revoke->add_option("s_no", rv_sno, "Assignment number")->required();
  revoke->callback([&] { run = [&] { return cmd_revoke(rv_sno); }; });

  auto* e2e = app.add_subcommand("e2e-login", "Scripted login through a gateway and provider");
  std::string e2e_gateway, e2e_identity, e2e_user = "alice", e2e_password = "wonderland";
  bool e2e_deny = false;
  e2e->add_option("--gateway", e2e_gateway, "Gateway URL (default: start a local provider and gateway)");
  e2e->add_option("--identity", e2e_identity, "Identity URL to type in");
  e2e->add_option("--username", e2e_user)->capture_default_str();
  e2e->add_option("--password", e2e_password)->capture_default_str();
  e2e->add_flag("--deny", e2e_deny, "Deny at the approval page");
  e2e->callback([&] {
    run = [&] { return cmd_e2e_login(e2e_gateway, e2e_identity, e2e_user, e2e_password, e2e_deny); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return run();
  } catch (const Error& e) {
    if (g.json) {
      std::cout << json{{"error", e.what()}, {"cause", e.cause()}, {"code", to_string(e.code())}}.dump() << '\n';
    }
    std::cerr << "error: " << e.what() << " [" << e.cause() << "]\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
}
