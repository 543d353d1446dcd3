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

#include "ssogate/rbac/engine.hpp"

#include <algorithm>
#include <mutex>

#include "ssogate/error.hpp"
#include "ssogate/rbac/codec.hpp"

namespace ssogate::rbac {

using store::RecordKind;

void GlobalCatalog::sync(CatalogChange change, const RoleDescriptor& local_role) {
  const std::string key = kLocalCatalogPrefix + local_role.id.str();
  if (change == CatalogChange::remove) {
    entries_.erase(key);
  } else {
    entries_.insert_or_assign(key, local_role.id);
  }
}

void GlobalCatalog::put_global(const RoleDescriptor& role) { entries_.insert_or_assign(role.id.str(), role.id); }

void GlobalCatalog::remove_global(const RoleId& id) { entries_.erase(id.str()); }

RbacEngine::RbacEngine(store::Store* backing) : backing_(backing) {
  if (backing_ != nullptr) load();
}

void RbacEngine::load() {
  for (const auto& rec : backing_->scan(RecordKind::user)) {
    auto u = codec::decode_user(rec.payload);
    state_.user_by_name[u.name] = u.id.value;
    state_.next_user = std::max(state_.next_user, u.id.value + 1);
    state_.users.emplace(u.id.value, std::move(u));
  }
  for (const auto& rec : backing_->scan(RecordKind::role)) {
    auto r = codec::decode_role(rec.payload);
    if (r.scope().is_global()) {
      state_.global.put_global(r);
    } else {
      state_.global.sync(CatalogChange::add, r);
    }
    state_.roles.insert_or_assign(r.id, std::move(r));
  }
  for (const auto& rec : backing_->scan(RecordKind::privilege)) {
    auto p = codec::decode_privilege(rec.payload);
    state_.privileges.insert_or_assign(p.id, std::move(p));
  }
  for (const auto& rec : backing_->scan(RecordKind::assignment)) {
    auto a = codec::decode_assignment(rec.payload);
    state_.next_s_no = std::max(state_.next_s_no, a.s_no + 1);
    state_.log.push_back(std::move(a));
  }
  std::sort(state_.log.begin(), state_.log.end(), [](const auto& a, const auto& b) { return a.s_no < b.s_no; });
  for (const auto& rec : backing_->scan(RecordKind::revocation)) {
    auto r = codec::decode_revocation(rec.payload);
    state_.revoked.emplace(r.s_no, r);
  }
}

void RbacEngine::persist_user(const UserRecord& u) {
  if (backing_) backing_->put(RecordKind::user, store::sequence_key(u.id.value), codec::encode(u));
}

void RbacEngine::persist_role(const RoleDescriptor& r) {
  if (backing_) backing_->put(RecordKind::role, r.id.str(), codec::encode(r));
}

void RbacEngine::persist_assignment(const RoleAssignment& a) {
  if (backing_) backing_->put(RecordKind::assignment, store::sequence_key(a.s_no), codec::encode(a));
}

// Users

UserRecord RbacEngine::add_user(const std::string& name) {
  if (name.empty()) fail(Errc::validation, "invalid-user-name", "user name must not be empty");
  std::unique_lock lock(mu_);
  if (state_.user_by_name.count(name)) fail(Errc::duplicate, "user-exists", "user '" + name + "' already exists");
  UserRecord u{UserId{state_.next_user}, name};
  persist_user(u);
  state_.next_user += 1;
  state_.user_by_name[name] = u.id.value;
  state_.users.emplace(u.id.value, u);
  return u;
}

std::optional<UserRecord> RbacEngine::find_user(UserId id) const {
  std::shared_lock lock(mu_);
  auto it = state_.users.find(id.value);
  if (it == state_.users.end()) return std::nullopt;
  return it->second;
}

std::optional<UserRecord> RbacEngine::find_user(std::string_view name) const {
  std::shared_lock lock(mu_);
  auto it = state_.user_by_name.find(std::string(name));
  if (it == state_.user_by_name.end()) return std::nullopt;
  return state_.users.at(it->second);
}

std::vector<UserRecord> RbacEngine::users() const {
  std::shared_lock lock(mu_);
  std::vector<UserRecord> out;
  for (const auto& [id, u] : state_.users) out.push_back(u);
  return out;
}

UserRecord RbacEngine::bootstrap_administrator(const std::string& name) {
  auto existing = find_user(name);
  UserRecord admin = existing ? *existing : add_user(name);
  std::unique_lock lock(mu_);
  auto root = RoleId::parse(kAdministratorRole);
  if (state_.roles.count(root) == 0) {
    RoleDescriptor desc{root, "Administrator", admin.id};
    persist_role(desc);
    state_.global.put_global(desc);
    state_.roles.emplace(root, desc);
  }
  return admin;
}

bool RbacEngine::admin_locked(UserId user, Date today) const {
  auto root = state_.roles.find(RoleId::parse(kAdministratorRole));
  if (root == state_.roles.end()) return false;
  if (root->second.owner == user) return true;
  return holding_end_locked(user, root->first, today).has_value();
}

bool RbacEngine::is_administrator(UserId user, Date today) const {
  std::shared_lock lock(mu_);
  return admin_locked(user, today);
}

void RbacEngine::require_admin(UserId actor, Date today) const {
  if (!admin_locked(actor, today)) {
    fail(Errc::unauthorized, "not-administrator", "user " + to_string(actor) + " is not an administrator");
  }
}

void RbacEngine::require_user(UserId user) const {
  if (state_.users.count(user.value) == 0) {
    fail(Errc::not_found, "user-not-found", "unknown user id " + to_string(user));
  }
}

const RoleDescriptor& RbacEngine::require_role(const RoleId& id) const {
  auto it = state_.roles.find(id);
  if (it == state_.roles.end()) fail(Errc::not_found, "role-not-found", "role " + id.str() + " is not registered");
  return it->second;
}

// Catalog

RoleDescriptor RbacEngine::register_role(UserId actor, const RoleDescriptor& desc, Date today) {
  if (desc.name.empty()) fail(Errc::validation, "invalid-role-name", "role name must not be empty");
  std::unique_lock lock(mu_);
  require_admin(actor, today);
  if (state_.roles.count(desc.id)) fail(Errc::duplicate, "role-exists", "role " + desc.id.str() + " already exists");
  require_user(desc.owner);
  persist_role(desc);
  state_.roles.emplace(desc.id, desc);
  if (desc.scope().is_global()) {
    state_.global.put_global(desc);
  } else {
    state_.global.sync(CatalogChange::add, desc);
  }
  return desc;
}

RoleDescriptor RbacEngine::update_role(UserId actor, const RoleDescriptor& desc, Date today) {
  if (desc.name.empty()) fail(Errc::validation, "invalid-role-name", "role name must not be empty");
  std::unique_lock lock(mu_);
  require_admin(actor, today);
  require_role(desc.id);
  require_user(desc.owner);
  persist_role(desc);
  state_.roles.insert_or_assign(desc.id, desc);
  if (!desc.scope().is_global()) state_.global.sync(CatalogChange::modify, desc);
  return desc;
}

void RbacEngine::unregister_role(UserId actor, const RoleId& id, Date today) {
  std::unique_lock lock(mu_);
  require_admin(actor, today);
  RoleDescriptor desc = require_role(id);
  if (backing_) backing_->erase(RecordKind::role, id.str());
  state_.roles.erase(id);
  if (desc.scope().is_global()) {
    state_.global.remove_global(id);
  } else {
    state_.global.sync(CatalogChange::remove, desc);
  }
}

std::optional<RoleDescriptor> RbacEngine::find_role(const RoleId& id) const {
  std::shared_lock lock(mu_);
  auto it = state_.roles.find(id);
  if (it == state_.roles.end()) return std::nullopt;
  return it->second;
}

std::optional<RoleDescriptor> RbacEngine::find_role_by_name(std::string_view name) const {
  std::shared_lock lock(mu_);
  for (const auto& [id, r] : state_.roles) {
    if (r.name == name) return r;
  }
  return std::nullopt;
}

std::vector<RoleDescriptor> RbacEngine::roles() const {
  std::shared_lock lock(mu_);
  std::vector<RoleDescriptor> out;
  for (const auto& [id, r] : state_.roles) out.push_back(r);
  return out;
}

GlobalCatalog RbacEngine::global_catalog() const {
  std::shared_lock lock(mu_);
  return state_.global;
}

// Assignments

RoleAssignment RbacEngine::assign_owner_role(UserId actor, UserId user, const RoleId& role,
                                             const ValidityPeriod& period, Date today) {
  std::unique_lock lock(mu_);
  const RoleDescriptor& desc = require_role(role);
  require_user(user);
  if (desc.owner != actor && !admin_locked(actor, today)) {
    fail(Errc::unauthorized, "not-owner",
         "user " + to_string(actor) + " is neither the owner of role " + role.str() + " nor an administrator");
  }
  RoleAssignment a{state_.next_s_no, user, role, period, actor, AssignmentKind::owner};
  persist_assignment(a);
  state_.next_s_no += 1;
  state_.log.push_back(a);
  return a;
}

DelegationResult RbacEngine::delegate_role(UserId assigner, UserId assignee, const RoleId& role,
                                           const ValidityPeriod& requested, Date today) {
  std::unique_lock lock(mu_);
  require_role(role);
  require_user(assigner);
  require_user(assignee);
  auto assigner_end = holding_end_locked(assigner, role, today);
  if (!assigner_end) {
    fail(Errc::unauthorized, "not-holder",
         "user " + to_string(assigner) + " does not hold role " + role.str() + " on " + today.to_string());
  }
  Date from = std::max(requested.from(), today);
  Date upto = std::min(requested.upto(), *assigner_end);
  if (upto < from) {
    fail(Errc::validation, "outside-validity",
         "requested window " + requested.from().to_string() + ".." + requested.upto().to_string() +
             " lies outside the assigner's validity (today " + today.to_string() + ", ends " +
             assigner_end->to_string() + ")");
  }
  RoleAssignment a{state_.next_s_no, assignee, role, ValidityPeriod(from, upto), assigner, AssignmentKind::delegated};
  persist_assignment(a);
  state_.next_s_no += 1;
  state_.log.push_back(a);
  return DelegationResult{a, requested, from != requested.from(), upto != requested.upto()};
}

void RbacEngine::revoke_assignment(UserId actor, std::uint64_t s_no, Date today) {
  std::unique_lock lock(mu_);
  auto it = std::find_if(state_.log.begin(), state_.log.end(), [&](const auto& a) { return a.s_no == s_no; });
  if (it == state_.log.end()) {
    fail(Errc::not_found, "assignment-not-found", "no assignment with s_no " + std::to_string(s_no));
  }
  auto role = state_.roles.find(it->role);
  bool owner = role != state_.roles.end() && role->second.owner == actor;
  if (!owner && it->assigner != actor && !admin_locked(actor, today)) {
    fail(Errc::unauthorized, "not-authorized-to-revoke",
         "user " + to_string(actor) + " may not revoke assignment " + std::to_string(s_no));
  }
  if (state_.revoked.count(s_no)) return;
  Revocation r{s_no, actor, today};
  if (backing_) backing_->put(RecordKind::revocation, store::sequence_key(s_no), codec::encode(r));
  state_.revoked.emplace(s_no, r);
}

std::optional<Date> RbacEngine::holding_end_locked(UserId user, const RoleId& role, Date at) const {
  std::optional<Date> end;
  for (const auto& a : state_.log) {
    if (a.user == user && a.role == role && a.period.contains(at) && live(a)) {
      end = end ? std::max(*end, a.period.upto()) : a.period.upto();
    }
  }
  return end;
}

std::optional<Date> RbacEngine::holding_end(UserId user, const RoleId& role, Date at) const {
  std::shared_lock lock(mu_);
  return holding_end_locked(user, role, at);
}

std::set<RoleId> RbacEngine::resolve_locked(UserId user, Date at) const {
  std::set<RoleId> out;
  for (const auto& a : state_.log) {
    if (a.user == user && a.period.contains(at) && live(a)) out.insert(a.role);
  }
  return out;
}

std::set<RoleId> RbacEngine::resolve_roles(UserId user, Date at) const {
  std::shared_lock lock(mu_);
  require_user(user);
  return resolve_locked(user, at);
}

UserId RbacEngine::effective_holder(const RoleId& role, Date at) const {
  std::shared_lock lock(mu_);
  const RoleDescriptor& desc = require_role(role);
  for (auto it = state_.log.rbegin(); it != state_.log.rend(); ++it) {
    if (it->kind == AssignmentKind::delegated && it->role == role && it->period.contains(at) && live(*it)) {
      return it->user;
    }
  }
  return desc.owner;
}

std::vector<RoleAssignment> RbacEngine::assignments() const {
  std::shared_lock lock(mu_);
  return state_.log;
}

std::optional<RoleAssignment> RbacEngine::find_assignment(std::uint64_t s_no) const {
  std::shared_lock lock(mu_);
  for (const auto& a : state_.log) {
    if (a.s_no == s_no) return a;
  }
  return std::nullopt;
}

bool RbacEngine::is_revoked(std::uint64_t s_no) const {
  std::shared_lock lock(mu_);
  return state_.revoked.count(s_no) > 0;
}

void RbacEngine::import_assignment(const RoleAssignment& row) {
  std::unique_lock lock(mu_);
  require_user(row.user);
  if (row.s_no < state_.next_s_no) {
    fail(Errc::validation, "non-monotonic-s-no", "imported s_no " + std::to_string(row.s_no) + " is not increasing");
  }
  persist_assignment(row);
  state_.next_s_no = row.s_no + 1;
  state_.log.push_back(row);
}

// Privileges

void RbacEngine::register_privilege(UserId actor, const Privilege& privilege, Date today) {
  if (privilege.id.empty()) fail(Errc::validation, "invalid-privilege", "privilege id must not be empty");
  std::unique_lock lock(mu_);
  require_admin(actor, today);
  for (const auto& r : privilege.granted_to) require_role(r);
  if (backing_) backing_->put(RecordKind::privilege, privilege.id, codec::encode(privilege));
  state_.privileges.insert_or_assign(privilege.id, privilege);
}

std::optional<Privilege> RbacEngine::find_privilege(std::string_view id) const {
  std::shared_lock lock(mu_);
  auto it = state_.privileges.find(std::string(id));
  if (it == state_.privileges.end()) return std::nullopt;
  return it->second;
}

AccessDecision RbacEngine::check_access(UserId user, std::string_view privilege, Date at) const {
  std::shared_lock lock(mu_);
  auto p = state_.privileges.find(std::string(privilege));
  if (p == state_.privileges.end()) {
    fail(Errc::not_found, "privilege-not-found", "privilege '" + std::string(privilege) + "' is not registered");
  }
  require_user(user);
  const auto roles = resolve_locked(user, at);
  for (const auto& r : roles) {
    if (p->second.granted_to.count(r)) return {AccessOutcome::permit, DenyReason::ok};
  }
  for (const auto& a : state_.log) {
    if (a.user == user && live(a) && p->second.granted_to.count(a.role)) {
      return {AccessOutcome::deny, DenyReason::expired};
    }
  }
  return {AccessOutcome::deny, roles.empty() ? DenyReason::no_role : DenyReason::no_privilege};
}

}  // namespace ssogate::rbac
