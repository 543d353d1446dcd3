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
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ssogate/rbac/types.hpp"
#include "ssogate/store/store.hpp"

namespace ssogate::rbac {

inline const std::string kAdministratorRole = "0";
inline const std::string kLocalCatalogPrefix = "local:";

/// Change to a Local role, fed to the global catalog hook.
enum class CatalogChange { add, modify, remove };

/// Global role table: Global roles under their own id, Local roles under
/// "local:<id>". Replaying a change is idempotent.
class GlobalCatalog {
 public:
  void sync(CatalogChange change, const RoleDescriptor& local_role);
  void put_global(const RoleDescriptor& role);
  void remove_global(const RoleId& id);

  const std::map<std::string, RoleId>& entries() const { return entries_; }
  bool contains(std::string_view key) const { return entries_.count(std::string(key)) > 0; }

 private:
  std::map<std::string, RoleId> entries_;
};

/// Role catalog, users, assignment log and privileges with point-in-time
/// resolution. Mutations are serialized; reads run concurrently. When a
/// backing store is given, state is loaded from it on construction and every
/// mutation is written through before it becomes visible.
class RbacEngine {
 public:
  explicit RbacEngine(store::Store* backing = nullptr);

  RbacEngine(const RbacEngine&) = delete;
  RbacEngine& operator=(const RbacEngine&) = delete;

  // Users

  UserRecord add_user(const std::string& name);
  std::optional<UserRecord> find_user(UserId id) const;
  std::optional<UserRecord> find_user(std::string_view name) const;
  std::vector<UserRecord> users() const;

  /// Creates `name` (if needed) and the Administrator role "0" owned by it.
  /// No-op when role "0" already exists.
  UserRecord bootstrap_administrator(const std::string& name);
  bool is_administrator(UserId user, Date today) const;

  // Catalog

  RoleDescriptor register_role(UserId actor, const RoleDescriptor& desc, Date today);
  /// Administrator-only rename/owner change of an existing role.
  RoleDescriptor update_role(UserId actor, const RoleDescriptor& desc, Date today);
  void unregister_role(UserId actor, const RoleId& id, Date today);
  std::optional<RoleDescriptor> find_role(const RoleId& id) const;
  std::optional<RoleDescriptor> find_role_by_name(std::string_view name) const;
  std::vector<RoleDescriptor> roles() const;
  GlobalCatalog global_catalog() const;

  // Assignments

  RoleAssignment assign_owner_role(UserId actor, UserId user, const RoleId& role, const ValidityPeriod& period,
                                   Date today);
  DelegationResult delegate_role(UserId assigner, UserId assignee, const RoleId& role,
                                 const ValidityPeriod& requested, Date today);
  void revoke_assignment(UserId actor, std::uint64_t s_no, Date today);

  /// Latest end date over the user's live assignments of `role` covering `at`.
  std::optional<Date> holding_end(UserId user, const RoleId& role, Date at) const;

  std::set<RoleId> resolve_roles(UserId user, Date at) const;
  UserId effective_holder(const RoleId& role, Date at) const;

  std::vector<RoleAssignment> assignments() const;
  std::optional<RoleAssignment> find_assignment(std::uint64_t s_no) const;
  bool is_revoked(std::uint64_t s_no) const;

  /// Bulk import of historical rows (e.g. fixture tables). Keeps the given
  /// s_no, skips catalog and authorization checks; s_no must exceed every
  /// existing one.
  void import_assignment(const RoleAssignment& row);

  // Privileges

  void register_privilege(UserId actor, const Privilege& privilege, Date today);
  std::optional<Privilege> find_privilege(std::string_view id) const;
  AccessDecision check_access(UserId user, std::string_view privilege, Date at) const;

 private:
  struct State {
    std::map<std::uint64_t, UserRecord> users;
    std::map<std::string, std::uint64_t> user_by_name;
    std::map<RoleId, RoleDescriptor> roles;
    GlobalCatalog global;
    std::vector<RoleAssignment> log;  // ordered by s_no
    std::map<std::uint64_t, Revocation> revoked;
    std::map<std::string, Privilege> privileges;
    std::uint64_t next_user = 1;
    std::uint64_t next_s_no = 1;
  };

  void load();
  bool admin_locked(UserId user, Date today) const;
  void require_admin(UserId actor, Date today) const;
  void require_user(UserId user) const;
  const RoleDescriptor& require_role(const RoleId& id) const;
  std::optional<Date> holding_end_locked(UserId user, const RoleId& role, Date at) const;
  std::set<RoleId> resolve_locked(UserId user, Date at) const;
  bool live(const RoleAssignment& a) const { return state_.revoked.count(a.s_no) == 0; }

  void persist_user(const UserRecord& u);
  void persist_role(const RoleDescriptor& r);
  void persist_assignment(const RoleAssignment& a);

  store::Store* backing_;
  mutable std::shared_mutex mu_;
  State state_;
};

}  // namespace ssogate::rbac
