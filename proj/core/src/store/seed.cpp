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

#include "ssogate/store/seed.hpp"

#include "ssogate/error.hpp"
#include "ssogate/rbac/engine.hpp"

namespace ssogate::store {

namespace {

constexpr SeedRole kRoles[] = {
    {"0", "Administrator"},
    {"1", "Student"},
    {"2", "Faculty"},
    {"10", "Assistant Registrar (Student Affairs)"},
    {"20", "Assistant Registrar (Academic)"},
    {"30", "Assistant Registrar (RND)"},
    {"40", "Assistant Registrar (TNP)"},
    {"50", "Assistant Registrar (Finance)"},
    {"3", "Registrar"},
    {"4", "Director"},
    {"5", "Head of Departments"},
};

constexpr SeedUser kUsers[] = {
    {"root", 1},
    {"dharmendra", 2},
    {"try", 3},
};

constexpr SeedAssignment kAssignments[] = {
    {1, 1, "12", "2008-01-01", "2009-01-02"},
    {2, 1, "13", "2008-01-01", "2008-05-06"},
    {3, 2, "12", "2007-01-01", "2008-01-01"},
};

}  // namespace

std::span<const SeedRole> seed_roles() { return kRoles; }
std::span<const SeedUser> seed_users() { return kUsers; }
std::span<const SeedAssignment> seed_assignments() { return kAssignments; }

void load_seed_fixture(Store& store) {
  if (!store.empty()) fail(Errc::validation, "store-not-empty", "the seed fixture needs an empty store");

  rbac::RbacEngine engine(&store);
  for (const auto& u : kUsers) {
    auto rec = engine.add_user(std::string(u.name));
    if (rec.id.value != u.id) fail(Errc::storage, "seed-mismatch", "seed user ids out of step");
  }
  const rbac::UserId root{kUsers[0].id};
  const Date when(2008, 1, 1);
  engine.bootstrap_administrator(std::string(kUsers[0].name));
  for (const auto& r : kRoles) {
    if (r.id == rbac::kAdministratorRole) continue;
    engine.register_role(root, {rbac::RoleId::parse(r.id), std::string(r.name), root}, when);
  }
  for (const auto& a : kAssignments) {
    engine.import_assignment({a.s_no, rbac::UserId{a.user_id}, rbac::RoleId::parse(a.role_id),
                              rbac::ValidityPeriod(Date::parse(a.valid_from), Date::parse(a.valid_upto)), root,
                              rbac::AssignmentKind::owner});
  }
}

}  // namespace ssogate::store
