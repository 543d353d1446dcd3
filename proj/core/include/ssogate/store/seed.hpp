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

#include <span>
#include <string_view>

#include "ssogate/store/store.hpp"

namespace ssogate::store {

struct SeedRole {
  std::string_view id;
  std::string_view name;
};

struct SeedUser {
  std::string_view name;
  std::uint64_t id;
};

struct SeedAssignment {
  std::uint64_t s_no;
  std::uint64_t user_id;
  std::string_view role_id;
  std::string_view valid_from;
  std::string_view valid_upto;
};

/// The academy's role table, user table and user-role relation.
std::span<const SeedRole> seed_roles();
std::span<const SeedUser> seed_users();
std::span<const SeedAssignment> seed_assignments();

/// Populates an empty store with exactly the three fixture tables. The first
/// user ("root") owns every role, which makes it the administrator.
/// Throws Error(validation, "store-not-empty") otherwise.
void load_seed_fixture(Store& store);

}  // namespace ssogate::store
