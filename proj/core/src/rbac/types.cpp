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

#include "ssogate/rbac/types.hpp"

#include <algorithm>

#include "ssogate/error.hpp"

namespace ssogate::rbac {

bool RoleId::well_formed(std::string_view digits) noexcept {
  return !digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; });
}

RoleId RoleId::parse(std::string_view digits) {
  if (!well_formed(digits)) {
    fail(Errc::validation, "invalid-role-id", "role id must be a non-empty digit string, got '" + std::string(digits) + "'");
  }
  return RoleId(std::string(digits));
}

RoleScope classify_role_id(const RoleId& id) {
  const std::string& d = id.str();
  if (d.size() == 1) return RoleScope{};
  return RoleScope{RoleScope::Kind::local, d[0] - '0', d.substr(1)};
}

ValidityPeriod::ValidityPeriod(Date from, Date upto) : from_(from), upto_(upto) {
  if (upto < from) {
    fail(Errc::validation, "inverted-period",
         "valid_from " + from.to_string() + " is after valid_upto " + upto.to_string());
  }
}

std::string_view to_string(AssignmentKind kind) noexcept {
  return kind == AssignmentKind::owner ? "owner" : "delegated";
}

std::string_view to_string(DenyReason reason) noexcept {
  switch (reason) {
    case DenyReason::ok: return "ok";
    case DenyReason::no_role: return "no-role";
    case DenyReason::expired: return "expired";
    case DenyReason::no_privilege: return "no-privilege";
  }
  return "unknown";
}

}  // namespace ssogate::rbac
