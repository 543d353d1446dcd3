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

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "ssogate/time.hpp"

namespace ssogate::rbac {

struct UserId {
  std::uint64_t value = 0;
  friend constexpr auto operator<=>(const UserId&, const UserId&) = default;
};

inline std::string to_string(UserId id) { return std::to_string(id.value); }

/// Digit-string role identifier. One digit is a Global role; longer ids are
/// Local to the application named by the first digit.
class RoleId {
 public:
  /// Throws Error(validation, "invalid-role-id") unless `digits` is non-empty and all 0-9.
  static RoleId parse(std::string_view digits);
  static bool well_formed(std::string_view digits) noexcept;

  const std::string& str() const { return digits_; }

  friend auto operator<=>(const RoleId&, const RoleId&) = default;

 private:
  explicit RoleId(std::string digits) : digits_(std::move(digits)) {}
  std::string digits_;
};

struct RoleScope {
  enum class Kind { global, local };
  Kind kind = Kind::global;
  int app_id = -1;        // local only
  std::string role_code;  // local only: digits after the application digit

  bool is_global() const { return kind == Kind::global; }
  friend bool operator==(const RoleScope&, const RoleScope&) = default;
};

RoleScope classify_role_id(const RoleId& id);

struct RoleDescriptor {
  RoleId id;
  std::string name;
  UserId owner;

  RoleScope scope() const { return classify_role_id(id); }
};

struct UserRecord {
  UserId id;
  std::string name;
};

/// Inclusive calendar window.
class ValidityPeriod {
 public:
  /// Throws Error(validation, "inverted-period") when from > upto.
  ValidityPeriod(Date from, Date upto);

  Date from() const { return from_; }
  Date upto() const { return upto_; }
  bool contains(Date d) const { return from_ <= d && d <= upto_; }

  friend bool operator==(const ValidityPeriod&, const ValidityPeriod&) = default;

 private:
  Date from_;
  Date upto_;
};

enum class AssignmentKind { owner, delegated };

std::string_view to_string(AssignmentKind kind) noexcept;

struct RoleAssignment {
  std::uint64_t s_no = 0;
  UserId user;
  RoleId role;
  ValidityPeriod period;
  UserId assigner;
  AssignmentKind kind = AssignmentKind::owner;
};

struct Revocation {
  std::uint64_t s_no = 0;  // the revoked assignment
  UserId actor;
  Date on;
};

struct Privilege {
  std::string id;
  std::string description;
  std::set<RoleId> granted_to;
};

enum class AccessOutcome { permit, deny };
enum class DenyReason { ok, no_role, expired, no_privilege };

std::string_view to_string(DenyReason reason) noexcept;

struct AccessDecision {
  AccessOutcome outcome = AccessOutcome::deny;
  DenyReason reason = DenyReason::no_role;

  bool permitted() const { return outcome == AccessOutcome::permit; }
};

struct DelegationResult {
  RoleAssignment assignment;
  ValidityPeriod requested;
  bool start_clamped = false;
  bool end_clamped = false;

  bool clamped() const { return start_clamped || end_clamped; }
};

}  // namespace ssogate::rbac
