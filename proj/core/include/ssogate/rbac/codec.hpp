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

#include <string>

#include "ssogate/rbac/types.hpp"

namespace ssogate::rbac::codec {

// Canonical one-line JSON payloads for the persistence layer. decode_* throw
// Error(storage, "corrupt-record") on malformed input.

std::string encode(const UserRecord& user);
std::string encode(const RoleDescriptor& role);
std::string encode(const RoleAssignment& assignment);
std::string encode(const Revocation& revocation);
std::string encode(const Privilege& privilege);

UserRecord decode_user(const std::string& payload);
RoleDescriptor decode_role(const std::string& payload);
RoleAssignment decode_assignment(const std::string& payload);
Revocation decode_revocation(const std::string& payload);
Privilege decode_privilege(const std::string& payload);

}  // namespace ssogate::rbac::codec
