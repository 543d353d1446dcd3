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

#include "ssogate/rbac/codec.hpp"

#include <json.hpp>

#include "ssogate/error.hpp"

namespace ssogate::rbac::codec {

namespace {

using nlohmann::json;

template <typename F>
auto decoding(const std::string& payload, F&& f) {
  try {
    return f(json::parse(payload));
  } catch (const json::exception& e) {
    fail(Errc::storage, "corrupt-record", std::string("malformed record payload: ") + e.what());
  } catch (const Error& e) {
    fail(Errc::storage, "corrupt-record", std::string("invalid record payload: ") + e.what());
  }
}

}  // namespace

std::string encode(const UserRecord& user) { return json{{"id", user.id.value}, {"name", user.name}}.dump(); }

std::string encode(const RoleDescriptor& role) {
  return json{{"id", role.id.str()}, {"name", role.name}, {"owner", role.owner.value}}.dump();
}

std::string encode(const RoleAssignment& a) {
  return json{{"s_no", a.s_no},
              {"user_id", a.user.value},
              {"role_id", a.role.str()},
              {"valid_from", a.period.from().to_string()},
              {"valid_upto", a.period.upto().to_string()},
              {"assigner", a.assigner.value},
              {"kind", to_string(a.kind)}}
      .dump();
}

std::string encode(const Revocation& r) {
  return json{{"s_no", r.s_no}, {"actor", r.actor.value}, {"on", r.on.to_string()}}.dump();
}

std::string encode(const Privilege& p) {
  std::vector<std::string> roles;
  for (const auto& r : p.granted_to) roles.push_back(r.str());
  return json{{"id", p.id}, {"description", p.description}, {"granted_to", roles}}.dump();
}

UserRecord decode_user(const std::string& payload) {
  return decoding(payload, [](const json& j) {
    return UserRecord{UserId{j.at("id").get<std::uint64_t>()}, j.at("name").get<std::string>()};
  });
}

RoleDescriptor decode_role(const std::string& payload) {
  return decoding(payload, [](const json& j) {
    return RoleDescriptor{RoleId::parse(j.at("id").get<std::string>()), j.at("name").get<std::string>(),
                          UserId{j.at("owner").get<std::uint64_t>()}};
  });
}

RoleAssignment decode_assignment(const std::string& payload) {
  return decoding(payload, [](const json& j) {
    auto kind = j.at("kind").get<std::string>();
    if (kind != "owner" && kind != "delegated") fail(Errc::validation, "bad-kind", "unknown assignment kind");
    return RoleAssignment{j.at("s_no").get<std::uint64_t>(),
                          UserId{j.at("user_id").get<std::uint64_t>()},
                          RoleId::parse(j.at("role_id").get<std::string>()),
                          ValidityPeriod(Date::parse(j.at("valid_from").get<std::string>()),
                                         Date::parse(j.at("valid_upto").get<std::string>())),
                          UserId{j.at("assigner").get<std::uint64_t>()},
                          kind == "owner" ? AssignmentKind::owner : AssignmentKind::delegated};
  });
}

Revocation decode_revocation(const std::string& payload) {
  return decoding(payload, [](const json& j) {
    return Revocation{j.at("s_no").get<std::uint64_t>(), UserId{j.at("actor").get<std::uint64_t>()},
                      Date::parse(j.at("on").get<std::string>())};
  });
}

Privilege decode_privilege(const std::string& payload) {
  return decoding(payload, [](const json& j) {
    Privilege p{j.at("id").get<std::string>(), j.at("description").get<std::string>(), {}};
    for (const auto& r : j.at("granted_to")) p.granted_to.insert(RoleId::parse(r.get<std::string>()));
    return p;
  });
}

}  // namespace ssogate::rbac::codec
