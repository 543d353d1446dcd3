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

#include <gtest/gtest.h>

#include <httplib.h>
#include <json.hpp>

#include "e2e_flow.hpp"
#include "test_support.hpp"

namespace ssogate::service {
namespace {

using nlohmann::json;

// Talks JSON to the gateway with a session minted for `user`.
class ApiClient {
 public:
  ApiClient(LocalStack& stack, std::optional<rbac::UserId> user) : client_(origin(stack.gateway_url())) {
    if (user) cookie_ = "ssogate_session=" + stack.gateway().mint_session(*user, "test");
  }

  std::pair<int, json> post(const std::string& path, const json& body) {
    return unpack(client_.Post(path, headers(), body.dump(), "application/json"));
  }
  std::pair<int, json> get(const std::string& path) { return unpack(client_.Get(path, headers())); }
  std::pair<int, json> del(const std::string& path) { return unpack(client_.Delete(path, headers())); }

 private:
  static std::string origin(const std::string& url) {
    Url u = Url::parse(url);
    return u.scheme + "://" + u.authority();
  }
  httplib::Headers headers() const {
    httplib::Headers h;
    if (!cookie_.empty()) h.emplace("Cookie", cookie_);
    return h;
  }
  static std::pair<int, json> unpack(const httplib::Result& r) {
    if (!r) return {0, json()};
    return {r->status, r->body.empty() ? json() : json::parse(r->body, nullptr, false)};
  }

  httplib::Client client_;
  std::string cookie_;
};

class Api : public ::testing::Test {
 protected:
  Api() : stack_(ssogate::testing::fast_stack_options()), admin_(stack_, stack_.gateway().administrator()) {}
  LocalStack stack_;
  ApiClient admin_;
};

TEST_F(Api, RequiresSession) {
  ApiClient anon(stack_, std::nullopt);
  auto [status, body] = anon.get("/api/users/root/roles");
  EXPECT_EQ(status, 401);
  EXPECT_EQ(body["cause"], "no-session");
}

TEST_F(Api, UsersRolesAssignments) {
  auto [s1, ram] = admin_.post("/api/users", {{"name", "ram"}});
  ASSERT_EQ(s1, 201);
  EXPECT_EQ(ram["name"], "ram");
  EXPECT_EQ(admin_.post("/api/users", {{"name", "pshayam"}}).first, 201);
  EXPECT_EQ(admin_.post("/api/users", {{"name", "ram"}}).first, 409);
  EXPECT_EQ(admin_.post("/api/users", json::object()).first, 400);

  auto [s2, role] = admin_.post("/api/roles", {{"id", "52"}, {"name", "HODCSE"}, {"owner", "ram"}});
  ASSERT_EQ(s2, 201);
  EXPECT_EQ(role["owner"], ram["id"]);
  EXPECT_EQ(role["scope"], "local");
  EXPECT_EQ(admin_.post("/api/roles", {{"id", "5x"}, {"name", "bad"}}).first, 400);

  auto [s3, a] = admin_.post("/api/assignments", {{"user", "ram"}, {"role", "HODCSE"}, {"from", "2009-01-01"},
                                                  {"upto", "2099-12-31"}});
  ASSERT_EQ(s3, 201) << a.dump();
  EXPECT_EQ(a["kind"], "owner");

  auto [s4, roles] = admin_.get("/api/users/ram/roles?at=2009-06-01");
  ASSERT_EQ(s4, 200);
  EXPECT_EQ(roles, json::array({"52"}));
  EXPECT_EQ(admin_.get("/api/users/nobody/roles").first, 404);

  auto [s5, holder] = admin_.get("/api/roles/52/holder?at=2009-06-01");
  ASSERT_EQ(s5, 200);
  EXPECT_EQ(holder["holder_name"], "ram");
  EXPECT_EQ(holder["at"], "2009-06-01");
}

TEST_F(Api, DelegationClampAndRevoke) {
  admin_.post("/api/users", {{"name", "ram"}});
  admin_.post("/api/users", {{"name", "pshayam"}});
  admin_.post("/api/roles", {{"id", "52"}, {"name", "HODCSE"}, {"owner", "ram"}});
  auto today = Date::of(system_clock()());
  auto end = today.plus_days(10);
  admin_.post("/api/assignments",
              {{"user", "ram"}, {"role", "52"}, {"from", today.to_string()}, {"upto", end.to_string()}});

  auto ram = stack_.engine().find_user(std::string_view("ram"))->id;
  ApiClient as_ram(stack_, ram);
  auto [status, d] = as_ram.post("/api/delegations", {{"to", "pshayam"},
                                                      {"role", "52"},
                                                      {"from", today.to_string()},
                                                      {"upto", today.plus_days(30).to_string()}});
  ASSERT_EQ(status, 201) << d.dump();
  EXPECT_TRUE(d["clamped"]);
  EXPECT_TRUE(d["end_clamped"]);
  EXPECT_FALSE(d["start_clamped"]);
  EXPECT_EQ(d["effective"]["upto"], end.to_string());
  EXPECT_EQ(d["requested"]["upto"], today.plus_days(30).to_string());

  auto [s2, holder] = admin_.get("/api/roles/52/holder");
  EXPECT_EQ(s2, 200);
  EXPECT_EQ(holder["holder_name"], "pshayam");

  auto pshayam = stack_.engine().find_user(std::string_view("pshayam"))->id;
  ApiClient as_pshayam(stack_, pshayam);
  auto s_no = d["assignment"]["s_no"].get<std::uint64_t>();
  EXPECT_EQ(as_pshayam.del("/api/assignments/" + std::to_string(s_no)).first, 403);
  EXPECT_EQ(as_ram.del("/api/assignments/abc").first, 400);
  EXPECT_EQ(as_ram.del("/api/assignments/9999").first, 404);
  EXPECT_EQ(as_ram.del("/api/assignments/" + std::to_string(s_no)).first, 204);
  EXPECT_EQ(admin_.get("/api/roles/52/holder").second["holder_name"], "ram");

  // A non-holder cannot delegate.
  auto [s3, refused] = as_pshayam.post("/api/delegations", {{"to", "ram"},
                                                            {"role", "52"},
                                                            {"from", today.to_string()},
                                                            {"upto", today.plus_days(1).to_string()}});
  EXPECT_EQ(s3, 403);
  EXPECT_FALSE(refused["cause"].get<std::string>().empty());
}

TEST_F(Api, NonAdminCannotCreateUsers) {
  auto user = stack_.engine().add_user("carol");
  ApiClient carol(stack_, user.id);
  auto [status, body] = carol.post("/api/users", {{"name", "mallory"}});
  EXPECT_EQ(status, 403);
  EXPECT_EQ(body["cause"], "privilege-violation");
}

TEST_F(Api, MalformedBody) {
  auto [status, body] = admin_.post("/api/assignments", json::array());
  EXPECT_EQ(status, 400);
}

}  // namespace
}  // namespace ssogate::service
