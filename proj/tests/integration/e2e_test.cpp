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

#include <chrono>

#include "e2e_flow.hpp"
#include "test_support.hpp"

namespace ssogate::service {
namespace {

using ssogate::testing::capture_callback;
using ssogate::testing::fast_stack_options;
using ssogate::testing::kSessionCookieName;

std::string error_text(const Browser::Response& r) { return text_of_class(r.body, "error").value_or(""); }

TEST(EndToEnd, SuccessCarriesOpenIdRoleAndEmail) {
  LocalStack stack(fast_stack_options());
  Browser browser;
  auto result = scripted_login(browser, {stack.gateway_url(), stack.identity_url("alice"), "alice", "wonderland"});
  ASSERT_TRUE(result.success) << result.failed_step << ": " << result.message;
  EXPECT_EQ(result.message, "You have successfully verified " + stack.identity_url("alice") +
                                " as your identity. You also returned 'alice@example.org' as your email.");
  EXPECT_EQ(result.identity, stack.identity_url("alice"));
  EXPECT_EQ(result.email, "alice@example.org");
  EXPECT_EQ(result.home_status, 200);

  auto cookie = browser.cookie(stack.gateway_url(), kSessionCookieName);
  ASSERT_TRUE(cookie);
  auto token = stack.gateway().sessions().read(*cookie, system_clock()());
  ASSERT_TRUE(token);
  EXPECT_TRUE(token->roles.count(kOpenIdRole));
  EXPECT_EQ(token->identity, stack.identity_url("alice"));
  EXPECT_FALSE(browser.cookie(stack.gateway_url(), std::string(kPendingAuthCookie)));

  auto binding = stack.gateway().find_binding(stack.identity_url("alice"));
  ASSERT_TRUE(binding);
  EXPECT_TRUE(binding->auto_roles.count(kOpenIdRole));
}

TEST(EndToEnd, SuccessWithoutEmail) {
  LocalStack stack(fast_stack_options());
  Browser browser;
  auto result = scripted_login(browser, {stack.gateway_url(), stack.identity_url("bob"), "bob", "builder"});
  ASSERT_TRUE(result.success) << result.message;
  EXPECT_EQ(result.message, "You have successfully verified " + stack.identity_url("bob") + " as your identity.");
  EXPECT_FALSE(result.email);
}

TEST(EndToEnd, SecondLoginReusesBinding) {
  LocalStack stack(fast_stack_options());
  Browser first;
  ASSERT_TRUE(scripted_login(first, {stack.gateway_url(), stack.identity_url("alice"), "alice", "wonderland"}).success);
  auto users = stack.engine().users().size();
  Browser second;
  ASSERT_TRUE(scripted_login(second, {stack.gateway_url(), stack.identity_url("alice"), "alice", "wonderland"}).success);
  EXPECT_EQ(stack.engine().users().size(), users);
}

TEST(EndToEnd, CancelShowsMessage) {
  LocalStack stack(fast_stack_options());
  Browser browser;
  auto result =
      scripted_login(browser, {stack.gateway_url(), stack.identity_url("alice"), "alice", "wonderland", false});
  EXPECT_FALSE(result.success);
  EXPECT_EQ(result.message, "Verification cancelled.");
  EXPECT_FALSE(browser.cookie(stack.gateway_url(), kSessionCookieName));
  EXPECT_FALSE(browser.cookie(stack.gateway_url(), std::string(kPendingAuthCookie)));
}

TEST(EndToEnd, EmptyIdentity) {
  LocalStack stack(fast_stack_options());
  Browser browser;
  auto r = browser.get(stack.gateway_url() + "try_auth?openid_url=");
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(error_text(r), "Expected an OpenID URL.");

  auto result = scripted_login(browser, {stack.gateway_url(), "", "alice", "wonderland"});
  EXPECT_EQ(result.failed_step, "try_auth");
  EXPECT_EQ(result.message, "Expected an OpenID URL.");
}

TEST(EndToEnd, UnreachableIdentity) {
  LocalStack stack(fast_stack_options());
  Browser browser;
  auto r = browser.get(stack.gateway_url() + "try_auth?openid_url=" + percent_encode("http://127.0.0.1:1/nobody"));
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(error_text(r), "Authentication error.");
}

TEST(EndToEnd, WrongPasswordStaysAtProvider) {
  LocalStack stack(fast_stack_options());
  Browser browser;
  auto result = scripted_login(browser, {stack.gateway_url(), stack.identity_url("alice"), "alice", "nope"});
  EXPECT_FALSE(result.success);
  EXPECT_EQ(result.failed_step, "provider-login");
}

TEST(EndToEnd, ForgedCallbackRejected) {
  LocalStack stack(fast_stack_options());
  auto captured = capture_callback(stack, "alice", "wonderland");
  ASSERT_TRUE(captured.error.empty()) << captured.error;
  std::string url = captured.url;
  auto pos = url.find("openid.sig=");
  ASSERT_NE(pos, std::string::npos);
  pos += 11;
  url[pos] = url[pos] == 'A' ? 'B' : 'A';
  auto r = captured.browser.get(url);
  EXPECT_EQ(r.status, 401);
  EXPECT_FALSE(captured.browser.cookie(stack.gateway_url(), kSessionCookieName));
}

TEST(EndToEnd, ReplayedCallbackFails) {
  LocalStack stack(fast_stack_options());
  auto out = ssogate::testing::replay_callbacks(stack, 100);
  ASSERT_TRUE(out.error.empty()) << out.error;
  EXPECT_EQ(out.first_status, 200);
  EXPECT_EQ(out.replay_status, 401);
  EXPECT_EQ(out.concurrent_total, 100);
  EXPECT_EQ(out.concurrent_successes, 1);
}

TEST(Guard, UnauthenticatedRedirectsToLogin) {
  LocalStack stack(fast_stack_options());
  Browser browser;
  auto r = browser.get(stack.gateway_url());
  EXPECT_EQ(r.status, 303);
  EXPECT_EQ(r.location(), stack.gateway_url() + "login");
  auto api = browser.get(stack.gateway_url() + "api/users/1/roles");
  EXPECT_EQ(api.status, 401);
}

TEST(Guard, PrivilegeViolationLogsOut) {
  LocalStack stack(fast_stack_options());
  Browser browser;
  ASSERT_TRUE(scripted_login(browser, {stack.gateway_url(), stack.identity_url("alice"), "alice", "wonderland"}).success);
  ASSERT_EQ(browser.get(stack.gateway_url()).status, 200);

  auto denied = browser.get(stack.gateway_url() + "admin");
  EXPECT_EQ(denied.status, 303);
  bool cleared = false;
  for (const auto& [k, v] : denied.headers) {
    if (k == "Set-Cookie" && v.rfind(std::string(kSessionCookieName) + "=", 0) == 0 &&
        v.find("Max-Age=0") != std::string::npos) {
      cleared = true;
    }
  }
  EXPECT_TRUE(cleared);
  EXPECT_FALSE(browser.cookie(stack.gateway_url(), kSessionCookieName));

  auto next = browser.get(stack.gateway_url());
  EXPECT_EQ(next.status, 303);
  EXPECT_EQ(next.location(), stack.gateway_url() + "login");
}

TEST(Guard, ApiPrivilegeViolationIs403) {
  LocalStack stack(fast_stack_options());
  Browser browser;
  ASSERT_TRUE(scripted_login(browser, {stack.gateway_url(), stack.identity_url("alice"), "alice", "wonderland"}).success);
  auto r = browser.post_form(stack.gateway_url() + "api/users", {{"name", "mallory"}});
  EXPECT_EQ(r.status, 403);
  EXPECT_FALSE(browser.cookie(stack.gateway_url(), kSessionCookieName));
  EXPECT_EQ(browser.get(stack.gateway_url() + "api/users/1/roles").status, 401);
}

TEST(Guard, TamperedCookiesNeverAuthenticate) {
  LocalStack stack(fast_stack_options());
  Browser browser;
  ASSERT_TRUE(scripted_login(browser, {stack.gateway_url(), stack.identity_url("alice"), "alice", "wonderland"}).success);
  auto good = *browser.cookie(stack.gateway_url(), kSessionCookieName);
  int checked = 0;
  for (const auto& bad : ssogate::testing::tampered_variants(good)) {
    Browser b;
    b.set_cookie(stack.gateway_url(), kSessionCookieName, bad);
    auto r = b.get(stack.gateway_url());
    EXPECT_EQ(r.status, 303) << bad;
    ++checked;
  }
  EXPECT_GT(checked, 50);
  Browser ok;
  ok.set_cookie(stack.gateway_url(), kSessionCookieName, good);
  EXPECT_EQ(ok.get(stack.gateway_url()).status, 200);
}

TEST(Guard, LogoutClearsSession) {
  LocalStack stack(fast_stack_options());
  Browser browser;
  ASSERT_TRUE(scripted_login(browser, {stack.gateway_url(), stack.identity_url("alice"), "alice", "wonderland"}).success);
  auto r = browser.get(stack.gateway_url() + "logout");
  EXPECT_EQ(r.status, 303);
  EXPECT_FALSE(browser.cookie(stack.gateway_url(), kSessionCookieName));
  EXPECT_EQ(browser.get(stack.gateway_url()).status, 303);
}

TEST(Guard, LoginPageRedirectsSignedInUser) {
  LocalStack stack(fast_stack_options());
  Browser browser;
  EXPECT_EQ(browser.get(stack.gateway_url() + "login").status, 200);
  ASSERT_TRUE(scripted_login(browser, {stack.gateway_url(), stack.identity_url("alice"), "alice", "wonderland"}).success);
  auto r = browser.get(stack.gateway_url() + "login");
  EXPECT_EQ(r.status, 303);
  EXPECT_EQ(r.location(), stack.gateway_url());
}

TEST(Session, RolesRefreshAfterStaleness) {
  ssogate::testing::ManualClock clock(ssogate::testing::at("2009-07-01T10:00:00Z"));
  auto options = fast_stack_options();
  options.clock = clock.fn();
  options.staleness = std::chrono::seconds{60};
  LocalStack stack(options);
  Browser browser;
  ASSERT_TRUE(scripted_login(browser, {stack.gateway_url(), stack.identity_url("alice"), "alice", "wonderland"}).success);

  auto& engine = stack.engine();
  auto admin = stack.gateway().administrator();
  auto user = stack.gateway().find_binding(stack.identity_url("alice"))->user;
  engine.register_role(admin, {rbac::RoleId::parse("7"), "LIBRARIAN", admin}, Date(2009, 7, 1));
  engine.assign_owner_role(admin, user, rbac::RoleId::parse("7"),
                           rbac::ValidityPeriod(Date(2009, 7, 1), Date(2009, 7, 31)), Date(2009, 7, 1));

  auto roles_of = [](const Browser::Response& r) { return text_of_class(r.body, "roles").value_or(r.body); };
  auto before = browser.get(stack.gateway_url());
  ASSERT_EQ(before.status, 200);
  EXPECT_EQ(before.body.find("LIBRARIAN"), std::string::npos) << roles_of(before);

  clock.advance(std::chrono::seconds{61});
  auto old_cookie = *browser.cookie(stack.gateway_url(), kSessionCookieName);
  auto after = browser.get(stack.gateway_url());
  ASSERT_EQ(after.status, 200);
  EXPECT_NE(after.body.find("LIBRARIAN"), std::string::npos);
  EXPECT_NE(*browser.cookie(stack.gateway_url(), kSessionCookieName), old_cookie);
}

}  // namespace
}  // namespace ssogate::service
