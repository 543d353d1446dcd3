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

#include "openid_harness.hpp"
#include "ssogate/crypto.hpp"
#include "ssogate/error.hpp"
#include "ssogate/openid/discovery.hpp"
#include "ssogate/openid/op.hpp"

namespace ssogate::openid {
namespace {

using testing::OpenIdHarness;

std::string cause_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.cause();
  }
  return "none";
}

TEST(Passwords, HashAndVerify) {
  SeededRandom rng(1);
  PasswordHasher hasher(64);
  auto rec = hasher.hash("wonderland", rng);
  EXPECT_EQ(rec.iterations, 64u);
  EXPECT_EQ(rec.salt.size(), 16u);
  EXPECT_EQ(rec.digest.size(), 32u);
  EXPECT_TRUE(hasher.verify(rec, "wonderland"));
  EXPECT_FALSE(hasher.verify(rec, "Wonderland"));
  EXPECT_FALSE(hasher.verify(rec, ""));
  auto again = hasher.hash("wonderland", rng);
  EXPECT_NE(again.salt, rec.salt);
}

TEST(Passwords, RecordMatchesPbkdf2) {
  SeededRandom rng(1);
  auto rec = PasswordHasher(4096).hash("password", rng);
  rec.salt = Bytes{'s', 'a', 'l', 't'};
  rec.digest = *crypto::hex_decode("c5e478d59288c841aa530db6845c4c8d962893a001ce4e11a4963873aa98134a");
  EXPECT_TRUE(PasswordHasher(4096).verify(rec, "password"));
}

TEST(Passwords, RecordText) {
  SeededRandom rng(1);
  auto rec = PasswordHasher(32).hash("pw", rng);
  auto text = rec.str();
  EXPECT_EQ(text.rfind("pbkdf2-sha256$32$", 0), 0u) << text;
  auto back = PasswordRecord::parse(text);
  EXPECT_EQ(back.salt, rec.salt);
  EXPECT_EQ(back.digest, rec.digest);
  EXPECT_TRUE(PasswordHasher(32).verify(back, "pw"));
  for (const char* bad : {"", "pbkdf2-sha256$x$AA$AA", "a$b$c", "pbkdf2-sha256$0$AA$AA", "pbkdf2-sha256$5$!!$AA"}) {
    EXPECT_EQ(cause_of([&] { PasswordRecord::parse(bad); }), "invalid-password-record") << bad;
  }
}

TEST(Provider, Accounts) {
  OpenIdHarness h;
  auto& op = h.op();
  EXPECT_EQ(cause_of([&] { op.add_account("alice", "x"); }), "account-exists");
  EXPECT_EQ(cause_of([&] { op.add_account("", "x"); }), "invalid-user-name");
  EXPECT_EQ(cause_of([&] { op.add_account("a/b", "x"); }), "invalid-user-name");
  EXPECT_EQ(op.authenticate_user("alice", "wonderland"), "alice");
  EXPECT_FALSE(op.authenticate_user("alice", "nope"));
  EXPECT_FALSE(op.authenticate_user("nobody", "wonderland"));
  EXPECT_EQ(op.identity_url("alice"), "http://op.example/id/alice");
  EXPECT_EQ(op.user_for_identity("http://op.example/id/alice"), "alice");
  EXPECT_FALSE(op.user_for_identity("http://op.example/id/"));
  EXPECT_FALSE(op.user_for_identity("http://elsewhere/id/alice"));
}

TEST(Provider, DiscoveryDocuments) {
  OpenIdHarness h;
  auto page = html_discover(h.op().identity_page("alice"), "http://op.example/id/alice");
  ASSERT_EQ(page.size(), 2u);
  EXPECT_EQ(page[0].endpoint_url, h.op().options().endpoint_url);
  EXPECT_EQ(page[0].op_local_id(), "http://op.example/id/alice");
  auto eps = parse_xrds(h.op().xrds_document("alice")).endpoints("http://op.example/id/alice");
  ASSERT_EQ(eps.size(), 2u);
  EXPECT_EQ(eps[0].version, ProtocolVersion::v2_0);
  EXPECT_EQ(eps[1].version, ProtocolVersion::v1_1);
  EXPECT_EQ(h.op().xrds_url("alice"), "http://op.example/id/alice/xrds");
}

TEST(Provider, ParseCheckidErrors) {
  OpenIdHarness h;
  auto base = Message::v2();
  base.set("mode", "checkid_setup")
      .set("return_to", "http://rp.example/finish")
      .set("realm", "http://rp.example/")
      .set("identity", "http://op.example/id/alice")
      .set("claimed_id", "http://op.example/id/alice");
  EXPECT_EQ(h.op().parse_checkid(base).realm, "http://rp.example/");
  auto with = [&](const char* k, const char* v) {
    Message m = base;
    if (v) {
      m.set(k, v);
    } else {
      m.erase(k);
    }
    return cause_of([&] { h.op().parse_checkid(m); });
  };
  EXPECT_EQ(with("mode", "checkid_immediate"), "unsupported-mode");
  EXPECT_EQ(with("return_to", nullptr), "missing-return-to");
  EXPECT_EQ(with("realm", "http://other.example/"), "realm-mismatch");
  EXPECT_EQ(with("identity", nullptr), "missing-identity");
  EXPECT_EQ(with("claimed_id", nullptr), "missing-claimed-id");
  Message no_realm = base;
  no_realm.erase("realm");
  EXPECT_EQ(h.op().parse_checkid(no_realm).realm, "http://rp.example/finish");
}

TEST(Provider, RespondGuards) {
  OpenIdHarness h;
  auto [req, url] = h.start(h.identity("alice"));
  auto checkid = h.op().parse_checkid(Message::from_params(OpenIdHarness::query_of(url)));
  auto now = h.clock().now();
  EXPECT_EQ(cause_of([&] { h.op().respond(checkid, "alice", {"http://other/", Decision::approve_once, now}); }),
            "undisplayed-realm");
  EXPECT_EQ(cause_of([&] { h.op().respond(checkid, "bob", {checkid.realm, Decision::approve_once, now}); }),
            "identity-not-owned");
  auto deny = h.op().respond(checkid, "alice", {checkid.realm, Decision::deny, now});
  EXPECT_EQ(Message::from_params(OpenIdHarness::query_of(deny)).value("mode"), "cancel");
  ASSERT_EQ(h.op().decisions().size(), 2u);
  EXPECT_EQ(h.op().decisions()[1].decision.decision, Decision::deny);
}

TEST(Provider, IdentifierSelect) {
  OpenIdHarness h;
  auto [req, url] = h.start(h.identity("alice"));
  auto checkid = h.op().parse_checkid(Message::from_params(OpenIdHarness::query_of(url)));
  checkid.identity = checkid.claimed_id = std::string(kIdentifierSelect);
  auto cb = Message::from_params(OpenIdHarness::query_of(
      h.op().respond(checkid, "bob", {checkid.realm, Decision::approve_once, h.clock().now()})));
  EXPECT_EQ(cb.value("identity"), "http://op.example/id/bob");
  EXPECT_EQ(cb.value("claimed_id"), "http://op.example/id/bob");
}

TEST(Provider, CheckidSetupNeedsLogin) {
  OpenIdHarness h;
  auto [req, url] = h.start(h.identity("alice"));
  auto msg = Message::from_params(OpenIdHarness::query_of(url));
  EXPECT_EQ(cause_of([&] { h.op().handle_checkid_setup(msg, std::nullopt, nullptr); }), "login-required");
  auto out = h.op().handle_checkid_setup(msg, std::string("alice"), [&](const CheckidRequest& r, const std::string&) {
    return ApprovalDecision{r.realm, Decision::approve_once, h.clock().now()};
  });
  EXPECT_EQ(h.finish(OpenIdHarness::query_of(out), req.session_key).status, AuthStatus::success);
}

TEST(Provider, SignedFieldsPerVersion) {
  OpenIdHarness h;
  auto [cb, key] = h.captured_success();
  auto msg = Message::from_params(cb);
  auto signed_list = SignedFieldList::parse(msg.value("signed"));
  for (auto f : {"op_endpoint", "claimed_id", "identity", "return_to", "response_nonce", "assoc_handle", "mode",
                 "ns.sreg", "sreg.email"}) {
    EXPECT_TRUE(signed_list.contains(f)) << f;
  }
}

TEST(Provider, CheckAuthenticationIsSingleUse) {
  testing::HarnessOptions opts;
  opts.consumer.use_associations = false;
  OpenIdHarness h(opts);
  auto [cb, key] = h.captured_success();
  auto msg = Message::from_params(cb);
  msg.set("mode", "check_authentication");
  EXPECT_EQ(h.op().handle_check_authentication(msg).body.value("is_valid"), "true");
  EXPECT_EQ(h.op().handle_check_authentication(msg).body.value("is_valid"), "false");

  auto [cb2, key2] = h.captured_success();
  auto forged = Message::from_params(cb2);
  forged.set("mode", "check_authentication").set("identity", "http://op.example/id/bob");
  EXPECT_EQ(h.op().handle_check_authentication(forged).body.value("is_valid"), "false");
  Message wrong = Message::v2();
  wrong.set("mode", "associate");
  EXPECT_EQ(h.op().handle_check_authentication(wrong).status, 400);
}

TEST(Provider, SharedHandlesAreNotCheckable) {
  OpenIdHarness h;
  auto [cb, key] = h.captured_success();
  auto msg = Message::from_params(cb);
  msg.set("mode", "check_authentication");
  EXPECT_EQ(h.op().handle_check_authentication(msg).body.value("is_valid"), "false");
}

TEST(Provider, PrivateHandlesExpire) {
  testing::HarnessOptions opts;
  opts.consumer.use_associations = false;
  OpenIdHarness h(opts);
  auto [cb, key] = h.captured_success();
  h.clock().advance(std::chrono::seconds{301});
  auto msg = Message::from_params(cb);
  msg.set("mode", "check_authentication");
  EXPECT_EQ(h.op().handle_check_authentication(msg).body.value("is_valid"), "false");
}

TEST(Provider, AssociateStatusCodes) {
  OpenIdHarness h;
  SeededRandom rng(2);
  auto req = make_association_request(AssocType::hmac_sha256, SessionType::dh_sha256, DhParams::openid_default(), rng);
  EXPECT_EQ(h.op().handle_associate(req.to_message()).status, 200);
  Message bad = Message::v2();
  bad.set("mode", "associate").set("assoc_type", "HMAC-MD5").set("session_type", "DH-SHA1");
  EXPECT_EQ(h.op().handle_associate(bad).status, 400);
}

}  // namespace
}  // namespace ssogate::openid
