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

#include "openid_props.hpp"
#include "ssogate/error.hpp"
#include "ssogate/openid/message.hpp"
#include "ssogate/openid/signing.hpp"

namespace ssogate::openid {
namespace {

TEST(Message, KvEncodeDecode) {
  Message m = Message::v2();
  m.set("mode", "id_res").set("identity", "http://x/y:z");
  EXPECT_EQ(kv_encode(m), "ns:http://specs.openid.net/auth/2.0\nmode:id_res\nidentity:http://x/y:z\n");
  EXPECT_EQ(kv_decode(kv_encode(m)), m);
  EXPECT_EQ(kv_decode("a:b").value("a"), "b");
  EXPECT_EQ(m.version(), ProtocolVersion::v2_0);
  EXPECT_EQ(Message().version(), ProtocolVersion::v1_1);
}

TEST(Message, KvRejectsMalformed) {
  try {
    kv_decode("no colon here\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::protocol);
    EXPECT_EQ(e.cause(), "kv-parse-error");
  }
  EXPECT_THROW(kv_decode("bad key:v\n"), Error);
  Message m;
  m.set("k", "line\nbreak");
  EXPECT_THROW(kv_encode(m), Error);
}

TEST(Message, SetReplacesInPlace) {
  Message m;
  m.set("a", "1").set("b", "2").set("a", "3");
  ASSERT_EQ(m.fields().size(), 2u);
  EXPECT_EQ(m.fields()[0].second, "3");
  EXPECT_TRUE(m.erase("a"));
  EXPECT_FALSE(m.erase("a"));
  EXPECT_FALSE(m.get("a"));
}

TEST(Message, IndirectAndParams) {
  Message m = Message::v2();
  m.set("mode", "checkid_setup").set("return_to", "http://rp/x?a=b&c");
  auto url = indirect_encode(m, "http://op.example/server?x=1");
  EXPECT_EQ(url.rfind("http://op.example/server?x=1&openid.ns=", 0), 0u) << url;
  auto back = Message::from_params(testing::OpenIdHarness::query_of(url));
  EXPECT_EQ(back, m);
  EXPECT_THROW(indirect_encode(m, "not a url"), Error);
  auto body = form_body(m);
  EXPECT_EQ(Message::from_params(form_decode(body)), m);
  EXPECT_EQ(Message::from_params({{"x", "1"}, {"openid.", "2"}}).fields().size(), 0u);
}

TEST(Message, KvRoundTripProperty) {
  auto rep = testing::kv_roundtrips(2000, 5);
  EXPECT_TRUE(rep.ok()) << rep.first_failure;
}

TEST(Signing, KnownAnswers) {
  auto rep = testing::hmac_known_answers();
  EXPECT_TRUE(rep.ok()) << rep.first_failure;
}

TEST(Signing, SignVerifyAndTamper) {
  SeededRandom rng(4);
  Association a{"handle", rng.bytes(32), AssocType::hmac_sha256, testing::at("2009-07-01T00:00:00Z"),
                std::chrono::seconds{600}};
  Message m = Message::v2();
  m.set("mode", "id_res").set("identity", "http://op/id/alice").set("return_to", "http://rp/");
  sign_in_place(m, a, SignedFieldList({"mode", "identity", "return_to", "assoc_handle"}));
  EXPECT_EQ(m.value("signed"), "mode,identity,return_to,assoc_handle");
  EXPECT_TRUE(verify_signature(m, a));

  Message t = m;
  t.set("identity", "http://op/id/mallory");
  EXPECT_FALSE(verify_signature(t, a));
  t = m;
  t.set("sig", "AAAA");
  EXPECT_FALSE(verify_signature(t, a));
  t = m;
  t.set("signed", "mode,identity,return_to,assoc_handle,missing");
  EXPECT_FALSE(verify_signature(t, a));
  t = m;
  t.erase("sig");
  EXPECT_FALSE(verify_signature(t, a));
  // Unsigned extra fields do not affect the signature.
  t = m;
  t.set("extra", "x");
  EXPECT_TRUE(verify_signature(t, a));
  Association other = a;
  other.mac_key[0] ^= 1;
  EXPECT_FALSE(verify_signature(m, other));
}

TEST(Signing, AssociationLifetime) {
  Association a{"h", Bytes(20, 1), AssocType::hmac_sha1, testing::at("2009-07-01T00:00:00Z"), std::chrono::seconds{60}};
  EXPECT_FALSE(a.expired(testing::at("2009-07-01T00:00:59Z")));
  EXPECT_TRUE(a.expired(testing::at("2009-07-01T00:01:00Z")));
  a.validate();
  a.mac_key.resize(5);
  EXPECT_THROW(a.validate(), Error);
  a.mac_key.resize(20);
  a.handle = "bad handle";
  EXPECT_THROW(a.validate(), Error);
  EXPECT_EQ(parse_assoc_type("HMAC-SHA256"), AssocType::hmac_sha256);
  EXPECT_FALSE(parse_assoc_type("HMAC-MD5"));
}

TEST(Signing, SignedFieldList) {
  auto l = SignedFieldList::parse("a,b,c");
  EXPECT_EQ(l.names().size(), 3u);
  EXPECT_EQ(l.join(), "a,b,c");
  EXPECT_TRUE(l.contains("b"));
  EXPECT_FALSE(l.contains("d"));
  EXPECT_TRUE(SignedFieldList::parse("").names().empty());
}

TEST(Nonce, FormatAndParse) {
  SeededRandom rng(8);
  auto n = generate_nonce(testing::at("2005-05-15T17:11:51Z"), rng);
  auto s = n.str();
  EXPECT_EQ(s.substr(0, 20), "2005-05-15T17:11:51Z");
  EXPECT_EQ(s.size(), 20 + kNonceSaltLength);
  auto p = Nonce::parse(s);
  EXPECT_EQ(p.timestamp, n.timestamp);
  EXPECT_EQ(p.salt, n.salt);
  EXPECT_THROW(Nonce::parse("2005-05-15"), Error);
  EXPECT_THROW(Nonce::parse("xxxx-05-15T17:11:51Zabc"), Error);
}

}  // namespace
}  // namespace ssogate::openid
