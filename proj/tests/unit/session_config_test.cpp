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

#include <filesystem>
#include <fstream>
#include <map>

#include <unistd.h>

#include "ssogate/crypto.hpp"
#include "ssogate/error.hpp"
#include "ssogate/service/config.hpp"
#include "ssogate/service/http_fetcher.hpp"
#include "ssogate/service/session.hpp"
#include "test_support.hpp"

namespace ssogate::service {
namespace {

const std::string kKeyHex(64, 'a');

SessionToken sample(Instant now) {
  SessionToken t;
  t.user = rbac::UserId{4};
  t.identity = "http://op.example/id/alice";
  t.groups = {std::string(kValidOpenIdUser)};
  t.roles = {"6", "12"};
  t.issued_at = now;
  t.expires_at = now + std::chrono::hours{8};
  t.roles_at = now;
  return t;
}

TEST(Session, RoundTrip) {
  SeededRandom rng(1);
  SessionCodec codec(SessionCodec::parse_key(kKeyHex));
  auto now = testing::at("2009-07-01T10:00:00Z");
  auto cookie = codec.mint(sample(now), rng);
  EXPECT_EQ(cookie.rfind("v1.", 0), 0u);
  EXPECT_EQ(cookie.find_first_of(" ;,\""), std::string::npos);
  auto back = codec.read(cookie, now);
  ASSERT_TRUE(back);
  EXPECT_EQ(*back, sample(now));
  EXPECT_NE(codec.mint(sample(now), rng), cookie);  // fresh IV
}

TEST(Session, Expiry) {
  SeededRandom rng(1);
  SessionCodec codec(SessionCodec::parse_key(kKeyHex));
  auto now = testing::at("2009-07-01T10:00:00Z");
  auto cookie = codec.mint(sample(now), rng);
  EXPECT_TRUE(codec.read(cookie, now + std::chrono::hours{8} - std::chrono::seconds{1}));
  EXPECT_FALSE(codec.read(cookie, now + std::chrono::hours{8}));
}

TEST(Session, TamperedCookiesNeverAuthenticate) {
  SeededRandom rng(1);
  SessionCodec codec(SessionCodec::parse_key(kKeyHex));
  auto now = testing::at("2009-07-01T10:00:00Z");
  auto cookie = codec.mint(sample(now), rng);
  for (std::size_t i = 0; i < cookie.size(); ++i) {
    for (char c : {'A', 'z', '-', '0'}) {
      if (cookie[i] == c) continue;
      std::string t = cookie;
      t[i] = c;
      auto got = codec.read(t, now);
      // A change confined to base64 padding bits may decode to the same bytes.
      if (got) {
        EXPECT_EQ(*got, sample(now)) << "position " << i;
      }
    }
  }
  EXPECT_FALSE(codec.read("", now));
  EXPECT_FALSE(codec.read("v1.", now));
  EXPECT_FALSE(codec.read("v2." + cookie.substr(3), now));
  EXPECT_FALSE(codec.read(cookie.substr(0, cookie.size() - 1), now));
  EXPECT_FALSE(codec.read(cookie + "A", now));
}

TEST(Session, RotatedKeyRejects) {
  SeededRandom rng(1);
  auto now = testing::at("2009-07-01T10:00:00Z");
  SessionCodec old_codec(SessionCodec::parse_key(kKeyHex));
  SessionCodec new_codec(SessionCodec::parse_key(std::string(64, 'b')));
  EXPECT_FALSE(new_codec.read(old_codec.mint(sample(now), rng), now));
}

TEST(Session, KeyParsing) {
  EXPECT_EQ(SessionCodec::parse_key(kKeyHex).size(), 32u);
  Bytes raw(32, 7);
  EXPECT_EQ(SessionCodec::parse_key(crypto::base64_encode(raw)), raw);
  EXPECT_EQ(SessionCodec::parse_key(crypto::base64url_encode(raw)), raw);
  for (const char* bad : {"", "short", "zz"}) {
    try {
      SessionCodec::parse_key(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.cause(), "invalid-server-key");
    }
  }
  EXPECT_THROW(SessionCodec(Bytes(16, 0)), Error);
}

EnvLookup env_of(std::map<std::string, std::string> vars) {
  return [vars](const std::string& name) -> std::optional<std::string> {
    auto it = vars.find(name);
    if (it == vars.end()) return std::nullopt;
    return it->second;
  };
}

TEST(Config, FromEnvironment) {
  auto cfg = load_config(std::nullopt, env_of({{"SSOGATE_SERVER_KEY", kKeyHex},
                                               {"SSOGATE_LISTEN", "0.0.0.0:9090"},
                                               {"SSOGATE_PUBLIC_URL", "https://sso.example/app"},
                                               {"SSOGATE_OP_ALLOWLIST", "http://op.a/,http://op.b/"},
                                               {"SSOGATE_STALENESS", "15"},
                                               {"SSOGATE_CLOCK_SKEW", "120"}}));
  EXPECT_EQ(cfg.listen_host, "0.0.0.0");
  EXPECT_EQ(cfg.listen_port, 9090);
  EXPECT_EQ(cfg.base_url(), "https://sso.example/app/");
  EXPECT_EQ(cfg.op_allowlist, (std::vector<std::string>{"http://op.a/", "http://op.b/"}));
  EXPECT_EQ(cfg.staleness, std::chrono::seconds{15});
  EXPECT_EQ(cfg.clock_skew, std::chrono::seconds{120});
  EXPECT_EQ(cfg.server_key.size(), 32u);
  EXPECT_FALSE(cfg.store_dir);
}

TEST(Config, Defaults) {
  auto cfg = load_config(std::nullopt, env_of({{"SSOGATE_SERVER_KEY", kKeyHex}}));
  EXPECT_EQ(cfg.base_url(), "http://127.0.0.1:8080/");
  EXPECT_EQ(cfg.staleness, std::chrono::seconds{60});
  EXPECT_EQ(cfg.clock_skew, std::chrono::seconds{300});
  EXPECT_EQ(cfg.session_ttl, std::chrono::hours{8});
}

TEST(Config, MissingKey) {
  try {
    load_config(std::nullopt, env_of({}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::config);
    EXPECT_EQ(e.cause(), "missing-server-key");
  }
}

TEST(Config, FileThenEnvOverride) {
  auto path = std::filesystem::temp_directory_path() / ("ssogate-config-" + std::to_string(::getpid()) + ".json");
  {
    std::ofstream out(path);
    out << R"({"listen":"127.0.0.1:7000","server_key":")" << kKeyHex
        << R"(","staleness":5,"session_ttl":60,"store_dir":"/tmp/x","op_allowlist":["http://op/"]})";
  }
  auto cfg = load_config(path, env_of({{"SSOGATE_LISTEN", "127.0.0.1:7001"}}));
  EXPECT_EQ(cfg.listen_port, 7001);
  EXPECT_EQ(cfg.staleness, std::chrono::seconds{5});
  EXPECT_EQ(cfg.session_ttl, std::chrono::seconds{60});
  EXPECT_EQ(cfg.store_dir, std::filesystem::path("/tmp/x"));
  {
    std::ofstream out(path);
    out << "{not json";
  }
  EXPECT_THROW(load_config(path, env_of({{"SSOGATE_SERVER_KEY", kKeyHex}})), Error);
  std::filesystem::remove(path);
  EXPECT_THROW(load_config(path, env_of({{"SSOGATE_SERVER_KEY", kKeyHex}})), Error);
}

TEST(Config, ListenParsing) {
  EXPECT_EQ(parse_listen("localhost:80"), (std::pair<std::string, int>{"localhost", 80}));
  for (const char* bad : {"nohost", ":80", "h:", "h:99999", "h:x"}) EXPECT_THROW(parse_listen(bad), Error) << bad;
  EXPECT_THROW(load_config(std::nullopt, env_of({{"SSOGATE_SERVER_KEY", kKeyHex}, {"SSOGATE_STALENESS", "-1"}})),
               Error);
}

TEST(HttpFetcher, ResolveReference) {
  EXPECT_EQ(resolve_reference("http://a/b/c", "http://x/y"), "http://x/y");
  EXPECT_EQ(resolve_reference("http://a/b/c", "/d"), "http://a/d");
  EXPECT_EQ(resolve_reference("http://a:8/b/c", "d"), "http://a:8/b/d");
  EXPECT_EQ(resolve_reference("http://a/b/c?q", "?r"), "http://a/b/c?r");
}

}  // namespace
}  // namespace ssogate::service
