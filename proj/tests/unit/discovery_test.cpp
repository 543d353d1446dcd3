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

#include <map>

#include "ssogate/error.hpp"
#include "ssogate/openid/discovery.hpp"

namespace ssogate::openid {
namespace {

class MapFetcher : public Fetcher {
 public:
  HttpResponse get(const std::string& url, const Headers& headers) override {
    ++gets;
    last_accept = headers.count("accept") ? headers.at("accept") : "";
    auto it = pages.find(url);
    if (it == pages.end()) {
      HttpResponse r;
      r.status = 404;
      r.final_url = url;
      return r;
    }
    HttpResponse r = it->second;
    if (r.final_url.empty()) r.final_url = url;
    return r;
  }
  HttpResponse post(const std::string&, const std::string&, const std::string&) override {
    fail(Errc::network, "unexpected-post", "no posts here");
  }
  std::map<std::string, HttpResponse> pages;
  int gets = 0;
  std::string last_accept;
};

HttpResponse html(std::string body) {
  HttpResponse r;
  r.status = 200;
  r.headers["Content-Type"] = "text/html";
  r.body = std::move(body);
  return r;
}

HttpResponse xrds(std::string body) {
  HttpResponse r;
  r.status = 200;
  r.headers["Content-Type"] = "application/xrds+xml; charset=utf-8";
  r.body = std::move(body);
  return r;
}

const char* kXrds = R"xml(<?xml version="1.0" encoding="UTF-8"?>
<xrds:XRDS xmlns:xrds="xri://$xrds" xmlns="xri://$xrd*($v*2.0)">
  <XRD>
    <Service priority="10">
      <Type>http://openid.net/signon/1.1</Type>
      <URI>http://op.example/v1</URI>
      <openid:Delegate xmlns:openid="http://openid.net/xmlns/1.0">http://op.example/id/alice</openid:Delegate>
    </Service>
    <Service priority="0">
      <Type>http://specs.openid.net/auth/2.0/signon</Type>
      <URI priority="5">http://op.example/b</URI>
      <URI priority="1">http://op.example/a</URI>
      <LocalID>http://op.example/id/alice</LocalID>
    </Service>
    <Service>
      <Type>http://example.com/unrelated</Type>
      <URI>http://op.example/other</URI>
    </Service>
  </XRD>
</xrds:XRDS>)xml";

TEST(Normalize, Rules) {
  EXPECT_EQ(normalize("example.com").normalized, "http://example.com/");
  EXPECT_EQ(normalize("  HTTP://Example.com/user#frag ").normalized, "http://example.com/user");
  EXPECT_EQ(normalize("https://example.com:8443/x?y=1").normalized, "https://example.com:8443/x?y=1");
  EXPECT_EQ(normalize("example.com").raw, "example.com");
}

TEST(Normalize, Errors) {
  auto cause = [](std::string_view raw) {
    try {
      normalize(raw);
    } catch (const Error& e) {
      return e.cause();
    }
    return std::string("none");
  };
  EXPECT_EQ(cause(""), "empty-identifier");
  EXPECT_EQ(cause("   "), "empty-identifier");
  EXPECT_EQ(cause("=example"), "unsupported-identifier");
  EXPECT_EQ(cause("xri://=example"), "unsupported-identifier");
  EXPECT_EQ(cause("ftp://example.com/"), "invalid-identifier");
  EXPECT_EQ(cause("http://bad host/"), "invalid-identifier");
  try {
    normalize("");
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "Expected an OpenID URL.");
  }
}

TEST(Xrds, PriorityOrdering) {
  auto doc = parse_xrds(kXrds);
  auto eps = doc.endpoints("http://alice.example/");
  ASSERT_EQ(eps.size(), 3u);
  EXPECT_EQ(eps[0].endpoint_url, "http://op.example/a");
  EXPECT_EQ(eps[0].version, ProtocolVersion::v2_0);
  EXPECT_EQ(eps[0].op_local_id(), "http://op.example/id/alice");
  EXPECT_EQ(eps[1].endpoint_url, "http://op.example/b");
  EXPECT_EQ(eps[2].endpoint_url, "http://op.example/v1");
  EXPECT_EQ(eps[2].version, ProtocolVersion::v1_1);
  EXPECT_EQ(eps[2].local_id, "http://op.example/id/alice");
  EXPECT_EQ(eps[2].claimed_id, "http://alice.example/");
}

TEST(Xrds, Malformed) {
  try {
    parse_xrds("<XRDS><XRD>");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.cause(), "malformed-xrds");
  }
  EXPECT_THROW(parse_xrds("<html/>"), Error);
}

TEST(Html, LinkDiscovery) {
  auto eps = html_discover(R"(<html><HEAD>
    <link rel="openid2.provider openid.server" href="http://op.example/server">
    <LINK REL='openid2.local_id' HREF='http://op.example/id/a&amp;b'>
    <link rel="openid.delegate" href="http://op.example/id/old">
  </head><body><link rel="openid2.provider" href="http://evil/"></body></html>)",
                           "http://claimed/");
  ASSERT_EQ(eps.size(), 2u);
  EXPECT_EQ(eps[0].endpoint_url, "http://op.example/server");
  EXPECT_EQ(eps[0].version, ProtocolVersion::v2_0);
  EXPECT_EQ(eps[0].local_id, "http://op.example/id/a&b");
  EXPECT_EQ(eps[1].version, ProtocolVersion::v1_1);
  EXPECT_EQ(eps[1].local_id, "http://op.example/id/old");
  EXPECT_TRUE(html_discover("<html><body><link rel=openid2.provider href=http://x/></body>").empty());
  EXPECT_TRUE(html_discover("").empty());
  EXPECT_TRUE(html_discover("<link rel=\"openid2.provider\" href=\"not a url\">").empty());
}

TEST(Discover, YadisContentType) {
  MapFetcher f;
  f.pages["http://alice.example/"] = xrds(kXrds);
  auto eps = discover(normalize("alice.example"), f);
  ASSERT_FALSE(eps.empty());
  EXPECT_EQ(eps[0].endpoint_url, "http://op.example/a");
  EXPECT_NE(f.last_accept.find("application/xrds+xml"), std::string::npos);
}

TEST(Discover, YadisHeaderAndMeta) {
  MapFetcher f;
  auto page = html("<html><head></head></html>");
  page.headers["X-XRDS-Location"] = "http://alice.example/xrds";
  f.pages["http://alice.example/"] = page;
  f.pages["http://alice.example/xrds"] = xrds(kXrds);
  EXPECT_EQ(discover(normalize("alice.example"), f)[0].endpoint_url, "http://op.example/a");

  MapFetcher g;
  g.pages["http://bob.example/"] =
      html(R"(<html><head><meta http-equiv="X-XRDS-Location" content="http://bob.example/x"></head></html>)");
  g.pages["http://bob.example/x"] = xrds(kXrds);
  EXPECT_EQ(discover(normalize("bob.example"), g)[0].endpoint_url, "http://op.example/a");
}

TEST(Discover, FallsBackToHtmlWhenXrdsIsBroken) {
  MapFetcher f;
  auto page = html(R"(<head><link rel="openid2.provider" href="http://op.example/html"></head>)");
  page.headers["X-XRDS-Location"] = "http://alice.example/missing";
  f.pages["http://alice.example/"] = page;
  auto eps = discover(normalize("alice.example"), f);
  ASSERT_EQ(eps.size(), 1u);
  EXPECT_EQ(eps[0].endpoint_url, "http://op.example/html");
  EXPECT_EQ(eps[0].claimed_id, "http://alice.example/");
}

TEST(Discover, RedirectChangesClaimedId) {
  MapFetcher f;
  auto page = html(R"(<head><link rel="openid2.provider" href="http://op.example/s"></head>)");
  page.final_url = "http://alice.example/final";
  f.pages["http://alice.example/"] = page;
  EXPECT_EQ(discover(normalize("alice.example"), f)[0].claimed_id, "http://alice.example/final");
}

TEST(Discover, Failures) {
  MapFetcher f;
  try {
    discover(normalize("nobody.example"), f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::discovery);
    EXPECT_EQ(e.cause(), "discovery-failed");
  }
  f.pages["http://plain.example/"] = html("<html><head><title>hi</title></head></html>");
  EXPECT_THROW(discover(normalize("plain.example"), f), Error);
}

TEST(Discover, CacheAvoidsRefetch) {
  MapFetcher f;
  f.pages["http://alice.example/"] = xrds(kXrds);
  DiscoveryCache cache;
  cache.discover(normalize("alice.example"), f);
  cache.discover(normalize("alice.example"), f);
  EXPECT_EQ(f.gets, 1);
}

TEST(Headers, CaseInsensitive) {
  HttpResponse r;
  r.headers["content-TYPE"] = "x";
  EXPECT_EQ(r.header("Content-Type"), "x");
  EXPECT_FALSE(r.header("Location"));
}

}  // namespace
}  // namespace ssogate::openid
