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

#include "ssogate/service/http_fetcher.hpp"

#include <httplib.h>

#include "ssogate/error.hpp"
#include "ssogate/url.hpp"

namespace ssogate::service {

namespace {

struct Target {
  std::string origin;  // scheme://host[:port]
  std::string path;    // path plus query
};

Target split(const std::string& url) {
  Url u = Url::parse(url);
  Target t{u.scheme + "://" + u.authority(), u.path.empty() ? "/" : u.path};
  if (u.query) t.path += "?" + *u.query;
  return t;
}

httplib::Client make_client(const std::string& origin, const HttpFetcher::Options& options) {
  httplib::Client client(origin);
  auto seconds = static_cast<time_t>(options.timeout.count());
  client.set_connection_timeout(seconds, 0);
  client.set_read_timeout(seconds, 0);
  client.set_write_timeout(seconds, 0);
  client.set_follow_location(false);
  client.enable_server_certificate_verification(options.verify_tls);
  return client;
}

openid::HttpResponse convert(const httplib::Result& result, const std::string& url) {
  if (!result) {
    fail(Errc::network, "fetch-failed", "cannot reach " + url + ": " + httplib::to_string(result.error()));
  }
  openid::HttpResponse out;
  out.status = result->status;
  out.final_url = url;
  out.body = result->body;
  for (const auto& [k, v] : result->headers) out.headers.emplace(k, v);
  return out;
}

}  // namespace

std::string resolve_reference(const std::string& base, const std::string& reference) {
  if (reference.find("://") != std::string::npos) return reference;
  Url b = Url::parse(base);
  if (reference.rfind("//", 0) == 0) return b.scheme + ":" + reference;
  std::string origin = b.scheme + "://" + b.authority();
  if (!reference.empty() && reference.front() == '/') return origin + reference;
  if (reference.empty() || reference.front() == '#') return origin + b.path + (b.query ? "?" + *b.query : "") + reference;
  if (reference.front() == '?') return origin + (b.path.empty() ? "/" : b.path) + reference;
  std::string dir = b.path.empty() ? "/" : b.path.substr(0, b.path.rfind('/') + 1);
  return origin + dir + reference;
}

openid::HttpResponse HttpFetcher::get(const std::string& url, const openid::Headers& headers) {
  std::string current = url;
  httplib::Headers request_headers;
  for (const auto& [k, v] : headers) request_headers.emplace(k, v);

  for (int hop = 0; hop <= kMaxRedirects; ++hop) {
    Target t = split(current);
    auto client = make_client(t.origin, options_);
    auto response = convert(client.Get(t.path, request_headers), current);
    bool redirect = response.status == 301 || response.status == 302 || response.status == 303 ||
                    response.status == 307 || response.status == 308;
    auto location = response.header("Location");
    if (!redirect || !location) return response;
    current = resolve_reference(current, *location);
  }
  fail(Errc::network, "too-many-redirects", "more than " + std::to_string(kMaxRedirects) + " redirects from " + url);
}

openid::HttpResponse HttpFetcher::post(const std::string& url, const std::string& body,
                                       const std::string& content_type) {
  Target t = split(url);
  auto client = make_client(t.origin, options_);
  return convert(client.Post(t.path, body, content_type), url);
}

}  // namespace ssogate::service
