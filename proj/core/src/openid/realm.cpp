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

#include "ssogate/openid/realm.hpp"

#include "ssogate/error.hpp"

namespace ssogate::openid {

namespace {

[[noreturn]] void invalid(std::string_view text, const std::string& why) {
  fail(Errc::validation, "invalid-realm", "invalid realm '" + std::string(text) + "': " + why);
}

}  // namespace

Realm Realm::parse(std::string_view text) {
  std::string s(text);
  auto sep = s.find("://");
  if (sep == std::string::npos) invalid(text, "not an absolute URL");
  bool wildcard = false;
  if (s.compare(sep + 3, 2, "*.") == 0) {
    wildcard = true;
    s.erase(sep + 3, 2);
  }
  auto authority_end = s.find_first_of("/?#", sep + 3);
  if (s.find('*') != std::string::npos) {
    invalid(text, s.find('*') < authority_end ? "wildcard must be the leftmost label" : "wildcard outside the host");
  }
  auto url = Url::try_parse(s);
  if (!url) invalid(text, "not an http(s) URL");
  if (url->fragment) invalid(text, "fragment not allowed");
  if (url->host.empty() || url->host.front() == '.') invalid(text, "empty host label");

  Realm r;
  r.scheme = url->scheme;
  r.wildcard = wildcard;
  r.host = url->host;
  r.port = url->effective_port();
  r.path = url->path.empty() ? "/" : url->path;
  return r;
}

bool Realm::matches(const Url& url) const {
  if (url.scheme != scheme || url.effective_port() != port) return false;
  if (url.host != host) {
    if (!wildcard) return false;
    std::string suffix = "." + host;
    if (url.host.size() <= suffix.size() || url.host.compare(url.host.size() - suffix.size(), suffix.size(), suffix) != 0) {
      return false;
    }
  }
  std::string p = url.path.empty() ? "/" : url.path;
  if (p == path) return true;
  if (p.compare(0, path.size(), path) != 0) return false;
  return path.back() == '/' || p[path.size()] == '/';
}

bool validate_realm(std::string_view realm, std::string_view url) {
  Realm r = Realm::parse(realm);
  auto u = Url::try_parse(url);
  return u && r.matches(*u);
}

}  // namespace ssogate::openid
