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

#include <map>
#include <optional>
#include <string>

#include "ssogate/openid/fetcher.hpp"
#include "ssogate/url.hpp"

namespace ssogate::service {

/// Minimal scripted HTTP client with a per-origin cookie jar. Redirects are
/// returned, not followed, unless follow() is called.
class Browser {
 public:
  struct Response {
    int status = 0;
    std::string url;
    openid::Headers headers;
    std::string body;

    std::optional<std::string> location() const;
  };

  Response get(const std::string& url);
  Response post_form(const std::string& url, const Params& form);
  /// GETs Location headers until a non-redirect (at most 10 hops).
  Response follow(Response response);

  std::optional<std::string> cookie(const std::string& url, const std::string& name) const;
  void set_cookie(const std::string& url, const std::string& name, const std::string& value);
  void clear_cookies() { jar_.clear(); }

 private:
  std::string cookie_header(const std::string& url) const;

  using Jar = std::map<std::string, std::map<std::string, std::string>>;
  friend struct BrowserAccess;
  Jar jar_;  // authority -> name -> value
};

struct ScriptedLogin {
  std::string gateway_url;   // e.g. http://127.0.0.1:8080/
  std::string identity_url;  // typed into the login form
  std::string username;      // provider account
  std::string password;
  bool approve = true;
};

struct ScriptedLoginResult {
  bool success = false;
  std::string message;  // text of the final result or error paragraph
  std::optional<std::string> identity;
  std::optional<std::string> email;
  std::string failed_step;  // empty on success
  int home_status = 0;      // status of GET / afterwards
};

/// Drives try_auth, provider sign-in, approval, finish_auth and one gated
/// request through a Browser.
ScriptedLoginResult scripted_login(Browser& browser, const ScriptedLogin& script);

/// Text content of the first element whose class attribute is `cls`, with
/// tags stripped and basic entities decoded.
std::optional<std::string> text_of_class(const std::string& html, const std::string& cls);

}  // namespace ssogate::service
