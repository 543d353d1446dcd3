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

#include <optional>
#include <string>

#include "ssogate/openid/op.hpp"
#include "ssogate/store/ttl.hpp"

namespace httplib {
class Server;
}

namespace ssogate::service {

inline constexpr std::string_view kOpSessionCookie = "ssogate_op";

/// HTTP front end for openid::Provider:
///   GET|POST /openid/server   checkid_setup (indirect), associate and
///                             check_authentication (direct, form or kv body)
///   GET|POST /openid/login    sign-in form
///   GET|POST /openid/approve  realm approval
///   GET /id/:user             identity page (HTML links, X-XRDS-Location)
///   GET /id/:user/xrds        XRDS document
class OpServer {
 public:
  OpServer(openid::Provider& provider, RandomSource& rng, Clock clock = system_clock());

  void mount(httplib::Server& server);

 private:
  std::optional<std::string> session_user(const std::string& cookie_header_value) const;

  openid::Provider& provider_;
  RandomSource& rng_;
  Clock clock_;
  store::ExpiringMap<std::string> sessions_;               // cookie -> username
  store::ExpiringMap<openid::CheckidRequest> requests_;    // request id -> pending checkid
};

/// Base URLs for a provider served at `origin` (e.g. "http://127.0.0.1:9000").
openid::ProviderOptions provider_options_for(const std::string& origin);

}  // namespace ssogate::service
