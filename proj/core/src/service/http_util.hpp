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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <httplib.h>

#include "ssogate/service/request_log.hpp"
#include "ssogate/url.hpp"

namespace ssogate::service::detail {

std::map<std::string, std::string> parse_cookie_header(std::string_view header);
std::optional<std::string> request_cookie(const httplib::Request& req, std::string_view name);

struct CookieOptions {
  std::optional<int> max_age;
  bool secure = false;
};
std::string set_cookie(std::string_view name, std::string_view value, const CookieOptions& options = {});
std::string clear_cookie(std::string_view name);

std::string page(std::string_view title, std::string_view body_html);
void redirect(httplib::Response& res, const std::string& location, int status = 303);
/// Query-string and form-body parameters (httplib parses both).
Params request_params(const httplib::Request& req);

}  // namespace ssogate::service::detail
