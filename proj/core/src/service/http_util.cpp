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

#include "http_util.hpp"

#include <chrono>
#include <iostream>
#include <mutex>

#include <json.hpp>

#include "ssogate/time.hpp"

namespace ssogate::service {

RequestLogSink stderr_request_log() {
  auto mu = std::make_shared<std::mutex>();
  return [mu](const std::string& line) {
    std::lock_guard lock(*mu);
    std::clog << line << '\n';
  };
}

void install_request_log(httplib::Server& server, RequestLogSink sink) {
  server.set_logger([sink = std::move(sink)](const httplib::Request& req, const httplib::Response& res) {
    auto now = std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
    nlohmann::json line = {{"ts", format_instant(now)},
                           {"method", req.method},
                           {"path", req.path},
                           {"status", res.status},
                           {"remote", req.remote_addr}};
    sink(line.dump());
  });
}

}  // namespace ssogate::service

namespace ssogate::service::detail {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::map<std::string, std::string> parse_cookie_header(std::string_view header) {
  std::map<std::string, std::string> out;
  while (!header.empty()) {
    auto semi = header.find(';');
    auto part = trim(header.substr(0, semi));
    header = semi == std::string_view::npos ? std::string_view{} : header.substr(semi + 1);
    auto eq = part.find('=');
    if (eq == std::string_view::npos || eq == 0) continue;
    out.emplace(std::string(trim(part.substr(0, eq))), std::string(trim(part.substr(eq + 1))));
  }
  return out;
}

std::optional<std::string> request_cookie(const httplib::Request& req, std::string_view name) {
  auto range = req.headers.equal_range("Cookie");
  for (auto it = range.first; it != range.second; ++it) {
    auto cookies = parse_cookie_header(it->second);
    if (auto c = cookies.find(std::string(name)); c != cookies.end()) return c->second;
  }
  return std::nullopt;
}

std::string set_cookie(std::string_view name, std::string_view value, const CookieOptions& options) {
  std::string out = std::string(name) + "=" + std::string(value) + "; Path=/; HttpOnly; SameSite=Lax";
  if (options.max_age) out += "; Max-Age=" + std::to_string(*options.max_age);
  if (options.secure) out += "; Secure";
  return out;
}

std::string clear_cookie(std::string_view name) { return set_cookie(name, "", CookieOptions{0, false}); }

std::string page(std::string_view title, std::string_view body_html) {
  return "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>" + html_escape(title) +
         "</title></head>\n<body>\n" + std::string(body_html) + "\n</body></html>\n";
}

void redirect(httplib::Response& res, const std::string& location, int status) {
  res.status = status;
  res.set_header("Location", location);
}

Params request_params(const httplib::Request& req) {
  Params out;
  for (const auto& [k, v] : req.params) out.emplace_back(k, v);
  return out;
}

}  // namespace ssogate::service::detail
