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

#include "ssogate/service/browser.hpp"

#include <httplib.h>

#include "ssogate/error.hpp"
#include "ssogate/service/http_fetcher.hpp"

namespace ssogate::service {

namespace {

std::string unescape(std::string s) {
  static const std::pair<std::string, std::string> kEntities[] = {
      {"&lt;", "<"}, {"&gt;", ">"}, {"&quot;", "\""}, {"&#39;", "'"}, {"&amp;", "&"}};
  for (const auto& [from, to] : kEntities) {
    for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) {
      s.replace(pos, from.size(), to);
    }
  }
  return s;
}

std::string strip_tags(const std::string& html) {
  std::string out;
  bool in_tag = false;
  for (char c : html) {
    if (c == '<') {
      in_tag = true;
    } else if (c == '>') {
      in_tag = false;
    } else if (!in_tag) {
      out.push_back(c);
    }
  }
  return unescape(out);
}

std::optional<std::string> input_value(const std::string& html, const std::string& name) {
  auto pos = html.find("name=\"" + name + "\" value=\"");
  if (pos == std::string::npos) return std::nullopt;
  pos = html.find("value=\"", pos) + 7;
  auto end = html.find('"', pos);
  if (end == std::string::npos) return std::nullopt;
  return unescape(html.substr(pos, end - pos));
}

std::string origin_of(const Url& u) { return u.scheme + "://" + u.authority(); }

std::string target_of(const Url& u) {
  std::string t = u.path.empty() ? "/" : u.path;
  if (u.query) t += "?" + *u.query;
  return t;
}

}  // namespace

std::optional<std::string> Browser::Response::location() const {
  bool redirect = status == 301 || status == 302 || status == 303 || status == 307 || status == 308;
  if (!redirect) return std::nullopt;
  auto it = headers.find("Location");
  if (it == headers.end()) return std::nullopt;
  return resolve_reference(url, it->second);
}

std::string Browser::cookie_header(const std::string& url) const {
  auto it = jar_.find(Url::parse(url).authority());
  if (it == jar_.end()) return {};
  std::string out;
  for (const auto& [k, v] : it->second) {
    if (!out.empty()) out += "; ";
    out += k + "=" + v;
  }
  return out;
}

std::optional<std::string> Browser::cookie(const std::string& url, const std::string& name) const {
  auto it = jar_.find(Url::parse(url).authority());
  if (it == jar_.end()) return std::nullopt;
  auto c = it->second.find(name);
  if (c == it->second.end()) return std::nullopt;
  return c->second;
}

void Browser::set_cookie(const std::string& url, const std::string& name, const std::string& value) {
  jar_[Url::parse(url).authority()][name] = value;
}

struct BrowserAccess {
  static Browser::Jar& jar(Browser& b) { return b.jar_; }
};

namespace {

// Records Set-Cookie headers in the jar and converts the response.
Browser::Response absorb(Browser& browser, const std::string& url, const httplib::Result& result) {
  Browser::Response r{result->status, url, {}, result->body};
  auto& jar = BrowserAccess::jar(browser)[Url::parse(url).authority()];
  const auto& headers = result->headers;
  for (const auto& [k, v] : headers) {
    if (k == "Set-Cookie") {
      auto pair = v.substr(0, v.find(';'));
      auto eq = pair.find('=');
      if (eq == std::string::npos) continue;
      std::string name = pair.substr(0, eq);
      std::string value = pair.substr(eq + 1);
      if (value.empty() || v.find("Max-Age=0") != std::string::npos) {
        jar.erase(name);
      } else {
        jar[name] = value;
      }
    }
    r.headers.emplace(k, v);
  }
  return r;
}

}  // namespace

Browser::Response Browser::get(const std::string& url) {
  Url u = Url::parse(url);
  httplib::Client client(origin_of(u));
  client.set_connection_timeout(10, 0);
  client.set_read_timeout(30, 0);
  httplib::Headers headers;
  if (auto c = cookie_header(url); !c.empty()) headers.emplace("Cookie", c);
  auto result = client.Get(target_of(u), headers);
  if (!result) fail(Errc::network, "fetch-failed", "cannot reach " + url);
  return absorb(*this, url, result);
}

Browser::Response Browser::post_form(const std::string& url, const Params& form) {
  Url u = Url::parse(url);
  httplib::Client client(origin_of(u));
  client.set_connection_timeout(10, 0);
  client.set_read_timeout(30, 0);
  httplib::Headers headers;
  if (auto c = cookie_header(url); !c.empty()) headers.emplace("Cookie", c);
  auto result = client.Post(target_of(u), headers, form_encode(form), "application/x-www-form-urlencoded");
  if (!result) fail(Errc::network, "fetch-failed", "cannot reach " + url);
  return absorb(*this, url, result);
}

Browser::Response Browser::follow(Response response) {
  for (int hop = 0; hop < 10; ++hop) {
    auto next = response.location();
    if (!next) return response;
    response = get(*next);
  }
  fail(Errc::network, "too-many-redirects", "redirect loop at " + response.url);
}

std::optional<std::string> text_of_class(const std::string& html, const std::string& cls) {
  auto pos = html.find("class=\"" + cls + "\"");
  if (pos == std::string::npos) return std::nullopt;
  auto open_end = html.find('>', pos);
  auto tag_start = html.rfind('<', pos);
  if (open_end == std::string::npos || tag_start == std::string::npos) return std::nullopt;
  std::string tag = html.substr(tag_start + 1, html.find_first_of(" >", tag_start) - tag_start - 1);
  auto close = html.find("</" + tag + ">", open_end);
  if (close == std::string::npos) return std::nullopt;
  return strip_tags(html.substr(open_end + 1, close - open_end - 1));
}

ScriptedLoginResult scripted_login(Browser& browser, const ScriptedLogin& script) {
  ScriptedLoginResult out;
  auto failed = [&](std::string step, const Browser::Response& r) {
    out.failed_step = std::move(step);
    out.message = text_of_class(r.body, "error").value_or(text_of_class(r.body, "result").value_or(
        "unexpected HTTP " + std::to_string(r.status) + " from " + r.url));
    return out;
  };
  std::string base = script.gateway_url;
  if (base.empty() || base.back() != '/') base += '/';

  auto r = browser.get(base + "try_auth?openid_url=" + percent_encode(script.identity_url));
  auto to_op = r.location();
  if (!to_op) return failed("try_auth", r);

  r = browser.get(*to_op);
  auto next = r.location();
  if (!next) return failed("checkid", r);
  Url op = Url::parse(*next);
  std::string op_origin = op.scheme + "://" + op.authority();
  std::string request_id = find_param(form_decode(op.query.value_or("")), "req").value_or("");

  if (op.path == "/openid/login") {
    r = browser.post_form(op_origin + "/openid/login",
                          {{"req", request_id}, {"username", script.username}, {"password", script.password}});
    if (!r.location()) return failed("provider-login", r);
  }
  r = browser.get(op_origin + "/openid/approve?req=" + percent_encode(request_id));
  auto realm = input_value(r.body, "realm");
  if (r.status != 200 || !realm) return failed("approval-page", r);

  r = browser.post_form(op_origin + "/openid/approve",
                        {{"req", request_id}, {"realm", *realm}, {"decision", script.approve ? "approve" : "deny"}});
  auto back = r.location();
  if (!back) return failed("approve", r);

  r = browser.get(*back);
  out.message = text_of_class(r.body, "result").value_or("");
  if (r.status != 200 || !browser.cookie(base, "ssogate_session")) {
    out.failed_step = "finish_auth";
    return out;
  }

  auto home = browser.get(base);
  out.home_status = home.status;
  out.identity = text_of_class(home.body, "remote-user");
  if (!out.identity) {
    if (auto pos = home.body.find("id=\"remote-user\">"); pos != std::string::npos) {
      pos += 17;
      out.identity = unescape(home.body.substr(pos, home.body.find('<', pos) - pos));
    }
  }
  const std::string marker = "You also returned '";
  if (auto pos = out.message.find(marker); pos != std::string::npos) {
    pos += marker.size();
    auto end = out.message.find("' as your email.", pos);
    if (end != std::string::npos) out.email = out.message.substr(pos, end - pos);
  }
  out.success = home.status == 200;
  if (!out.success) out.failed_step = "home";
  return out;
}

}  // namespace ssogate::service
