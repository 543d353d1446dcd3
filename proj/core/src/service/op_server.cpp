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

#include "ssogate/service/op_server.hpp"

#include <httplib.h>

#include "http_util.hpp"
#include "ssogate/crypto.hpp"
#include "ssogate/error.hpp"
#include "ssogate/openid/discovery.hpp"

namespace ssogate::service {

namespace {

using detail::page;
using detail::redirect;

constexpr std::chrono::seconds kOpSessionTtl{3600};
constexpr std::chrono::seconds kRequestTtl{600};

void send_direct(httplib::Response& res, const openid::DirectResponse& direct) {
  res.status = direct.status;
  res.set_content(openid::kv_encode(direct.body), "text/plain");
}

void error_page(httplib::Response& res, int status, const std::string& text) {
  res.status = status;
  res.set_content(page("OpenID error", "<p class=\"error\">" + html_escape(text) + "</p>"), "text/html");
}

std::string login_form(const std::string& request_id, const std::string& error) {
  std::string body = "<h1>Sign in to your provider</h1>\n";
  if (!error.empty()) body += "<p class=\"error\">" + html_escape(error) + "</p>\n";
  body += "<form method=\"post\" action=\"/openid/login\">\n<input type=\"hidden\" name=\"req\" value=\"" +
          html_escape(request_id) +
          "\">\n<label>User <input type=\"text\" name=\"username\"></label>\n"
          "<label>Password <input type=\"password\" name=\"password\"></label>\n"
          "<input type=\"submit\" value=\"Sign in\">\n</form>";
  return page("Sign in", body);
}

}  // namespace

openid::ProviderOptions provider_options_for(const std::string& origin) {
  std::string base = origin;
  while (!base.empty() && base.back() == '/') base.pop_back();
  openid::ProviderOptions options;
  options.endpoint_url = base + "/openid/server";
  options.identity_base = base + "/id/";
  return options;
}

OpServer::OpServer(openid::Provider& provider, RandomSource& rng, Clock clock)
    : provider_(provider), rng_(rng), clock_(std::move(clock)), sessions_(kOpSessionTtl), requests_(kRequestTtl) {}

std::optional<std::string> OpServer::session_user(const std::string& cookie) const {
  if (cookie.empty()) return std::nullopt;
  return sessions_.get(cookie, clock_());
}

void OpServer::mount(httplib::Server& server) {
  auto current_user = [this](const httplib::Request& req) {
    return session_user(detail::request_cookie(req, kOpSessionCookie).value_or(""));
  };

  auto checkid = [this, current_user](const openid::Message& msg, const httplib::Request& req,
                                      httplib::Response& res) {
    openid::CheckidRequest request;
    try {
      request = provider_.parse_checkid(msg);
    } catch (const Error& e) {
      return error_page(res, 400, e.what());
    }
    std::string id = crypto::base64url_encode(rng_.bytes(18));
    requests_.put(id, request, clock_());
    redirect(res, (current_user(req) ? "/openid/approve?req=" : "/openid/login?req=") + id);
  };

  auto endpoint = [this, checkid](const httplib::Request& req, httplib::Response& res) {
    openid::Message msg;
    bool direct = req.method == "POST";
    auto type = req.get_header_value("Content-Type");
    try {
      if (direct && type.rfind("application/x-www-form-urlencoded", 0) != 0) {
        msg = openid::kv_decode(req.body);
      } else {
        msg = openid::Message::from_params(detail::request_params(req));
      }
    } catch (const Error& e) {
      return send_direct(res, {400, [&] {
                                 openid::Message m = openid::Message::v2();
                                 m.set("error", e.what());
                                 return m;
                               }()});
    }
    std::string mode = msg.value("mode");
    if (mode == "associate") return send_direct(res, provider_.handle_associate(msg));
    if (mode == "check_authentication") return send_direct(res, provider_.handle_check_authentication(msg));
    if (mode == "checkid_setup") return checkid(msg, req, res);
    if (direct) {
      openid::Message m = msg.version() == openid::ProtocolVersion::v2_0 ? openid::Message::v2() : openid::Message();
      m.set("error", "unsupported mode '" + mode + "'");
      return send_direct(res, {400, m});
    }
    error_page(res, 400, "Unsupported OpenID request mode '" + mode + "'.");
  };
  server.Get("/openid/server", endpoint);
  server.Post("/openid/server", endpoint);

  server.Get("/openid/login", [](const httplib::Request& req, httplib::Response& res) {
    res.set_content(login_form(req.get_param_value("req"), ""), "text/html");
  });
  server.Post("/openid/login", [this](const httplib::Request& req, httplib::Response& res) {
    std::string id = req.get_param_value("req");
    auto user = provider_.authenticate_user(req.get_param_value("username"), req.get_param_value("password"));
    if (!user) {
      res.status = 401;
      res.set_content(login_form(id, "Login failed."), "text/html");
      return;
    }
    std::string cookie = crypto::base64url_encode(rng_.bytes(24));
    sessions_.put(cookie, *user, clock_());
    res.set_header("Set-Cookie", detail::set_cookie(kOpSessionCookie, cookie,
                                                    {static_cast<int>(kOpSessionTtl.count()), false}));
    if (id.empty()) {
      res.set_content(page("Signed in", "<p>Signed in as " + html_escape(*user) + ".</p>"), "text/html");
      return;
    }
    redirect(res, "/openid/approve?req=" + id);
  });

  server.Get("/openid/approve", [this, current_user](const httplib::Request& req, httplib::Response& res) {
    std::string id = req.get_param_value("req");
    auto user = current_user(req);
    if (!user) return redirect(res, "/openid/login?req=" + id);
    auto request = requests_.get(id, clock_());
    if (!request) return error_page(res, 400, "Unknown or expired request.");
    // The realm shown here is the one the decision is bound to. A site can
    // still pick a misleading realm; users must read it.
    std::string realm = html_escape(request->realm);
    std::string body = "<h1>Sign in to another site?</h1>\n<p>The site <strong class=\"realm\">" + realm +
                       "</strong> asks to confirm that you are <code>" +
                       html_escape(provider_.identity_url(*user)) +
                       "</code>.</p>\n<p>Only approve if you recognise this address.</p>\n"
                       "<form method=\"post\" action=\"/openid/approve\">\n"
                       "<input type=\"hidden\" name=\"req\" value=\"" +
                       html_escape(id) + "\">\n<input type=\"hidden\" name=\"realm\" value=\"" + realm +
                       "\">\n<button name=\"decision\" value=\"approve\">Approve once</button>\n"
                       "<button name=\"decision\" value=\"deny\">Deny</button>\n</form>";
    res.set_content(page("Approve sign in", body), "text/html");
  });
  server.Post("/openid/approve", [this, current_user](const httplib::Request& req, httplib::Response& res) {
    auto user = current_user(req);
    std::string id = req.get_param_value("req");
    if (!user) return redirect(res, "/openid/login?req=" + id);
    auto request = requests_.take(id, clock_());
    if (!request) return error_page(res, 400, "Unknown or expired request.");
    openid::ApprovalDecision decision{req.get_param_value("realm"),
                                      req.get_param_value("decision") == "approve" ? openid::Decision::approve_once
                                                                                   : openid::Decision::deny,
                                      clock_()};
    try {
      redirect(res, provider_.respond(*request, *user, decision));
    } catch (const Error& e) {
      error_page(res, e.code() == Errc::unauthorized ? 403 : 400, e.what());
    }
  });

  server.Get("/id/:user", [this](const httplib::Request& req, httplib::Response& res) {
    const auto& name = req.path_params.at("user");
    if (!provider_.find_account(name)) return error_page(res, 404, "No such identity.");
    res.set_header("X-XRDS-Location", provider_.xrds_url(name));
    if (req.get_header_value("Accept").find(openid::kXrdsContentType) != std::string::npos) {
      res.set_content(provider_.xrds_document(name), std::string(openid::kXrdsContentType));
      return;
    }
    res.set_content(provider_.identity_page(name), "text/html");
  });
  server.Get("/id/:user/xrds", [this](const httplib::Request& req, httplib::Response& res) {
    const auto& name = req.path_params.at("user");
    if (!provider_.find_account(name)) return error_page(res, 404, "No such identity.");
    res.set_content(provider_.xrds_document(name), std::string(openid::kXrdsContentType));
  });
}

}  // namespace ssogate::service
