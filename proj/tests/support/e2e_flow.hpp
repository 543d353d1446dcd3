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

// Browser-level helpers over a LocalStack: capturing the provider's callback
// without following it, replaying it, and probing the session guard.

#pragma once

#include <atomic>
#include <string>
#include <thread>
#include <vector>

#include "ssogate/service/browser.hpp"
#include "ssogate/service/gateway.hpp"
#include "ssogate/service/local_stack.hpp"
#include "ssogate/url.hpp"

namespace ssogate::testing {

inline constexpr const char* kSessionCookieName = "ssogate_session";

inline service::LocalStackOptions fast_stack_options() {
  service::LocalStackOptions options;
  options.accounts = {{"alice", "wonderland", {{"email", "alice@example.org"}}},
                      {"bob", "builder", {}}};
  options.password_iterations = 16;
  return options;
}

struct CapturedCallback {
  service::Browser browser;  // holds the pending-auth cookie
  std::string url;           // finish_auth?openid.mode=id_res...
  std::string error;         // set when the flow broke before the callback
};

// Runs try_auth, provider sign-in and approval, stopping before finish_auth.
inline CapturedCallback capture_callback(service::LocalStack& stack, const std::string& user,
                                         const std::string& password, bool approve = true) {
  CapturedCallback out;
  auto& b = out.browser;
  auto r = b.get(stack.gateway_url() + "try_auth?openid_url=" + percent_encode(stack.identity_url(user)));
  auto to_op = r.location();
  if (!to_op) {
    out.error = "try_auth returned " + std::to_string(r.status);
    return out;
  }
  r = b.get(*to_op);
  auto next = r.location();
  if (!next) {
    out.error = "checkid returned " + std::to_string(r.status);
    return out;
  }
  Url op = Url::parse(*next);
  std::string origin = op.scheme + "://" + op.authority();
  std::string req;
  for (const auto& [k, v] : form_decode(op.query.value_or(""))) {
    if (k == "req") req = v;
  }
  if (op.path == "/openid/login") {
    r = b.post_form(origin + "/openid/login", {{"req", req}, {"username", user}, {"password", password}});
    if (!r.location()) {
      out.error = "provider login returned " + std::to_string(r.status);
      return out;
    }
  }
  r = b.get(origin + "/openid/approve?req=" + percent_encode(req));
  const std::string marker = "name=\"realm\" value=\"";
  auto pos = r.body.find(marker);
  if (r.status != 200 || pos == std::string::npos) {
    out.error = "approval page returned " + std::to_string(r.status);
    return out;
  }
  pos += marker.size();
  std::string realm = r.body.substr(pos, r.body.find('"', pos) - pos);
  r = b.post_form(origin + "/openid/approve", {{"req", req}, {"realm", realm}, {"decision", approve ? "approve" : "deny"}});
  auto back = r.location();
  if (!back) {
    out.error = "approve returned " + std::to_string(r.status);
    return out;
  }
  out.url = *back;
  return out;
}

struct ReplayOutcome {
  int first_status = 0;
  int replay_status = 0;
  int concurrent_successes = 0;
  int concurrent_total = 0;
  std::string error;
};

// One captured callback submitted, then resubmitted; a second captured
// callback submitted `copies` times at once from independent browsers.
inline ReplayOutcome replay_callbacks(service::LocalStack& stack, int copies) {
  ReplayOutcome out;
  auto first = capture_callback(stack, "alice", "wonderland");
  if (!first.error.empty()) {
    out.error = first.error;
    return out;
  }
  service::Browser replayer = first.browser;
  out.first_status = first.browser.get(first.url).status;
  out.replay_status = replayer.get(first.url).status;

  auto second = capture_callback(stack, "alice", "wonderland");
  if (!second.error.empty()) {
    out.error = second.error;
    return out;
  }
  std::atomic<int> ready{0};
  std::atomic<int> successes{0};
  std::vector<std::thread> threads;
  for (int i = 0; i < copies; ++i) {
    threads.emplace_back([&, b = second.browser]() mutable {
      ++ready;
      while (ready.load() < copies) std::this_thread::yield();
      auto r = b.get(second.url);
      if (r.status == 200 && b.cookie(stack.gateway_url(), kSessionCookieName)) ++successes;
    });
  }
  for (auto& t : threads) t.join();
  out.concurrent_successes = successes.load();
  out.concurrent_total = copies;
  return out;
}

// Cookie values derived from `good` by flipping, truncating and extending.
inline std::vector<std::string> tampered_variants(const std::string& good) {
  std::vector<std::string> out = {"", "x", good + "A", good.substr(0, good.size() / 2), good.substr(1)};
  for (std::size_t i = 0; i < good.size(); ++i) {
    std::string v = good;
    v[i] = v[i] == 'A' ? 'B' : 'A';
    out.push_back(v);
  }
  return out;
}

}  // namespace ssogate::testing
