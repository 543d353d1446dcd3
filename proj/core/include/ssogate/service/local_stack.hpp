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

#include <memory>
#include <string>
#include <vector>

#include "ssogate/openid/op.hpp"
#include "ssogate/rbac/engine.hpp"
#include "ssogate/service/gateway.hpp"
#include "ssogate/service/http_fetcher.hpp"
#include "ssogate/service/op_server.hpp"
#include "ssogate/service/request_log.hpp"

namespace httplib {
class Server;
}

namespace ssogate::service {

struct OpAccountSpec {
  std::string username;
  std::string password;
  openid::SregValues profile;
};

struct LocalStackOptions {
  std::vector<OpAccountSpec> accounts{{"alice", "wonderland", {{"email", "alice@example.org"}}}};
  openid::AssociationPolicy policy;
  std::uint32_t password_iterations = openid::PasswordHasher::kDefaultIterations;
  /// Backing store for the gateway; an in-memory store when null.
  store::Store* store = nullptr;
  bool seed = false;  // load the fixture tables into a fresh store
  Clock clock = system_clock();
  std::chrono::seconds staleness{60};
  RequestLogSink request_log;  // none when empty
};

/// A provider and a gateway listening on ephemeral loopback ports, for the
/// scripted login and the end-to-end tests.
class LocalStack {
 public:
  explicit LocalStack(LocalStackOptions options = {});
  ~LocalStack();

  LocalStack(const LocalStack&) = delete;
  LocalStack& operator=(const LocalStack&) = delete;

  const std::string& op_origin() const { return op_origin_; }
  const std::string& gateway_url() const { return gateway_url_; }
  std::string identity_url(const std::string& username) const { return provider_->identity_url(username); }

  openid::Provider& provider() { return *provider_; }
  Gateway& gateway() { return *gateway_; }
  rbac::RbacEngine& engine() { return *engine_; }

  void stop();

 private:
  struct Servers;

  LocalStackOptions options_;
  SystemRandom rng_;
  std::unique_ptr<store::Store> owned_store_;
  std::unique_ptr<rbac::RbacEngine> engine_;
  HttpFetcher fetcher_;
  std::unique_ptr<openid::Provider> provider_;
  std::unique_ptr<OpServer> op_server_;
  std::unique_ptr<Gateway> gateway_;
  std::unique_ptr<Servers> servers_;
  std::string op_origin_;
  std::string gateway_url_;
};

}  // namespace ssogate::service
