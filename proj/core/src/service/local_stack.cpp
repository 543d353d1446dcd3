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

#include "ssogate/service/local_stack.hpp"

#include <thread>

#include <httplib.h>

#include "http_util.hpp"
#include "ssogate/error.hpp"
#include "ssogate/store/seed.hpp"

namespace ssogate::service {

struct LocalStack::Servers {
  httplib::Server op;
  httplib::Server gateway;
  std::thread op_thread;
  std::thread gateway_thread;
};

LocalStack::LocalStack(LocalStackOptions options) : options_(std::move(options)), servers_(std::make_unique<Servers>()) {
  store::Store* store = options_.store;
  if (!store) {
    owned_store_ = store::open_memory_store();
    store = owned_store_.get();
  }
  if (options_.seed) store::load_seed_fixture(*store);
  engine_ = std::make_unique<rbac::RbacEngine>(store);

  int op_port = servers_->op.bind_to_any_port("127.0.0.1");
  int gw_port = servers_->gateway.bind_to_any_port("127.0.0.1");
  if (op_port <= 0 || gw_port <= 0) fail(Errc::network, "bind-failed", "cannot bind loopback ports");
  op_origin_ = "http://127.0.0.1:" + std::to_string(op_port);
  gateway_url_ = "http://127.0.0.1:" + std::to_string(gw_port) + "/";

  auto op_options = provider_options_for(op_origin_);
  op_options.policy = options_.policy;
  op_options.password_iterations = options_.password_iterations;
  provider_ = std::make_unique<openid::Provider>(op_options, rng_, options_.clock);
  for (const auto& a : options_.accounts) provider_->add_account(a.username, a.password, a.profile);
  op_server_ = std::make_unique<OpServer>(*provider_, rng_, options_.clock);
  op_server_->mount(servers_->op);

  GatewayConfig config;
  config.listen_host = "127.0.0.1";
  config.listen_port = gw_port;
  config.public_url = gateway_url_;
  config.server_key = rng_.bytes(crypto::kAeadKeyLength);
  config.staleness = options_.staleness;
  gateway_ = std::make_unique<Gateway>(config, *engine_, store, fetcher_, rng_, options_.clock);
  gateway_->mount(servers_->gateway);

  if (options_.request_log) {
    install_request_log(servers_->op, options_.request_log);
    install_request_log(servers_->gateway, options_.request_log);
  }
  servers_->op_thread = std::thread([this] { servers_->op.listen_after_bind(); });
  servers_->gateway_thread = std::thread([this] { servers_->gateway.listen_after_bind(); });
  servers_->op.wait_until_ready();
  servers_->gateway.wait_until_ready();
}

LocalStack::~LocalStack() { stop(); }

void LocalStack::stop() {
  if (!servers_) return;
  servers_->op.stop();
  servers_->gateway.stop();
  if (servers_->op_thread.joinable()) servers_->op_thread.join();
  if (servers_->gateway_thread.joinable()) servers_->gateway_thread.join();
}

}  // namespace ssogate::service
