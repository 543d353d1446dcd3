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

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ssogate/random.hpp"

namespace ssogate::service {

struct GatewayConfig {
  std::string listen_host = "127.0.0.1";
  int listen_port = 8080;
  /// Base URL the browser sees; realm and return_to derive from it.
  /// Defaults to http://<listen>/.
  std::string public_url;
  std::optional<std::filesystem::path> store_dir;  // absent: in-memory
  Bytes server_key;
  /// Provider endpoint URL prefixes accepted at login; empty accepts any.
  std::vector<std::string> op_allowlist;
  std::chrono::seconds clock_skew{300};
  std::chrono::seconds staleness{60};
  std::chrono::seconds session_ttl{std::chrono::hours{8}};
  std::optional<std::filesystem::path> console_dir;

  std::string base_url() const;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Process environment.
EnvLookup process_env();

/// Reads the JSON config file (if given), then applies SSOGATE_LISTEN,
/// SSOGATE_PUBLIC_URL, SSOGATE_STORE_DIR, SSOGATE_SERVER_KEY,
/// SSOGATE_OP_ALLOWLIST (comma-separated), SSOGATE_CLOCK_SKEW and
/// SSOGATE_STALENESS (seconds). Throws Error(config, "missing-server-key")
/// when no key is configured, and Error(config, ...) for unreadable or
/// malformed input.
GatewayConfig load_config(const std::optional<std::filesystem::path>& file, const EnvLookup& env = process_env());

/// Splits "host:port". Throws Error(config, "invalid-listen").
std::pair<std::string, int> parse_listen(std::string_view text);

}  // namespace ssogate::service
