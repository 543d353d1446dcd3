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

#include "ssogate/service/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ssogate/error.hpp"
#include "ssogate/service/session.hpp"
#include "ssogate/url.hpp"

namespace ssogate::service {

namespace {

using nlohmann::json;

std::chrono::seconds parse_seconds(const std::string& name, std::string_view text) {
  long long v = -1;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v < 0) {
    fail(Errc::config, "invalid-config", name + " must be a non-negative number of seconds");
  }
  return std::chrono::seconds{v};
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

std::string GatewayConfig::base_url() const {
  std::string url = public_url.empty() ? "http://" + listen_host + ":" + std::to_string(listen_port) + "/" : public_url;
  if (url.back() != '/') url += '/';
  return url;
}

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (!v) return std::nullopt;
    return std::string(v);
  };
}

std::pair<std::string, int> parse_listen(std::string_view text) {
  auto colon = text.rfind(':');
  int port = -1;
  if (colon != std::string_view::npos && colon > 0) {
    auto digits = text.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), port);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) port = -1;
  }
  if (port < 0 || port > 65535) fail(Errc::config, "invalid-listen", "listen address must be host:port");
  return {std::string(text.substr(0, colon)), port};
}

GatewayConfig load_config(const std::optional<std::filesystem::path>& file, const EnvLookup& env) {
  GatewayConfig cfg;
  std::optional<std::string> key_text;

  if (file) {
    std::ifstream in(*file);
    if (!in) fail(Errc::config, "config-unreadable", "cannot read config file " + file->string());
    json j;
    try {
      j = json::parse(in);
      if (auto it = j.find("listen"); it != j.end()) {
        std::tie(cfg.listen_host, cfg.listen_port) = parse_listen(it->get<std::string>());
      }
      if (auto it = j.find("public_url"); it != j.end()) cfg.public_url = it->get<std::string>();
      if (auto it = j.find("store_dir"); it != j.end()) cfg.store_dir = it->get<std::string>();
      if (auto it = j.find("server_key"); it != j.end()) key_text = it->get<std::string>();
      if (auto it = j.find("op_allowlist"); it != j.end()) cfg.op_allowlist = it->get<std::vector<std::string>>();
      if (auto it = j.find("clock_skew"); it != j.end()) cfg.clock_skew = std::chrono::seconds{it->get<long long>()};
      if (auto it = j.find("staleness"); it != j.end()) cfg.staleness = std::chrono::seconds{it->get<long long>()};
      if (auto it = j.find("session_ttl"); it != j.end()) {
        cfg.session_ttl = std::chrono::seconds{it->get<long long>()};
      }
      if (auto it = j.find("console_dir"); it != j.end()) cfg.console_dir = it->get<std::string>();
    } catch (const json::exception& e) {
      fail(Errc::config, "invalid-config", std::string("malformed config file: ") + e.what());
    }
  }

  if (auto v = env("SSOGATE_LISTEN")) std::tie(cfg.listen_host, cfg.listen_port) = parse_listen(*v);
  if (auto v = env("SSOGATE_PUBLIC_URL")) cfg.public_url = *v;
  if (auto v = env("SSOGATE_STORE_DIR")) cfg.store_dir = *v;
  if (auto v = env("SSOGATE_SERVER_KEY")) key_text = *v;
  if (auto v = env("SSOGATE_OP_ALLOWLIST")) cfg.op_allowlist = split_list(*v);
  if (auto v = env("SSOGATE_CLOCK_SKEW")) cfg.clock_skew = parse_seconds("SSOGATE_CLOCK_SKEW", *v);
  if (auto v = env("SSOGATE_STALENESS")) cfg.staleness = parse_seconds("SSOGATE_STALENESS", *v);

  if (!key_text || key_text->empty()) {
    fail(Errc::config, "missing-server-key", "no server key configured (server_key or SSOGATE_SERVER_KEY)");
  }
  cfg.server_key = SessionCodec::parse_key(*key_text);
  if (!cfg.public_url.empty() && !Url::try_parse(cfg.public_url)) {
    fail(Errc::config, "invalid-config", "public_url must be an absolute http(s) URL");
  }
  return cfg;
}

}  // namespace ssogate::service
