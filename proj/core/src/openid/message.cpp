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

#include "ssogate/openid/message.hpp"

#include <algorithm>
#include <cctype>

#include "ssogate/error.hpp"

namespace ssogate::openid {

namespace {
constexpr std::string_view kPrefix = "openid.";
}

std::string_view to_string(ProtocolVersion v) noexcept { return v == ProtocolVersion::v2_0 ? "2.0" : "1.1"; }

bool valid_key(std::string_view key) noexcept {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '.' || c == '_' || c == '-';
  });
}

Message Message::v2() {
  Message m;
  m.set("ns", kOpenId2Ns);
  return m;
}

Message Message::from_params(const Params& params) {
  Message m;
  for (const auto& [k, v] : params) {
    if (k.size() > kPrefix.size() && k.compare(0, kPrefix.size(), kPrefix) == 0) {
      m.set(std::string_view(k).substr(kPrefix.size()), v);
    }
  }
  return m;
}

Message& Message::set(std::string_view key, std::string_view value) {
  for (auto& [k, v] : fields_) {
    if (k == key) {
      v = std::string(value);
      return *this;
    }
  }
  fields_.emplace_back(std::string(key), std::string(value));
  return *this;
}

bool Message::erase(std::string_view key) {
  auto it = std::find_if(fields_.begin(), fields_.end(), [&](const auto& f) { return f.first == key; });
  if (it == fields_.end()) return false;
  fields_.erase(it);
  return true;
}

std::optional<std::string> Message::get(std::string_view key) const {
  for (const auto& [k, v] : fields_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string Message::value(std::string_view key) const { return get(key).value_or(""); }

bool Message::contains(std::string_view key) const { return get(key).has_value(); }

ProtocolVersion Message::version() const {
  return get("ns") == std::string(kOpenId2Ns) ? ProtocolVersion::v2_0 : ProtocolVersion::v1_1;
}

void Message::validate() const {
  for (const auto& [k, v] : fields_) {
    if (!valid_key(k)) fail(Errc::validation, "invalid-message", "invalid message key '" + k + "'");
    if (v.find('\n') != std::string::npos) {
      fail(Errc::validation, "invalid-message", "value of '" + k + "' contains a newline");
    }
  }
}

Params Message::to_params() const {
  Params out;
  out.reserve(fields_.size());
  for (const auto& [k, v] : fields_) out.emplace_back(std::string(kPrefix) + k, v);
  return out;
}

std::string kv_encode(const Message& msg) {
  msg.validate();
  std::string out;
  for (const auto& [k, v] : msg.fields()) {
    out += k;
    out.push_back(':');
    out += v;
    out.push_back('\n');
  }
  return out;
}

Message kv_decode(std::string_view body) {
  Message m;
  while (!body.empty()) {
    auto nl = body.find('\n');
    std::string_view line = body.substr(0, nl);
    body = nl == std::string_view::npos ? std::string_view{} : body.substr(nl + 1);
    auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      fail(Errc::protocol, "kv-parse-error", "key-value line without a colon: '" + std::string(line) + "'");
    }
    auto key = line.substr(0, colon);
    if (!valid_key(key)) fail(Errc::protocol, "kv-parse-error", "invalid key '" + std::string(key) + "'");
    m.set(key, line.substr(colon + 1));
  }
  return m;
}

std::string indirect_encode(const Message& msg, std::string_view endpoint) {
  if (!Url::try_parse(endpoint)) {
    fail(Errc::validation, "invalid-endpoint", "endpoint must be an absolute http(s) URL: '" + std::string(endpoint) + "'");
  }
  msg.validate();
  return append_query(endpoint, msg.to_params());
}

std::string form_body(const Message& msg) {
  msg.validate();
  return form_encode(msg.to_params());
}

}  // namespace ssogate::openid
