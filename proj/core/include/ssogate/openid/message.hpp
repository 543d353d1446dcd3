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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ssogate/url.hpp"

namespace ssogate::openid {

inline constexpr std::string_view kOpenId2Ns = "http://specs.openid.net/auth/2.0";
inline constexpr std::string_view kOpenId11Ns = "http://openid.net/signon/1.1";

enum class ProtocolVersion { v1_1, v2_0 };

std::string_view to_string(ProtocolVersion v) noexcept;

/// OpenID protocol message: insertion-ordered key/value fields, keys without
/// the "openid." prefix. The version is carried by the "ns" field.
class Message {
 public:
  Message() = default;

  /// Empty 2.0 message whose first field is the 2.0 namespace.
  static Message v2();

  /// Builds from indirect-message parameters: keeps only "openid."-prefixed
  /// names, stripping the prefix.
  static Message from_params(const Params& params);

  /// Replaces an existing value in place, or appends.
  Message& set(std::string_view key, std::string_view value);
  bool erase(std::string_view key);

  std::optional<std::string> get(std::string_view key) const;
  /// Value or empty string.
  std::string value(std::string_view key) const;
  bool contains(std::string_view key) const;

  const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }
  bool empty() const { return fields_.empty(); }

  ProtocolVersion version() const;

  /// Throws Error(validation, "invalid-message") on keys outside
  /// [a-zA-Z0-9._-]+ or values containing a newline.
  void validate() const;

  /// "openid."-prefixed parameters, field order preserved.
  Params to_params() const;

  friend bool operator==(const Message&, const Message&) = default;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

bool valid_key(std::string_view key) noexcept;

/// One "key:value\n" line per field in stored order.
std::string kv_encode(const Message& msg);
/// Splits each line at the first colon; a missing final newline is tolerated.
/// Throws Error(protocol, "kv-parse-error") on a line without a colon.
Message kv_decode(std::string_view body);

/// Appends the message as "openid.<key>=<value>" query parameters to an
/// absolute http(s) endpoint, keeping any existing query.
std::string indirect_encode(const Message& msg, std::string_view endpoint);

/// application/x-www-form-urlencoded body for direct requests.
std::string form_body(const Message& msg);

}  // namespace ssogate::openid
