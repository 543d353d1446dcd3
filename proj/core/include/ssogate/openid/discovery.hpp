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

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssogate/openid/fetcher.hpp"
#include "ssogate/openid/message.hpp"

namespace ssogate::openid {

inline constexpr std::string_view kXrdsContentType = "application/xrds+xml";
inline constexpr std::string_view kTypeSignon20 = "http://specs.openid.net/auth/2.0/signon";
inline constexpr std::string_view kTypeSignon11 = "http://openid.net/signon/1.1";
inline constexpr std::string_view kTypeSignon10 = "http://openid.net/signon/1.0";

struct ClaimedIdentifier {
  std::string raw;
  /// Absolute http(s) URL, lower-case authority, no fragment, path at least "/".
  std::string normalized;
};

struct OPEndpoint {
  std::string endpoint_url;
  ProtocolVersion version = ProtocolVersion::v2_0;
  std::optional<std::string> local_id;
  std::uint32_t priority = 0;
  /// Identifier the endpoint speaks for (after redirects).
  std::string claimed_id;

  /// What the provider is asked to vouch for: the delegated id if any.
  const std::string& op_local_id() const { return local_id ? *local_id : claimed_id; }

  friend bool operator==(const OPEndpoint&, const OPEndpoint&) = default;
};

struct XrdsService {
  std::vector<std::string> types;
  std::vector<std::pair<std::string, std::optional<std::uint32_t>>> uris;
  std::optional<std::string> local_id;
  std::optional<std::uint32_t> priority;
};

struct XrdsDocument {
  std::vector<XrdsService> services;

  /// OpenID sign-on endpoints in priority order (missing priority sorts last,
  /// ties keep document order; 2.0 before 1.x within one service).
  std::vector<OPEndpoint> endpoints(const std::string& claimed_id) const;
};

/// Throws Error(validation, "empty-identifier") with message
/// "Expected an OpenID URL." on blank input, and
/// Error(validation, "unsupported-identifier") on XRIs.
ClaimedIdentifier normalize(std::string_view raw);

/// Throws Error(discovery, "malformed-xrds") on XML errors.
XrdsDocument parse_xrds(std::string_view xml);

/// Follows an XRDS content type, X-XRDS-Location header or the equivalent
/// meta element. Absent when the response names no XRDS document.
std::optional<XrdsDocument> yadis_discover(const HttpResponse& response, Fetcher& fetcher);

/// Link-relation discovery over the document head. Never throws.
std::vector<OPEndpoint> html_discover(std::string_view html, const std::string& claimed_id = {});

/// Yadis first, HTML as fallback. Throws Error(discovery, "discovery-failed")
/// on network failure or when nothing is found. Returned URLs are absolute.
std::vector<OPEndpoint> discover(const ClaimedIdentifier& id, Fetcher& fetcher);

/// Per-session memo of discovery results.
class DiscoveryCache {
 public:
  std::vector<OPEndpoint> discover(const ClaimedIdentifier& id, Fetcher& fetcher);

 private:
  std::mutex mu_;
  std::map<std::string, std::vector<OPEndpoint>> results_;
};

}  // namespace ssogate::openid
