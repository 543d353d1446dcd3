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

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace ssogate::openid {

struct CaseInsensitiveLess {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const noexcept;
};

using Headers = std::map<std::string, std::string, CaseInsensitiveLess>;

struct HttpResponse {
  int status = 0;
  /// URL after following redirects.
  std::string final_url;
  Headers headers;
  std::string body;

  std::optional<std::string> header(std::string_view name) const;
  bool ok() const { return status >= 200 && status < 300; }
};

/// The only effectful dependency of discovery and verification. Implementations
/// follow redirects (at most kMaxRedirects) and throw Error(network) when the
/// server cannot be reached.
class Fetcher {
 public:
  static constexpr int kMaxRedirects = 10;

  virtual ~Fetcher() = default;
  virtual HttpResponse get(const std::string& url, const Headers& headers) = 0;
  virtual HttpResponse post(const std::string& url, const std::string& body, const std::string& content_type) = 0;
};

}  // namespace ssogate::openid
