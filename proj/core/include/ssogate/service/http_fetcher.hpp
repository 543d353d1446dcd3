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
#include <string>

#include "ssogate/openid/fetcher.hpp"

namespace ssogate::service {

/// Resolves a Location header value against the URL that produced it.
std::string resolve_reference(const std::string& base, const std::string& reference);

/// Fetcher over real HTTP(S). GET follows up to kMaxRedirects redirects;
/// POST does not follow redirects.
class HttpFetcher final : public openid::Fetcher {
 public:
  struct Options {
    std::chrono::seconds timeout{10};
    bool verify_tls = true;
  };

  HttpFetcher() = default;
  explicit HttpFetcher(Options options) : options_(options) {}

  openid::HttpResponse get(const std::string& url, const openid::Headers& headers) override;
  openid::HttpResponse post(const std::string& url, const std::string& body, const std::string& content_type) override;

 private:
  Options options_;
};

}  // namespace ssogate::service
