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

namespace ssogate {

/// Ordered query/form parameters; duplicates are preserved.
using Params = std::vector<std::pair<std::string, std::string>>;

std::optional<std::string> find_param(const Params& params, std::string_view name);

/// Absolute URL split into components. Only what OpenID needs: no IPv6 literals.
struct Url {
  std::string scheme;  // lower-case
  std::string host;    // lower-case
  std::optional<int> port;
  std::string path;    // "" or starting with '/'
  std::optional<std::string> query;
  std::optional<std::string> fragment;

  /// Throws Error(validation, "invalid-url") unless `text` is an absolute http(s) URL.
  static Url parse(std::string_view text);
  static std::optional<Url> try_parse(std::string_view text);

  /// Port written or implied by the scheme.
  int effective_port() const;
  std::string authority() const;
  std::string to_string() const;
};

/// Percent-encodes everything outside ALPHA / DIGIT / "-" / "." / "_" / "~".
std::string percent_encode(std::string_view text);
/// Decodes %XX escapes; when `plus_is_space`, '+' becomes ' '.
std::string percent_decode(std::string_view text, bool plus_is_space = true);

std::string form_encode(const Params& params);
Params form_decode(std::string_view body);

/// Appends parameters to a URL's query, before any fragment.
std::string append_query(std::string_view url, const Params& params);

std::string html_escape(std::string_view text);

}  // namespace ssogate
