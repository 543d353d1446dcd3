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

#include <string>
#include <string_view>

#include "ssogate/url.hpp"

namespace ssogate::openid {

/// URL pattern naming a relying party's namespace, e.g. "http://*.kent.ac.uk/".
struct Realm {
  std::string scheme;
  bool wildcard = false;
  std::string host;  // without the "*." prefix
  int port = 80;
  std::string path;  // never empty

  /// Throws Error(validation, "invalid-realm") on a wildcard outside the
  /// leftmost host label, a fragment, or a non-http(s) URL.
  static Realm parse(std::string_view text);

  bool matches(const Url& url) const;
};

/// True iff `url` falls inside `realm`. Throws for an invalid realm; an
/// unparseable url never matches.
bool validate_realm(std::string_view realm, std::string_view url);

}  // namespace ssogate::openid
