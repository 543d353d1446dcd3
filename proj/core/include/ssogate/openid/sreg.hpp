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
#include <string>
#include <string_view>
#include <vector>

#include "ssogate/openid/message.hpp"
#include "ssogate/openid/signing.hpp"

namespace ssogate::openid {

inline constexpr std::string_view kSregNs = "http://openid.net/extensions/sreg/1.1";

/// nickname, email, fullname, dob, gender, postcode, country, language, timezone.
const std::vector<std::string_view>& sreg_fields();
bool is_sreg_field(std::string_view name);

struct SregRequest {
  std::vector<std::string> required;
  std::vector<std::string> optional;

  bool empty() const { return required.empty() && optional.empty(); }
  /// Throws Error(validation, "unknown-sreg-field").
  void validate() const;
};

using SregValues = std::map<std::string, std::string>;

/// Adds sreg.required / sreg.optional (and ns.sreg on 2.0 messages).
void add_sreg_request(Message& msg, const SregRequest& request);
/// Reads the request a relying party attached. Unknown names are dropped.
SregRequest parse_sreg_request(const Message& msg);

/// Adds the values and appends their field names to `signed_fields`.
void add_sreg_response(Message& msg, const SregValues& values, std::vector<std::string>& signed_fields);
/// Values present in the response. With `signed_only`, fields outside the
/// "signed" list are ignored.
SregValues extract_sreg(const Message& msg, bool signed_only = true);

}  // namespace ssogate::openid
