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

#include "ssogate/openid/sreg.hpp"

#include <algorithm>
#include <sstream>

#include "ssogate/error.hpp"

namespace ssogate::openid {

namespace {

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ',';
    out += n;
  }
  return out;
}

std::vector<std::string> split_known(std::string_view joined) {
  std::vector<std::string> out;
  std::istringstream in{std::string(joined)};
  std::string item;
  while (std::getline(in, item, ',')) {
    if (is_sreg_field(item)) out.push_back(item);
  }
  return out;
}

// Alias the message uses for SREG; "sreg" unless a 2.0 ns.* entry says otherwise.
std::string alias_of(const Message& msg) {
  if (msg.version() == ProtocolVersion::v2_0) {
    for (const auto& [k, v] : msg.fields()) {
      if (k.rfind("ns.", 0) == 0 && v == kSregNs) return k.substr(3);
    }
  }
  return "sreg";
}

}  // namespace

const std::vector<std::string_view>& sreg_fields() {
  static const std::vector<std::string_view> kFields = {"nickname", "email",   "fullname", "dob",     "gender",
                                                        "postcode", "country", "language", "timezone"};
  return kFields;
}

bool is_sreg_field(std::string_view name) {
  const auto& f = sreg_fields();
  return std::find(f.begin(), f.end(), name) != f.end();
}

void SregRequest::validate() const {
  for (const auto* list : {&required, &optional}) {
    for (const auto& name : *list) {
      if (!is_sreg_field(name)) fail(Errc::validation, "unknown-sreg-field", "unknown SREG field '" + name + "'");
    }
  }
}

void add_sreg_request(Message& msg, const SregRequest& request) {
  request.validate();
  if (request.empty()) return;
  if (msg.version() == ProtocolVersion::v2_0) msg.set("ns.sreg", kSregNs);
  if (!request.required.empty()) msg.set("sreg.required", join(request.required));
  if (!request.optional.empty()) msg.set("sreg.optional", join(request.optional));
}

SregRequest parse_sreg_request(const Message& msg) {
  std::string alias = alias_of(msg);
  return SregRequest{split_known(msg.value(alias + ".required")), split_known(msg.value(alias + ".optional"))};
}

void add_sreg_response(Message& msg, const SregValues& values, std::vector<std::string>& signed_fields) {
  if (values.empty()) return;
  if (msg.version() == ProtocolVersion::v2_0) {
    msg.set("ns.sreg", kSregNs);
    signed_fields.push_back("ns.sreg");
  }
  for (const auto& [name, value] : values) {
    if (!is_sreg_field(name)) continue;
    msg.set("sreg." + name, value);
    signed_fields.push_back("sreg." + name);
  }
}

SregValues extract_sreg(const Message& msg, bool signed_only) {
  std::string alias = alias_of(msg);
  if (msg.version() == ProtocolVersion::v2_0 && alias == "sreg" && msg.value("ns.sreg") != kSregNs) return {};
  auto signed_fields = SignedFieldList::parse(msg.value("signed"));
  if (signed_only && msg.version() == ProtocolVersion::v2_0 && !signed_fields.contains("ns." + alias)) return {};
  SregValues out;
  for (auto name : sreg_fields()) {
    std::string key = alias + "." + std::string(name);
    auto v = msg.get(key);
    if (!v) continue;
    if (signed_only && !signed_fields.contains(key)) continue;
    out.emplace(std::string(name), *v);
  }
  return out;
}

}  // namespace ssogate::openid
