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

#include "ssogate/openid/btwoc.hpp"

#include "ssogate/crypto.hpp"
#include "ssogate/error.hpp"

namespace ssogate::openid {

Bytes btwoc_encode(const BigInt& n) {
  Bytes mag = n.to_bytes();
  if (mag.empty() || (mag.front() & 0x80) != 0) mag.insert(mag.begin(), 0x00);
  return mag;
}

BigInt btwoc_decode(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) fail(Errc::protocol, "invalid-btwoc", "empty btwoc encoding");
  if ((bytes.front() & 0x80) != 0) fail(Errc::protocol, "invalid-btwoc", "negative btwoc encoding");
  return BigInt::from_bytes(bytes);
}

std::string btwoc_base64(const BigInt& n) { return crypto::base64_encode(btwoc_encode(n)); }

BigInt btwoc_from_base64(std::string_view text) {
  auto raw = crypto::base64_decode(text);
  if (!raw) fail(Errc::protocol, "invalid-base64", "malformed base64 integer");
  return btwoc_decode(*raw);
}

}  // namespace ssogate::openid
