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

#include <span>
#include <string>

#include "ssogate/bigint.hpp"

namespace ssogate::openid {

/// Shortest big-endian two's-complement encoding of a non-negative integer.
Bytes btwoc_encode(const BigInt& n);

/// Throws Error(protocol, "invalid-btwoc") on an empty input or a negative
/// (top-bit-set) encoding.
BigInt btwoc_decode(std::span<const std::uint8_t> bytes);

/// base64(btwoc(n)) as carried in dh_* message fields.
std::string btwoc_base64(const BigInt& n);
BigInt btwoc_from_base64(std::string_view text);

}  // namespace ssogate::openid
