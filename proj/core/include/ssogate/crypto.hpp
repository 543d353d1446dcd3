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
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ssogate/random.hpp"

namespace ssogate::crypto {

enum class Digest { sha1, sha256 };

std::size_t digest_length(Digest d) noexcept;

Bytes hash(Digest d, std::span<const std::uint8_t> data);
Bytes hmac(Digest d, std::span<const std::uint8_t> key, std::span<const std::uint8_t> data);

inline std::span<const std::uint8_t> as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

/// Comparison whose running time depends only on the lengths, never on where
/// the inputs first differ.
bool constant_time_equal(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) noexcept;
bool constant_time_equal(std::string_view a, std::string_view b) noexcept;

std::string base64_encode(std::span<const std::uint8_t> data);
/// Standard alphabet with padding. Returns nullopt on malformed input.
std::optional<Bytes> base64_decode(std::string_view text);

/// URL-safe alphabet, no padding.
std::string base64url_encode(std::span<const std::uint8_t> data);
std::optional<Bytes> base64url_decode(std::string_view text);

std::string hex_encode(std::span<const std::uint8_t> data);
std::optional<Bytes> hex_decode(std::string_view text);

Bytes pbkdf2_sha256(std::string_view password, std::span<const std::uint8_t> salt,
                    std::uint32_t iterations, std::size_t length);

inline constexpr std::size_t kAeadKeyLength = 32;
inline constexpr std::size_t kAeadIvLength = 12;
inline constexpr std::size_t kAeadTagLength = 16;

/// AES-256-GCM. Output is iv | ciphertext | tag.
Bytes aead_seal(std::span<const std::uint8_t> key, std::span<const std::uint8_t> plaintext,
                std::span<const std::uint8_t> aad, RandomSource& rng);

/// Inverse of aead_seal; nullopt when the tag does not verify.
std::optional<Bytes> aead_open(std::span<const std::uint8_t> key, std::span<const std::uint8_t> sealed,
                               std::span<const std::uint8_t> aad);

}  // namespace ssogate::crypto
