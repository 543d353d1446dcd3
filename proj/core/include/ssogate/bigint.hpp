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

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "ssogate/random.hpp"

struct bignum_st;

namespace ssogate {

/// Non-negative arbitrary-precision integer backed by an OpenSSL BIGNUM.
class BigInt {
 public:
  BigInt();
  BigInt(std::uint64_t value);  // NOLINT(google-explicit-constructor)
  BigInt(const BigInt& other);
  BigInt(BigInt&&) noexcept = default;
  BigInt& operator=(const BigInt& other);
  BigInt& operator=(BigInt&&) noexcept = default;
  ~BigInt();

  static BigInt from_hex(std::string_view hex);
  static BigInt from_decimal(std::string_view dec);
  /// Unsigned big-endian magnitude.
  static BigInt from_bytes(std::span<const std::uint8_t> magnitude);
  /// Uniform in [low, high].
  static BigInt random_range(const BigInt& low, const BigInt& high, RandomSource& rng);

  /// Minimal unsigned big-endian magnitude; empty for zero.
  Bytes to_bytes() const;
  std::string to_hex() const;
  std::string to_decimal() const;
  int bit_length() const;
  bool is_zero() const;

  BigInt mod_exp(const BigInt& exponent, const BigInt& modulus) const;
  BigInt operator+(const BigInt& rhs) const;
  /// Saturates at zero.
  BigInt operator-(const BigInt& rhs) const;

  friend bool operator==(const BigInt& a, const BigInt& b);
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b);

  const bignum_st* get() const { return bn_.get(); }

 private:
  struct Free {
    void operator()(bignum_st* bn) const noexcept;
  };
  std::unique_ptr<bignum_st, Free> bn_;
};

}  // namespace ssogate
