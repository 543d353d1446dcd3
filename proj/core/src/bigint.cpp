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

#include "ssogate/bigint.hpp"

#include <openssl/bn.h>
#include <openssl/crypto.h>

#include "ssogate/error.hpp"

namespace ssogate {

namespace {

struct CtxFree {
  void operator()(BN_CTX* ctx) const noexcept { BN_CTX_free(ctx); }
};

BIGNUM* must(BIGNUM* bn) {
  if (bn == nullptr) fail(Errc::crypto, "bignum-alloc", "BIGNUM allocation failed");
  return bn;
}

void check(int rc, const char* what) {
  if (rc != 1) fail(Errc::crypto, "bignum-failure", what);
}

}  // namespace

void BigInt::Free::operator()(bignum_st* bn) const noexcept { BN_clear_free(bn); }

BigInt::BigInt() : bn_(must(BN_new())) {}

BigInt::BigInt(std::uint64_t value) : BigInt() {
  std::uint8_t buf[8];
  for (int i = 0; i < 8; ++i) buf[7 - i] = static_cast<std::uint8_t>(value >> (8 * i));
  must(BN_bin2bn(buf, 8, bn_.get()));
}

BigInt::BigInt(const BigInt& other) : bn_(must(BN_dup(other.bn_.get()))) {}

BigInt& BigInt::operator=(const BigInt& other) {
  if (this != &other) bn_.reset(must(BN_dup(other.bn_.get())));
  return *this;
}

BigInt::~BigInt() = default;

BigInt BigInt::from_hex(std::string_view hex) {
  std::string s(hex);
  BigInt out;
  BIGNUM* raw = out.bn_.release();
  if (s.empty() || BN_hex2bn(&raw, s.c_str()) != static_cast<int>(s.size()) || BN_is_negative(raw)) {
    BN_free(raw);
    fail(Errc::validation, "invalid-integer", "not a hexadecimal integer");
  }
  out.bn_.reset(raw);
  return out;
}

BigInt BigInt::from_decimal(std::string_view dec) {
  std::string s(dec);
  BigInt out;
  BIGNUM* raw = out.bn_.release();
  if (s.empty() || BN_dec2bn(&raw, s.c_str()) != static_cast<int>(s.size()) || BN_is_negative(raw)) {
    BN_free(raw);
    fail(Errc::validation, "invalid-integer", "not a decimal integer");
  }
  out.bn_.reset(raw);
  return out;
}

BigInt BigInt::from_bytes(std::span<const std::uint8_t> magnitude) {
  BigInt out;
  must(BN_bin2bn(magnitude.data(), static_cast<int>(magnitude.size()), out.bn_.get()));
  return out;
}

BigInt BigInt::random_range(const BigInt& low, const BigInt& high, RandomSource& rng) {
  if (high < low) fail(Errc::validation, "empty-range", "random_range: high < low");
  BigInt span = high - low;
  const int bits = span.bit_length();
  const std::size_t nbytes = static_cast<std::size_t>((bits + 7) / 8);
  for (;;) {
    Bytes buf = rng.bytes(nbytes);
    if (bits % 8 != 0 && !buf.empty()) buf[0] &= static_cast<std::uint8_t>((1u << (bits % 8)) - 1);
    BigInt candidate = from_bytes(buf);
    OPENSSL_cleanse(buf.data(), buf.size());
    if (candidate <= span) return candidate + low;
  }
}

Bytes BigInt::to_bytes() const {
  Bytes out(static_cast<std::size_t>(BN_num_bytes(bn_.get())));
  BN_bn2bin(bn_.get(), out.data());
  return out;
}

std::string BigInt::to_hex() const {
  char* s = BN_bn2hex(bn_.get());
  std::string out(s);
  OPENSSL_free(s);
  return out;
}

std::string BigInt::to_decimal() const {
  char* s = BN_bn2dec(bn_.get());
  std::string out(s);
  OPENSSL_free(s);
  return out;
}

int BigInt::bit_length() const { return BN_num_bits(bn_.get()); }

bool BigInt::is_zero() const { return BN_is_zero(bn_.get()); }

BigInt BigInt::mod_exp(const BigInt& exponent, const BigInt& modulus) const {
  if (modulus.is_zero()) fail(Errc::validation, "zero-modulus", "mod_exp with zero modulus");
  std::unique_ptr<BN_CTX, CtxFree> ctx(BN_CTX_new());
  BigInt out;
  check(BN_mod_exp(out.bn_.get(), bn_.get(), exponent.bn_.get(), modulus.bn_.get(), ctx.get()), "BN_mod_exp");
  return out;
}

BigInt BigInt::operator+(const BigInt& rhs) const {
  BigInt out;
  check(BN_add(out.bn_.get(), bn_.get(), rhs.bn_.get()), "BN_add");
  return out;
}

BigInt BigInt::operator-(const BigInt& rhs) const {
  if (*this <= rhs) return BigInt();
  BigInt out;
  check(BN_sub(out.bn_.get(), bn_.get(), rhs.bn_.get()), "BN_sub");
  return out;
}

bool operator==(const BigInt& a, const BigInt& b) { return BN_cmp(a.bn_.get(), b.bn_.get()) == 0; }

std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
  int c = BN_cmp(a.bn_.get(), b.bn_.get());
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace ssogate
