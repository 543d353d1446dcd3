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

#include <gtest/gtest.h>

#include "ssogate/bigint.hpp"
#include "ssogate/crypto.hpp"
#include "ssogate/openid/btwoc.hpp"

namespace ssogate::openid {
namespace {

std::string btwoc_hex(std::uint64_t v) { return crypto::hex_encode(btwoc_encode(BigInt(v))); }

TEST(Btwoc, KnownEncodings) {
  EXPECT_EQ(btwoc_hex(0), "00");
  EXPECT_EQ(btwoc_hex(1), "01");
  EXPECT_EQ(btwoc_hex(127), "7f");
  EXPECT_EQ(btwoc_hex(128), "0080");
  EXPECT_EQ(btwoc_hex(255), "00ff");
  EXPECT_EQ(btwoc_hex(256), "0100");
  EXPECT_EQ(btwoc_hex(32768), "008000");
  EXPECT_EQ(btwoc_hex(65535), "00ffff");
}

TEST(Btwoc, RoundTripRandom) {
  SeededRandom rng(11);
  for (int i = 0; i < 2000; ++i) {
    Bytes mag = rng.bytes(1 + rng.uniform(160));
    BigInt n = BigInt::from_bytes(mag);
    Bytes enc = btwoc_encode(n);
    EXPECT_EQ(enc[0] & 0x80, 0);
    if (enc.size() > 1) {
      EXPECT_TRUE(enc[0] != 0 || (enc[1] & 0x80)) << "not minimal";
    }
    EXPECT_EQ(btwoc_decode(enc), n);
    EXPECT_EQ(btwoc_from_base64(btwoc_base64(n)), n);
  }
}

TEST(BigInt, Conversions) {
  EXPECT_EQ(BigInt::from_hex("ff").to_decimal(), "255");
  EXPECT_EQ(BigInt::from_hex(BigInt::from_decimal("65536").to_hex()), BigInt(65536));
  EXPECT_EQ(BigInt(256).bit_length(), 9);
  EXPECT_TRUE(BigInt().is_zero());
  EXPECT_EQ(BigInt(5) + BigInt(7), BigInt(12));
  EXPECT_EQ(BigInt(7) - BigInt(5), BigInt(2));
  EXPECT_LT(BigInt(5), BigInt(7));
  EXPECT_EQ(BigInt(5).mod_exp(6, 23), BigInt(8));
}

TEST(BigInt, RandomRange) {
  SeededRandom rng(2);
  for (int i = 0; i < 200; ++i) {
    BigInt v = BigInt::random_range(10, 20, rng);
    EXPECT_GE(v, BigInt(10));
    EXPECT_LE(v, BigInt(20));
  }
}

}  // namespace
}  // namespace ssogate::openid
