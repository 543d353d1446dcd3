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

#include <benchmark/benchmark.h>

#include "ssogate/openid/association.hpp"
#include "ssogate/openid/message.hpp"
#include "ssogate/openid/signing.hpp"
#include "ssogate/random.hpp"

namespace {

using namespace ssogate;

openid::Message assertion() {
  openid::Message m;
  m.set("mode", "id_res")
      .set("op_endpoint", "http://op.example/openid/server")
      .set("claimed_id", "http://op.example/id/alice")
      .set("identity", "http://op.example/id/alice")
      .set("return_to", "http://rp.example/finish_auth")
      .set("response_nonce", "2009-07-01T10:00:00Zabcdef");
  return m;
}

void BM_KvEncode(benchmark::State& state) {
  auto m = assertion();
  for (auto _ : state) benchmark::DoNotOptimize(openid::kv_encode(m));
}
BENCHMARK(BM_KvEncode);

void BM_KvDecode(benchmark::State& state) {
  auto body = openid::kv_encode(assertion());
  for (auto _ : state) benchmark::DoNotOptimize(openid::kv_decode(body));
}
BENCHMARK(BM_KvDecode);

void BM_Sign(benchmark::State& state) {
  SeededRandom rng(1);
  auto type = state.range(0) ? openid::AssocType::hmac_sha256 : openid::AssocType::hmac_sha1;
  openid::Association assoc{"h", rng.bytes(openid::mac_key_length(type)), type, {}, std::chrono::seconds{3600}};
  auto m = assertion();
  openid::SignedFieldList fields({"op_endpoint", "claimed_id", "identity", "return_to", "response_nonce"});
  for (auto _ : state) benchmark::DoNotOptimize(openid::sign(m, assoc, fields));
}
BENCHMARK(BM_Sign)->Arg(0)->Arg(1);

void BM_DhDefaultGroup(benchmark::State& state) {
  SeededRandom rng(2);
  const auto& params = openid::DhParams::openid_default();
  auto peer = openid::dh_generate(params, rng);
  for (auto _ : state) {
    auto mine = openid::dh_generate(params, rng);
    benchmark::DoNotOptimize(openid::dh_shared(mine.private_key, peer.public_key, params));
  }
}
BENCHMARK(BM_DhDefaultGroup)->Unit(benchmark::kMillisecond);

}  // namespace
