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

#include "ssogate/rbac/engine.hpp"

namespace {

using namespace ssogate;

// One role owner handing a role down a chain `state.range(0)` users long.
void BM_ResolveRolesChain(benchmark::State& state) {
  rbac::RbacEngine engine;
  auto admin = engine.bootstrap_administrator("root").id;
  const int depth = static_cast<int>(state.range(0));
  std::vector<rbac::UserId> users;
  for (int i = 0; i <= depth; ++i) users.push_back(engine.add_user("u" + std::to_string(i)).id);
  auto role = rbac::RoleId::parse("52");
  const Date day(2009, 1, 1);
  engine.register_role(admin, {role, "HODCSE", users[0]}, day);
  engine.assign_owner_role(admin, users[0], role, rbac::ValidityPeriod(day, Date(2009, 12, 31)), day);
  for (int i = 0; i < depth; ++i) {
    engine.delegate_role(users[i], users[i + 1], role, rbac::ValidityPeriod(day, Date(2009, 12, 31 - i % 28)), day);
  }
  for (auto _ : state) benchmark::DoNotOptimize(engine.resolve_roles(users.back(), Date(2009, 6, 1)));
}
BENCHMARK(BM_ResolveRolesChain)->Arg(1)->Arg(10)->Arg(100);

void BM_EffectiveHolder(benchmark::State& state) {
  rbac::RbacEngine engine;
  auto admin = engine.bootstrap_administrator("root").id;
  auto ram = engine.add_user("ram").id;
  auto role = rbac::RoleId::parse("52");
  const Date day(2009, 1, 1);
  engine.register_role(admin, {role, "HODCSE", ram}, day);
  engine.assign_owner_role(admin, ram, role, rbac::ValidityPeriod(day, Date(2009, 12, 31)), day);
  for (int i = 0; i < state.range(0); ++i) {
    auto u = engine.add_user("d" + std::to_string(i)).id;
    Date from = day.plus_days(i % 300);
    engine.delegate_role(ram, u, role, rbac::ValidityPeriod(from, from.plus_days(5)), from);
  }
  for (auto _ : state) benchmark::DoNotOptimize(engine.effective_holder(role, Date(2009, 6, 1)));
}
BENCHMARK(BM_EffectiveHolder)->Arg(10)->Arg(1000);

}  // namespace
