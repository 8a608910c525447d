// Copyright 2026 The Authors.
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

#include "seqauction/equilibrium.hpp"
#include "seqauction/oracle.hpp"
#include "seqauction/scenarios.hpp"
#include "seqauction/strategies.hpp"
#include "seqauction/walrasian.hpp"

namespace {

using namespace seqauction;

void BM_assignment(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(42);
  ValueMatrix v(n, std::vector<Rational>(n));
  for (auto& row : v) {
    for (auto& x : row) x = Rational(rng.uniform(0, 1000), 7);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_weight_assignment(v).welfare);
  }
}
BENCHMARK(BM_assignment)->Arg(4)->Arg(8)->Arg(16);

void BM_minimal_walrasian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Market mkt = random_unit_demand_market(n, n, 77);
  auto v = unit_demand_matrix(mkt);
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimal_walrasian(v).prices);
  }
}
BENCHMARK(BM_minimal_walrasian)->Arg(4)->Arg(6)->Arg(8);

void BM_unit_wlrs_playout(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Market mkt = random_unit_demand_market(n, n, 99);
  for (auto _ : state) {
    auto unit = unit_wlrs_eq(mkt);
    benchmark::DoNotOptimize(play(mkt, unit.tree.policy, unit.tree.profile).revenue);
  }
}
BENCHMARK(BM_unit_wlrs_playout)->Arg(3)->Arg(5);

void BM_verify_spe_unit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Market mkt = random_unit_demand_market(n, n, 123);
  for (auto _ : state) {
    auto unit = unit_wlrs_eq(mkt);
    benchmark::DoNotOptimize(
        verify_spe(mkt, unit.tree.policy, unit.tree.profile, Rational(1, 16)).verdict);
  }
}
BENCHMARK(BM_verify_spe_unit)->Arg(3)->Arg(4);

void BM_oracle_demand_reduction(benchmark::State& state) {
  Market mkt = demand_reduction_market();
  SellerPolicy policy{ascending_order(), max_marginal_tiebreak(mkt)};
  OracleOptions opt;
  opt.delta = Rational(1, 4);
  opt.oc_filter = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_spe(mkt, policy, opt).size());
  }
}
BENCHMARK(BM_oracle_demand_reduction);

void BM_oracle_unit_3x3(benchmark::State& state) {
  Market mkt = random_unit_demand_market(3, 3, 57000, ValueLattice{32, 4, true});
  auto unit = unit_wlrs_eq(mkt);
  OracleOptions opt;
  opt.delta = Rational(1, 8);
  opt.oc_filter = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_spe(mkt, unit.tree.policy, opt).size());
  }
}
BENCHMARK(BM_oracle_unit_3x3);

}  // namespace

BENCHMARK_MAIN();
