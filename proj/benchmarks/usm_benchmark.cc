// Copyright 2026 The online-usm Authors.
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


#include <cstdint>
#include <memory>
#include <vector>

#include "benchmark/benchmark.h"
#include "ousm/balance.h"
#include "ousm/framework.h"
#include "ousm/offline.h"
#include "ousm/rng.h"
#include "ousm/submodular.h"

namespace ousm {
namespace {

void BM_BalancerStep(benchmark::State& state) {
  BalancerState s = BalancerState::Initial(1 << 20);
  CoinStream coins(1);
  const BalancePoint points[] = {kUp, kRight, kLeft, {0.2, 0.1}};
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(BalancerStep(s, points[k++ & 3], coins.Uniform()));
  }
}
BENCHMARK(BM_BalancerStep);

void BM_MwStep(benchmark::State& state) {
  TwoExpertsState s = TwoExpertsState::Initial(1 << 20);
  CoinStream coins(1);
  const BalancePoint points[] = {kUp, kRight, kLeft, {0.2, 0.1}};
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(MwStep(s, points[k++ & 3], coins.Uniform()));
  }
}
BENCHMARK(BM_MwStep);

void BM_UsmRound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<SubmodularOracle> pool;
  for (std::uint64_t k = 0; k < 4; ++k) {
    pool.push_back(Normalize(RandomDigraph(n, 0.5, 0.0, 1.0, k)));
  }
  OnlineUsm alg(n, 1 << 20, "balancer", 7);
  std::size_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(alg.Play(pool[t++ & 3]));
  }
}
BENCHMARK(BM_UsmRound)->Arg(8)->Arg(16)->Arg(30);

void BM_VerifySubmodularity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SubmodularOracle f = Normalize(RandomDigraph(n, 0.5, 0.0, 1.0, 3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(VerifySubmodularity(f));
  }
}
BENCHMARK(BM_VerifySubmodularity)->Arg(8)->Arg(12);

void BM_RandDoubleGreedy(benchmark::State& state) {
  const SubmodularOracle f = Normalize(RandomDigraph(10, 0.5, 0.0, 1.0, 4));
  CoinStream coins(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(RandDoubleGreedy(f, coins));
  }
}
BENCHMARK(BM_RandDoubleGreedy);

}  // namespace
}  // namespace ousm

BENCHMARK_MAIN();
