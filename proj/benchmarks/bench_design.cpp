// Copyright 2026 The cptlottery Authors
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

#include <cstdint>

#include "cptlottery/cpt.hpp"
#include "cptlottery/design.hpp"
#include "cptlottery/fixed_price.hpp"
#include "cptlottery/gain_solver.hpp"
#include "cptlottery/power_profile.hpp"
#include "cptlottery/prize_table.hpp"

namespace {

using cptlottery::CptParams;

constexpr CptParams kCanada{0.42, 0.83, 1.62, 0.44, 0.60};
constexpr CptParams kUsa{0.42, 0.49, 1.36, 0.44, 0.71};
constexpr CptParams kGreece{0.50, 0.30, 1.29, 0.44, 0.82};

void BM_WeightAt(benchmark::State& state) {
  std::uint64_t k = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cptlottery::weight_at(0.44, k, 1'000'000'000));
    k = k * 6364136223846793005ULL % 1'000'000'000 + 1;
  }
}
BENCHMARK(BM_WeightAt);

void BM_GainSweep(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    cptlottery::GainSweep sweep(kCanada, n);
    for (std::uint64_t k = 1; k <= n; ++k) sweep.advance();
    benchmark::DoNotOptimize(sweep.c_plus());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GainSweep)->RangeMultiplier(10)->Range(1000, 1'000'000)->Complexity();

void BM_GainTable(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cptlottery::precompute_gain_table(kCanada, n));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GainTable)->RangeMultiplier(10)->Range(1000, 1'000'000)->Complexity();

void BM_DesignOptimal(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cptlottery::design_optimal(kCanada, n));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DesignOptimal)
    ->RangeMultiplier(10)
    ->Range(1000, 1'000'000)
    ->Complexity()
    ->Unit(benchmark::kMillisecond);

void BM_DesignNaive(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cptlottery::design_optimal_naive(kCanada, n));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DesignNaive)
    ->RangeMultiplier(4)
    ->Range(64, 1024)
    ->Complexity(benchmark::oNSquared)
    ->Unit(benchmark::kMillisecond);

void BM_ExpandDesign(benchmark::State& state) {
  const auto d = cptlottery::design_optimal(kCanada, 1'000'000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cptlottery::expand_design(d));
  }
}
BENCHMARK(BM_ExpandDesign)->Unit(benchmark::kMillisecond);

void BM_FixedPrice(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cptlottery::design_fixed_price(kUsa, n, -2.0));
  }
}
BENCHMARK(BM_FixedPrice)->Arg(100)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_FixedPriceFast(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cptlottery::design_fixed_price_fast(kGreece, n, -2.0));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FixedPriceFast)
    ->RangeMultiplier(10)
    ->Range(1000, 1'000'000)
    ->Complexity()
    ->Unit(benchmark::kMillisecond);

void BM_ScalarProfile(benchmark::State& state) {
  double b = 0.5;
  for (auto _ : state) {
    const cptlottery::ScalarProfile p{0.3, b, 1.0 / 0.42, 1.0 / 0.49, 1.0};
    benchmark::DoNotOptimize(cptlottery::solve_scalar_profile(p));
    b = b < 20.0 ? b * 1.01 : 0.5;
  }
}
BENCHMARK(BM_ScalarProfile);

}  // namespace

BENCHMARK_MAIN();
