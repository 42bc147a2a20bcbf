// Copyright 2026 The Bookmaker Authors.
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

#include "bookmaker/dichotomous.hpp"
#include "bookmaker/montecarlo.hpp"
#include "bookmaker/multiclass.hpp"
#include "bookmaker/significance.hpp"

namespace {

using namespace bookmaker;

void BM_BinaryStats(benchmark::State& state) {
  const auto t = ContingencyTable::from_rows({{56, 20}, {12, 12}});
  for (auto _ : state) benchmark::DoNotOptimize(binary_stats(t));
}
BENCHMARK(BM_BinaryStats);

void BM_MulticlassStats(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  std::vector<Count> cells(k * k, 3);
  for (std::size_t i = 0; i < k; ++i) cells[i * k + i] = 20;
  const ContingencyTable t(k, cells);
  for (auto _ : state) benchmark::DoNotOptimize(multiclass_stats(t));
}
BENCHMARK(BM_MulticlassStats)->Arg(2)->Arg(4)->Arg(8);

void BM_Chi2Sf(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chi2_sf(x, 3));
    x = x < 40 ? x + 0.37 : 0.5;
  }
}
BENCHMARK(BM_Chi2Sf);

void BM_FisherExact(benchmark::State& state) {
  const Count scale = state.range(0);
  const auto t = ContingencyTable::from_rows({{5 * scale, 2 * scale}, {1 * scale, 3 * scale}});
  for (auto _ : state) benchmark::DoNotOptimize(fisher_exact_2x2(t));
}
BENCHMARK(BM_FisherExact)->Arg(1)->Arg(5)->Arg(100);

void BM_FisherMonteCarlo(benchmark::State& state) {
  const auto t = ContingencyTable::from_rows({{4, 1, 0, 1}, {0, 3, 1, 0}, {1, 0, 2, 1}, {0, 1, 0, 1}});
  for (auto _ : state) benchmark::DoNotOptimize(fisher_montecarlo_kxk(t, 10000, 1));
}
BENCHMARK(BM_FisherMonteCarlo)->Unit(benchmark::kMillisecond);

void BM_SimulateRun(benchmark::State& state) {
  SimConfig c;
  c.fisher_samples = static_cast<std::size_t>(state.range(0));
  std::size_t run = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_run(c, 5, run++, 0.5));
}
BENCHMARK(BM_SimulateRun)->Arg(0)->Arg(10000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
