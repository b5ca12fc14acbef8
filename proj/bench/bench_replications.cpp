// Copyright 2026 The lrisim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// OpenMP replication loop against the serial reference loop on the same
// scenario. Arguments: replications, then thread count for the parallel case.

#include <benchmark/benchmark.h>

#include "lrisim/experiment.hpp"

namespace {

lrisim::SimConfig scenario(int replications) {
  lrisim::SimConfig c;
  c.lambda = 0.04;
  c.mu = 0.0;
  c.episodes = 20000;
  c.eval_episodes = 2000;
  c.replications = replications;
  return c;
}

void BM_Serial(benchmark::State& state) {
  const auto c = scenario(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lrisim::run_experiment_serial(c));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Parallel(benchmark::State& state) {
  const auto c = scenario(static_cast<int>(state.range(0)));
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lrisim::run_experiment(c, jobs));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = jobs;
}

BENCHMARK(BM_Serial)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Parallel)
    ->ArgsProduct({{16}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
