// Copyright 2026 The Saddle Authors
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


// Serial reference loops against the OpenMP paths for the lemma sweeps and
// batched experiment runs. Both paths produce identical results; only the
// wall time differs.

#include <vector>

#include "benchmark/benchmark.h"
#include "saddle/bench.h"
#include "saddle/numerics.h"
#include "saddle/verify.h"

namespace saddle {
namespace {

QuadraticFunction SweepQuadratic(int d) {
  return QuadraticFunction(random_spd_with_spectrum(7, d, 0.1, 100), Rng(7).NormalVector(d), 100,
                           0.1);
}

Execution ExecutionOf(const benchmark::State& state) {
  return state.range(1) ? Execution::kParallel : Execution::kSerial;
}

void BM_SmoothStrong(benchmark::State& state) {
  const QuadraticFunction q = SweepQuadratic(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_smooth_strong(q, 1000, 1, ExecutionOf(state)));
  }
}
BENCHMARK(BM_SmoothStrong)->ArgsProduct({{10, 50}, {0, 1}})->ArgNames({"d", "parallel"});

void BM_SmoothnessEquivalences(benchmark::State& state) {
  const QuadraticFunction q = SweepQuadratic(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_smoothness_equivalences(q, 1000, 1, ExecutionOf(state)));
  }
}
BENCHMARK(BM_SmoothnessEquivalences)->ArgsProduct({{10, 50}, {0, 1}})->ArgNames({"d", "parallel"});

void BM_ProxNonexpansive(benchmark::State& state) {
  const QuadraticFunction q = SweepQuadratic(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_prox_nonexpansive(q, 0.5, 1000, 1, ExecutionOf(state)));
  }
}
BENCHMARK(BM_ProxNonexpansive)->ArgsProduct({{10, 50}, {0, 1}})->ArgNames({"d", "parallel"});

void BM_RunBatch(benchmark::State& state) {
  std::vector<ExperimentConfig> configs;
  for (uint64_t seed = 1; seed <= 8; ++seed) {
    ExperimentConfig c;
    c.seed = seed;
    c.dx = c.dy = static_cast<int>(state.range(0));
    c.Lx = c.Ly = 16;
    c.mux = c.muy = 1;
    c.normA = 40;
    c.solver = "dippa";
    c.eps = 1e-6;
    c.max_outer = 1000;
    configs.push_back(c);
  }
  for (auto _ : state) benchmark::DoNotOptimize(run_batch(configs, ExecutionOf(state)));
}
BENCHMARK(BM_RunBatch)->ArgsProduct({{10, 40}, {0, 1}})->ArgNames({"d", "parallel"});

}  // namespace
}  // namespace saddle

BENCHMARK_MAIN();
