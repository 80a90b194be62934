// Copyright 2026 The PDQ Authors
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
//
#include <vector>

#include "benchmark/benchmark.h"
#include "pdq/market_model.h"
#include "pdq/random.h"
#include "pdq/threshold_solver.h"

namespace pdq {
namespace {

std::vector<double> RandomEps(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> eps(n);
  for (double& e : eps) e = UniformOpen01(rng);
  return eps;
}

void BM_SolveThresholdsUniform(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto eps = RandomEps(n, 7);
  const RegularPrior prior = RegularPrior::Uniform();
  const double budget = 0.3 * static_cast<double>(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveThresholds(prior, eps, budget));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveThresholdsUniform)->RangeMultiplier(10)->Range(10, 10000)
    ->Complexity();

// Numeric virtual-cost inversion instead of the closed form.
void BM_SolveThresholdsPowerPrior(benchmark::State& state) {
  const auto eps = RandomEps(1000, 8);
  const RegularPrior prior = RegularPrior::Power(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveThresholds(prior, eps, 200.0));
  }
}
BENCHMARK(BM_SolveThresholdsPowerPrior);

}  // namespace
}  // namespace pdq
