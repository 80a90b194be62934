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
#include <numeric>
#include <vector>

#include "benchmark/benchmark.h"
#include "pdq/datagen_io.h"
#include "pdq/market_model.h"
#include "pdq/pdp_query.h"
#include "pdq/random.h"

namespace pdq {
namespace {

std::vector<double> RandomEps(std::size_t m, Rng& rng) {
  std::vector<double> eps(m);
  for (double& e : eps) e = UniformOpen01(rng);
  return eps;
}

void BM_CountDistribution(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const auto s = MakeSampledDataset(GenCountData(m, 0.25, rng),
                                    RandomEps(m, rng), 1000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(PeDistribution(QuerySpec::Count(), s));
  }
}
BENCHMARK(BM_CountDistribution)->Arg(50)->Arg(300)->Arg(1000);

void BM_MedianDistribution(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  const auto s = MakeSampledDataset(GenMedianData(m, 10000, rng),
                                    RandomEps(m, rng), 1000);
  const QuerySpec q = QuerySpec::Median({1, 10000});
  for (auto _ : state) benchmark::DoNotOptimize(PeDistribution(q, s));
}
BENCHMARK(BM_MedianDistribution)->Arg(50)->Arg(300)->Arg(1000);

void BM_LinearDistribution(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  const LinearData data = GenLinearData(m, 5, rng);
  const auto weights = CosineWeights(data.profiles, data.new_profile);
  const QuerySpec q = QuerySpec::LinearPredictor(weights, {0.0, 1.0});
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const auto s = MakeSampledDataset(data.values, RandomEps(m, rng), m,
                                    weights, total);
  PeOptions options;
  options.score_tolerance = 1e-3;
  for (auto _ : state) benchmark::DoNotOptimize(PeDistribution(q, s, options));
}
BENCHMARK(BM_LinearDistribution)->Arg(20)->Arg(100)->Arg(200);

}  // namespace
}  // namespace pdq
