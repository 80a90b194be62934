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
#include "pdq/pdp_query.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "pdq/errors.h"
#include "support/oracles.h"

namespace pdq {
namespace {

using ::testing::DoubleNear;
using ::testing::ElementsAre;
using ::testing::IsSupersetOf;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected pdq::Error";
  return ErrorCode::kInvalidInput;
}

SampledDataset Sample(std::vector<double> values, std::vector<double> eps,
                      std::size_t n = 0) {
  const std::size_t full = n == 0 ? values.size() : n;
  return MakeSampledDataset(std::move(values), std::move(eps), full);
}

TEST(EvalQueryTest, Examples) {
  EXPECT_DOUBLE_EQ(EvalQuery(QuerySpec::Count(), std::vector<double>{1, 0, 1}),
                   2.0);
  EXPECT_DOUBLE_EQ(
      EvalQuery(QuerySpec::Median({1, 100}), std::vector<double>{9, 1, 5}),
      5.0);
  EXPECT_DOUBLE_EQ(
      EvalQuery(QuerySpec::Median({1, 100}), std::vector<double>{9, 1, 5, 7}),
      5.0);
  EXPECT_DOUBLE_EQ(EvalQuery(QuerySpec::LinearPredictor({0.5, -1}, {0, 10}),
                             std::vector<double>{2, 3}),
                   -2.0);
  EXPECT_EQ(CodeOf([] {
              EvalQuery(QuerySpec::Count(), std::vector<double>{0.5});
            }),
            ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([] {
              EvalQuery(QuerySpec::Median({1, 10}), std::vector<double>{2, 2});
            }),
            ErrorCode::kDomain);
}

TEST(SampledDatasetTest, Validation) {
  EXPECT_THROW(MakeSampledDataset({}, {}, 1), Error);
  EXPECT_THROW(MakeSampledDataset({1}, {0.0}, 1), Error);
  EXPECT_THROW(MakeSampledDataset({1, 0}, {1.0}, 2), Error);
  EXPECT_THROW(MakeSampledDataset({1, 0}, {1.0, 1.0}, 1), Error);
}

TEST(CandidateOutputsTest, CountScalesToPopulation) {
  const CandidateSet c =
      CandidateOutputs(QuerySpec::Count(), Sample({1, 0}, {0.5, 1.0}, 4));
  EXPECT_THAT(c.targets, ElementsAre(0, 1, 2));
  EXPECT_THAT(c.reported, ElementsAre(0, 2, 4));
}

TEST(CandidateOutputsTest, MedianValuesAndMidpoints) {
  const QuerySpec q = QuerySpec::Median({1, 100});
  const SampledDataset s = Sample({1, 5, 9}, {0.2, 0.3, 0.4});
  const CandidateSet c = CandidateOutputs(q, s);
  EXPECT_THAT(c.targets, ElementsAre(1, 3, 5, 7, 9));
  EXPECT_EQ(c.targets, c.reported);
  EXPECT_LE(c.targets.size(), 2 * s.size() + 1);
  // Candidates the oracle cannot reach get no score and drop out of the
  // output distribution; 1 cannot be a median of three positive integers
  // while the other two stay above it.
  const ScoreResult scored = ScoreCandidates(q, s, c.targets);
  for (std::size_t j = 0; j < c.targets.size(); ++j) {
    const auto oracle = testing::MedianCostByEnumeration(
        s.values, s.eps, static_cast<int>(c.targets[j]));
    EXPECT_EQ(scored.scores[j].has_value(), oracle.has_value())
        << c.targets[j];
  }
  EXPECT_THAT(PeDistribution(q, s).targets, ElementsAre(3, 5, 7, 9));
}

TEST(CandidateOutputsTest, LinearGridAndScaling) {
  const QuerySpec q = QuerySpec::LinearPredictor({1.0, -2.0, 0.5}, {0, 1});
  std::vector<std::size_t> selected = {0, 1};
  const std::vector<double> values = {1, 0, 1};
  const std::vector<double> eps = {0.5, 0.5, 0.5};
  const SampledDataset s = SelectEntries(q, values, eps, selected);
  ASSERT_TRUE(s.full_weight_sum.has_value());
  EXPECT_DOUBLE_EQ(*s.full_weight_sum, -0.5);
  PeOptions one;
  one.linear_grid_points = 1;
  const CandidateSet c1 = CandidateOutputs(q, s, one);
  ASSERT_EQ(c1.targets.size(), 1u);
  EXPECT_DOUBLE_EQ(c1.targets[0], 1.0);
  EXPECT_DOUBLE_EQ(c1.reported[0], 1.0 * (-0.5 / -1.0));
  const CandidateSet c = CandidateOutputs(q, s);
  ASSERT_EQ(c.targets.size(), 201u);
  EXPECT_DOUBLE_EQ(c.targets.front(), -2.0);
  EXPECT_DOUBLE_EQ(c.targets.back(), 1.0);
}

TEST(CandidateOutputsTest, ZeroSampledWeightSumIsDegenerate) {
  const QuerySpec q = QuerySpec::LinearPredictor({1.0, -1.0, 0.5}, {0, 1});
  const std::vector<double> values = {1, 0, 1};
  const std::vector<double> eps = {0.5, 0.5, 0.5};
  const std::vector<std::size_t> selected = {0, 1};
  const SampledDataset s = SelectEntries(q, values, eps, selected);
  EXPECT_EQ(CodeOf([&] { CandidateOutputs(q, s); }),
            ErrorCode::kDegenerateScaling);
}

TEST(SigmaTest, CountExamples) {
  const QuerySpec q = QuerySpec::Count();
  const SampledDataset s = Sample({1, 0}, {0.5, 1.0});
  EXPECT_DOUBLE_EQ(Sigma(q, s, 1), 0.0);
  EXPECT_DOUBLE_EQ(Sigma(q, s, 0), -0.5);
  EXPECT_DOUBLE_EQ(Sigma(q, s, 2), -1.0);
  EXPECT_EQ(CodeOf([&] { Sigma(q, s, 3); }), ErrorCode::kInfeasibleTarget);
}

TEST(SigmaTest, MedianExamples) {
  const QuerySpec q = QuerySpec::Median({1, 100});
  const SampledDataset s = Sample({1, 5, 9}, {0.2, 0.3, 0.4});
  EXPECT_DOUBLE_EQ(Sigma(q, s, 5), 0.0);
  EXPECT_DOUBLE_EQ(Sigma(q, s, 9), -0.2);
  EXPECT_DOUBLE_EQ(Sigma(q, s, 2), -0.3);
  // Only one positive integer lies below 2, so a median of 1 needs one entry
  // below it: impossible.
  EXPECT_EQ(CodeOf([&] { Sigma(q, s, 1); }), ErrorCode::kInfeasibleTarget);
  EXPECT_EQ(CodeOf([&] { Sigma(q, s, 4.5); }), ErrorCode::kInfeasibleTarget);
}

TEST(SigmaTest, LinearCoversShiftWithCheapestSet) {
  // Capacities up: 1*(1-0)=1, 2*(1-0)=2, 0 (already at the top).
  const QuerySpec q = QuerySpec::LinearPredictor({1.0, 2.0, 1.0}, {0, 1});
  const SampledDataset s = MakeSampledDataset({0, 0, 1}, {0.3, 0.5, 0.1}, 3);
  EXPECT_DOUBLE_EQ(Sigma(q, s, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(Sigma(q, s, 1.5), -0.3);
  EXPECT_DOUBLE_EQ(Sigma(q, s, 2.5), -0.5);
  EXPECT_DOUBLE_EQ(Sigma(q, s, 4.0), -0.8);
  EXPECT_DOUBLE_EQ(Sigma(q, s, 0.0), -0.1);
  EXPECT_EQ(CodeOf([&] { Sigma(q, s, 4.5); }), ErrorCode::kInfeasibleTarget);
}

TEST(SigmaTest, LinearAscendingEpsGreedyIsNotOptimal) {
  // Taking entries by ascending eps buys 0.1 + 0.2 to cover a shift of 2,
  // while the single 0.25 entry already covers it.
  const QuerySpec q = QuerySpec::LinearPredictor({1.0, 1.0, 2.0}, {0, 1});
  const SampledDataset s = MakeSampledDataset({0, 0, 0}, {0.1, 0.2, 0.25}, 3);
  EXPECT_DOUBLE_EQ(Sigma(q, s, 2.0), -0.25);
}

TEST(PeDistributionTest, CountExample) {
  const OutputDistribution d =
      PeDistribution(QuerySpec::Count(), Sample({1, 0}, {0.5, 1.0}));
  EXPECT_THAT(d.candidates, ElementsAre(0, 1, 2));
  EXPECT_THAT(d.scores, ElementsAre(-0.5, 0.0, -1.0));
  EXPECT_THAT(d.probabilities,
              ElementsAre(DoubleNear(0.3265, 5e-5), DoubleNear(0.4192, 5e-5),
                          DoubleNear(0.2543, 5e-5)));
  const double z = std::exp(-0.25) + 1.0 + std::exp(-0.5);
  EXPECT_NEAR(d.probabilities[0], std::exp(-0.25) / z, 1e-15);
}

TEST(PeDistributionTest, SingleCandidate) {
  const QuerySpec q = QuerySpec::LinearPredictor({1.0}, {0, 1});
  PeOptions one;
  one.linear_grid_points = 1;
  const OutputDistribution d =
      PeDistribution(q, MakeSampledDataset({1}, {0.5}, 1), one);
  EXPECT_THAT(d.probabilities, ElementsAre(1.0));
}

TEST(PeDistributionTest, LargeEpsConcentratesOnTruth) {
  const OutputDistribution d = PeDistribution(
      QuerySpec::Count(), Sample({1, 0, 1}, {1e3, 1e3, 1e3}));
  const double mass = d.probabilities[2];
  EXPECT_NEAR(mass, 1.0, 1e-9);
  EXPECT_EQ(PeMode(d), 2.0);
}

TEST(PeDistributionTest, ProbabilitiesAreNormalisedAndScoresNonPositive) {
  Rng rng(5);
  for (int c = 0; c < 50; ++c) {
    const std::size_t m = 1 + c % 8;
    std::vector<double> values(m);
    std::vector<double> eps(m);
    for (std::size_t i = 0; i < m; ++i) {
      values[i] = UniformOpen01(rng) < 0.4;
      eps[i] = 0.01 + 3 * UniformOpen01(rng);
    }
    const OutputDistribution d =
        PeDistribution(QuerySpec::Count(), Sample(values, eps, 3 * m));
    double total = 0.0;
    bool has_zero = false;
    for (std::size_t j = 0; j < d.scores.size(); ++j) {
      total += d.probabilities[j];
      EXPECT_LE(d.scores[j], 0.0);
      has_zero = has_zero || d.scores[j] == 0.0;
      EXPECT_NEAR(d.probabilities[j] / d.probabilities[0],
                  std::exp(0.5 * (d.scores[j] - d.scores[0])), 1e-12);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_TRUE(has_zero);
  }
}

TEST(SigmaPropertyTest, CountMatchesEnumerationAndIsMonotone) {
  Rng rng(11);
  const QuerySpec q = QuerySpec::Count();
  for (int c = 0; c < 200; ++c) {
    const std::size_t m = 1 + c % 8;
    std::vector<double> values(m);
    std::vector<double> eps(m);
    for (std::size_t i = 0; i < m; ++i) {
      values[i] = UniformOpen01(rng) < 0.5;
      eps[i] = 0.01 + 2 * UniformOpen01(rng);
    }
    const SampledDataset s = Sample(values, eps);
    const auto truth = static_cast<int>(EvalQuery(q, values));
    std::vector<double> targets;
    for (int t = -1; t <= static_cast<int>(m) + 1; ++t) targets.push_back(t);
    const ScoreResult batch = ScoreCandidates(q, s, targets);
    for (std::size_t j = 0; j < targets.size(); ++j) {
      const auto oracle = testing::CountCostByEnumeration(
          values, eps, static_cast<int>(targets[j]));
      ASSERT_EQ(batch.scores[j].has_value(), oracle.has_value());
      if (oracle) {
        EXPECT_NEAR(*batch.scores[j], -*oracle, 1e-12);
      }
    }
    // Moving away from the truth never raises the score.
    for (int t = truth + 1; t <= static_cast<int>(m); ++t) {
      EXPECT_LE(Sigma(q, s, t), Sigma(q, s, t - 1));
    }
    for (int t = truth - 1; t >= 0; --t) {
      EXPECT_LE(Sigma(q, s, t), Sigma(q, s, t + 1));
    }
  }
}

std::vector<double> DistinctIntegers(Rng& rng, std::size_t m, int max_value) {
  std::vector<double> pool(max_value);
  std::iota(pool.begin(), pool.end(), 1.0);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(m);
  return pool;
}

TEST(MedianOracleTest, CountingArgumentMatchesAssignmentSearch) {
  Rng rng(23);
  for (int c = 0; c < 60; ++c) {
    const std::size_t m = 1 + c % 4;
    const std::vector<double> values = DistinctIntegers(rng, m, 7);
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      for (int t = 1; t <= 8; ++t) {
        ASSERT_EQ(testing::MedianReachableByCounting(values, mask, t),
                  testing::MedianReachableByAssignment(values, mask, t, 14))
            << "mask " << mask << " target " << t;
      }
    }
  }
}

TEST(SigmaPropertyTest, MedianMatchesEnumeration) {
  Rng rng(29);
  const QuerySpec q = QuerySpec::Median({1, 30});
  for (int c = 0; c < 200; ++c) {
    const std::size_t m = 1 + c % 8;
    const std::vector<double> values = DistinctIntegers(rng, m, 20);
    std::vector<double> eps(m);
    for (double& e : eps) e = 0.01 + 2 * UniformOpen01(rng);
    // Ties in eps exercise the Fenwick ranks.
    if (c % 5 == 0) std::fill(eps.begin(), eps.end(), 0.5);
    const SampledDataset s = Sample(values, eps);
    std::vector<double> targets;
    for (int t = 0; t <= 25; ++t) targets.push_back(t);
    targets.push_back(3.5);
    const ScoreResult batch = ScoreCandidates(q, s, targets);
    for (std::size_t j = 0; j < targets.size(); ++j) {
      std::optional<double> oracle;
      if (targets[j] == std::floor(targets[j])) {
        oracle = testing::MedianCostByEnumeration(
            values, eps, static_cast<int>(targets[j]));
      }
      ASSERT_EQ(batch.scores[j].has_value(), oracle.has_value())
          << "target " << targets[j];
      if (oracle) {
        EXPECT_NEAR(*batch.scores[j], -*oracle, 1e-12);
        EXPECT_NEAR(Sigma(q, s, targets[j]), -*oracle, 1e-12);
      }
    }
  }
}

TEST(SigmaPropertyTest, LinearMatchesEnumerationOnFivePointData) {
  Rng rng(31);
  const double levels[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int c = 0; c < 200; ++c) {
    const std::size_t m = 1 + c % 8;
    std::vector<double> values(m);
    std::vector<double> eps(m);
    std::vector<double> w(m);
    for (std::size_t i = 0; i < m; ++i) {
      values[i] = levels[static_cast<int>(UniformOpen01(rng) * 5)];
      eps[i] = 0.01 + 2 * UniformOpen01(rng);
      const double mag = 0.1 + UniformOpen01(rng);
      w[i] = UniformOpen01(rng) < 0.3 ? -mag : mag;
    }
    const QuerySpec q = QuerySpec::LinearPredictor(w, {0, 1});
    const SampledDataset s = MakeSampledDataset(values, eps, m);
    PeOptions opts;
    opts.linear_grid_points = 41;
    const CandidateSet cands = CandidateOutputs(q, s, opts);
    const ScoreResult batch = ScoreCandidates(q, s, cands.targets, opts);
    EXPECT_TRUE(batch.exact);
    for (std::size_t j = 0; j < cands.targets.size(); ++j) {
      const auto oracle = testing::LinearCostByEnumeration(
          values, eps, w, 0, 1, cands.targets[j]);
      ASSERT_TRUE(oracle.has_value());
      ASSERT_TRUE(batch.scores[j].has_value());
      EXPECT_NEAR(*batch.scores[j], -*oracle, 1e-12)
          << "target " << cands.targets[j];
    }
  }
}

TEST(SigmaPropertyTest, TruthScoresZero) {
  const QuerySpec median = QuerySpec::Median({1, 50});
  const SampledDataset s = Sample({4, 17, 9, 30}, {0.1, 0.2, 0.3, 0.4});
  EXPECT_EQ(Sigma(median, s, EvalQuery(median, s.values)), 0.0);
  const QuerySpec lin = QuerySpec::LinearPredictor({0.3, -0.7}, {-1, 2});
  const SampledDataset t = MakeSampledDataset({1.5, -0.5}, {0.2, 0.2}, 2);
  EXPECT_EQ(Sigma(lin, t, EvalQuery(lin, t.values)), 0.0);
}

TEST(ScoreCandidatesTest, SearchBudgetClearsExactFlag) {
  Rng rng(41);
  const std::size_t m = 40;
  std::vector<double> values(m);
  std::vector<double> eps(m);
  std::vector<double> w(m);
  for (std::size_t i = 0; i < m; ++i) {
    values[i] = 0;
    w[i] = 0.5 + UniformOpen01(rng);
    eps[i] = w[i] * (1.0 + 1e-3 * UniformOpen01(rng));
  }
  const QuerySpec q = QuerySpec::LinearPredictor(w, {0, 1});
  const SampledDataset s = MakeSampledDataset(values, eps, m);
  PeOptions tight;
  tight.max_search_nodes = 50;
  const std::vector<double> target = {7.3};
  const ScoreResult r = ScoreCandidates(q, s, target, tight);
  EXPECT_FALSE(r.exact);
  ASSERT_TRUE(r.scores[0].has_value());
  // The incumbent is still a valid cover, so never better than optimal.
  PeOptions loose;
  loose.score_tolerance = 1e-3;
  const ScoreResult near = ScoreCandidates(q, s, target, loose);
  ASSERT_TRUE(near.scores[0].has_value());
  EXPECT_LE(*r.scores[0], *near.scores[0] + 1e-3);
}

TEST(PeSampleTest, InverseCdfAndDeterminism) {
  OutputDistribution point;
  point.candidates = {7.0};
  point.targets = {7.0};
  point.scores = {0.0};
  point.probabilities = {1.0};
  Rng rng(3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(PeSample(point, rng), 7.0);

  OutputDistribution coin = point;
  coin.candidates = {1.0, 2.0};
  coin.probabilities = {0.5, 0.5};
  EXPECT_EQ(PeSampleAt(coin, 0.25), 1.0);
  EXPECT_EQ(PeSampleAt(coin, 0.75), 2.0);
  Rng a(99);
  Rng b(99);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(PeSample(coin, a), PeSample(coin, b));
}

TEST(PeSampleTest, FrequenciesMatchProbabilities) {
  const OutputDistribution d =
      PeDistribution(QuerySpec::Count(), Sample({1, 0}, {0.5, 1.0}));
  Rng rng(2024);
  const int draws = 1'000'000;
  std::map<double, int> hits;
  for (int i = 0; i < draws; ++i) ++hits[PeSample(d, rng)];
  for (std::size_t j = 0; j < d.candidates.size(); ++j) {
    const double p = d.probabilities[j];
    const double sd = std::sqrt(p * (1 - p) / draws);
    EXPECT_NEAR(hits[d.candidates[j]] / static_cast<double>(draws), p, 4 * sd);
  }
}

TEST(LaplaceTest, MomentsAndMidpoint) {
  EXPECT_EQ(LaplaceFromUniform(1.0, 0.5), 0.0);
  EXPECT_NEAR(LaplaceFromUniform(2.0, 0.75), 2.0 * std::log(2.0), 1e-12);
  EXPECT_NEAR(LaplaceFromUniform(2.0, 0.25), -2.0 * std::log(2.0), 1e-12);
  Rng bad(1);
  EXPECT_THROW(LaplaceSample(0.0, bad), Error);
  Rng rng(7);
  const int draws = 1'000'000;
  double sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double x = LaplaceSample(1.0, rng);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / draws;
  const double var = sq / draws - mean * mean;
  EXPECT_NEAR(mean, 0.0, 0.005);
  EXPECT_NEAR(var, 2.0, 0.04);
  Rng a(5);
  Rng b(5);
  EXPECT_EQ(LaplaceSample(3.0, a), LaplaceSample(3.0, b));
}

TEST(HalfSoftmaxTest, StableForLargeNegativeScores) {
  const std::vector<double> scores = {-2000.0, -2001.0};
  const std::vector<double> p = HalfSoftmax(scores);
  EXPECT_NEAR(p[0], 1.0 / (1.0 + std::exp(-0.5)), 1e-15);
}

}  // namespace
}  // namespace pdq
