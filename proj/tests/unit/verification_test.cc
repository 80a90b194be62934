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
#include "pdq/verification.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "pdq/errors.h"
#include "pdq/procurement.h"

namespace pdq {
namespace {

TEST(VerifyPdpTest, SingleCountEntryHasHalfEpsRatio) {
  const auto s = MakeSampledDataset({0.0}, {0.5}, 1);
  const double bits[] = {0.0, 1.0};
  const PdpReport r = VerifyPdp(QuerySpec::Count(), s, bits);
  ASSERT_EQ(r.per_index_max_log_ratio.size(), 1u);
  EXPECT_NEAR(r.per_index_max_log_ratio[0], 0.25, 1e-12);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.diagnostic.empty());
}

TEST(VerifyPdpTest, MixedRequirementsHoldPerIndex) {
  const auto s = MakeSampledDataset({1, 0, 1}, {0.1, 1.5, 0.7}, 3);
  const double bits[] = {0.0, 1.0};
  const PdpReport r = VerifyPdp(QuerySpec::Count(), s, bits);
  EXPECT_TRUE(r.pass) << r.diagnostic;
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_LE(r.per_index_max_log_ratio[i], s.eps[i] + kPdpSlack);
    EXPECT_GT(r.per_index_max_log_ratio[i], 0.0);
  }
}

TEST(VerifyPdpTest, MedianNeighboursStayDistinct) {
  const QuerySpec q = QuerySpec::Median({1, 9});
  const auto s = MakeSampledDataset({2, 5, 7}, {0.3, 0.9, 0.4}, 3);
  std::vector<double> domain;
  for (int v = 1; v <= 9; ++v) domain.push_back(v);
  const PdpReport r = VerifyPdp(q, s, domain);
  EXPECT_TRUE(r.pass) << r.diagnostic;
}

TEST(VerifyPdpTest, RejectsLargeSamples) {
  const auto s = MakeSampledDataset(std::vector<double>(9, 0.0),
                                    std::vector<double>(9, 1.0), 9);
  const double bits[] = {0.0, 1.0};
  EXPECT_THROW(VerifyPdp(QuerySpec::Count(), s, bits), Error);
}

TEST(AchievedPrivacyTest, ScattersOverPopulation) {
  PdpReport r;
  r.per_index_max_log_ratio = {0.2, 0.4};
  const std::vector<std::size_t> selected = {3, 1};
  const auto out = AchievedPrivacy(r, selected, 5);
  EXPECT_EQ(out, (std::vector<double>{0, 0.4, 0, 0.2, 0}));
  const std::vector<std::size_t> short_sel = {3};
  EXPECT_THROW(AchievedPrivacy(r, short_sel, 5), Error);
}

OutputDistribution MakeDist(std::vector<double> c, std::vector<double> p) {
  OutputDistribution d;
  d.candidates = c;
  d.targets = c;
  d.probabilities = std::move(p);
  d.scores.assign(d.candidates.size(), 0.0);
  return d;
}

TEST(PacRadiusTest, Examples) {
  const auto d = MakeDist({0, 1, 2}, {0.5, 0.3, 0.2});
  EXPECT_EQ(PacRadius(d, 0.0, 0.5), 0.0);
  EXPECT_EQ(PacRadius(d, 0.0, 0.6), 1.0);
  EXPECT_EQ(PacRadius(d, 0.0, 0.9), 2.0);
  EXPECT_EQ(PacRadius(d, 1.0, 0.9), 1.0);
  // Symmetric errors form one group.
  const auto sym = MakeDist({-1, 1}, {0.5, 0.5});
  EXPECT_EQ(PacRadius(sym, 0.0, 0.3), 1.0);
  const auto three = MakeDist({4, 5, 6}, {1 / 3.0, 1 / 3.0, 1 / 3.0});
  EXPECT_EQ(PacRadius(three, 5.0, 0.9), 1.0);
  EXPECT_THROW(PacRadius(d, 0.0, 1.0), Error);
  EXPECT_THROW(PacRadius(d, 0.0, 0.0), Error);
}

TEST(PurchasedPrivacyLowerBoundTest, Examples) {
  EXPECT_NEAR(PurchasedPrivacyLowerBound(100, 25, 0.9), std::log(9.0), 1e-12);
  EXPECT_NEAR(PurchasedPrivacyLowerBound(8, 2, 0.9), std::log(9.0), 1e-12);
  EXPECT_NEAR(PurchasedPrivacyLowerBound(40, 1, 0.75), 10 * std::log(3.0),
              1e-12);
  EXPECT_LT(PurchasedPrivacyLowerBound(40, 1, 0.25), 0.0);
  EXPECT_THROW(PurchasedPrivacyLowerBound(100, 26, 0.9), Error);
  EXPECT_THROW(PurchasedPrivacyLowerBound(100, 0.5, 0.9), Error);
}

TEST(CheckAccuracyBoundTest, RandomCountInstancesHold) {
  Rng rng(4);
  int checked = 0;
  for (int c = 0; c < 60; ++c) {
    const std::size_t m = 1 + c % 6;
    std::vector<double> values(m);
    std::vector<double> eps(m);
    for (std::size_t i = 0; i < m; ++i) {
      values[i] = UniformOpen01(rng) < 0.5 ? 0 : 1;
      eps[i] = std::exp(-3 + 5 * UniformOpen01(rng));
    }
    for (double delta : {0.6, 0.75, 0.9}) {
      const auto r = CheckAccuracyBound(
          QuerySpec::Count(), MakeSampledDataset(values, eps, m), delta);
      EXPECT_TRUE(r.holds) << "purchased " << r.purchased << " bound "
                           << r.bound;
      if (!r.vacuous) ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(CheckIcIrTest, SolvedThresholdsAreTruthful) {
  const std::vector<double> eps = {0.3, 1.0, 2.0};
  const IcIrReport r = CheckIcIr(RegularPrior::Uniform(), eps, 0.6, 0.01);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.worst_ic_violation, kIcIrTolerance);
  EXPECT_LE(r.worst_ir_violation, kIcIrTolerance);
  EXPECT_EQ(r.thresholds.thresholds.size(), 3u);
  EXPECT_THROW(CheckIcIr(RegularPrior::Uniform(), eps, 0.6, 0.0), Error);
}

TEST(CheckInterimBfTest, SolvedThresholdsSpendBudgetInExpectation) {
  const RegularPrior prior = RegularPrior::Uniform();
  const std::vector<double> eps = {0.5, 1.0, 1.5, 2.0};
  const double budget = 0.8;
  const auto t = SolveThresholds(prior, eps, budget);
  Rng rng(17);
  const BudgetReport r =
      CheckInterimBf(prior, t.thresholds.data() == nullptr
                                ? std::span<const double>()
                                : std::span<const double>(t.thresholds),
                     budget, 100000, rng);
  EXPECT_TRUE(r.pass) << r.mean_spend << " +- " << r.std_error;
  EXPECT_NEAR(r.analytic_spend, budget, 1e-9);
  EXPECT_GT(r.exceedance_rate, 0.0);
}

TEST(CheckInterimBfTest, OverspendingThresholdsFail) {
  Rng rng(3);
  const std::vector<double> t = {0.9, 0.9};
  const BudgetReport r =
      CheckInterimBf(RegularPrior::Uniform(), t, 0.5, 20000, rng);
  EXPECT_NEAR(r.analytic_spend, 2 * 0.81, 1e-12);
  EXPECT_FALSE(r.pass);
}

TEST(GridReferenceThresholdsTest, TracksContinuousSolution) {
  const RegularPrior prior = RegularPrior::Uniform();
  const std::vector<double> eps = {0.4, 1.0, 1.7};
  const double budget = 0.5;
  const auto grid = GridReferenceThresholds(prior, eps, budget, 1e-3);
  const auto exact = SolveThresholds(prior, eps, budget);
  double spent = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    EXPECT_NEAR(grid[i], exact.thresholds[i], 1e-2);
    spent += grid[i] * prior.Cdf(grid[i]);
  }
  EXPECT_LE(spent, budget + 1e-12);
}

TEST(SuiteTest, AllSuitesPass) {
  for (const SuiteResult& r :
       {RunPdpSuite(1), RunIcIrSuite(2), RunAccuracyBoundSuite(3),
        RunSolverSuite(4)}) {
    EXPECT_TRUE(r.pass()) << r.name << ": " << r.detail;
    EXPECT_GT(r.cases, 0u) << r.name;
  }
}

}  // namespace
}  // namespace pdq
