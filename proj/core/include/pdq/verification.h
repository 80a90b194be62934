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
// Exact and statistical checks of the mechanism's guarantees: personalised
// DP by enumeration, truthfulness and participation on a bid grid, expected
// budget feasibility by simulation, and the accuracy/privacy trade-off bound.

#ifndef PDQ_VERIFICATION_H_
#define PDQ_VERIFICATION_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pdq/market_model.h"
#include "pdq/pdp_query.h"
#include "pdq/random.h"
#include "pdq/threshold_solver.h"

namespace pdq {

inline constexpr double kPdpSlack = 1e-9;
inline constexpr double kIcIrTolerance = 1e-12;
inline constexpr std::size_t kMaxPdpEntries = 8;

struct PdpReport {
  // Largest |log Pr(r | d) - log Pr(r | d')| over candidates r and
  // i-neighbours d', per sampled index i.
  std::vector<double> per_index_max_log_ratio;
  std::vector<double> required;
  bool pass = true;
  std::string diagnostic;
};

// Enumerates every i-neighbour of the sampled data whose i-th entry is taken
// from `neighbor_domain` (skipping values a median query forbids) and
// compares exact output distributions over the union of both candidate
// sets. Requires at most kMaxPdpEntries sampled entries.
PdpReport VerifyPdp(const QuerySpec& query, const SampledDataset& sampled,
                    std::span<const double> neighbor_domain,
                    const PeOptions& options = {});

// Achieved privacy per owner: the measured ratio for sampled owners, zero
// for everybody else. `selected[j]` is the owner behind sampled index j.
std::vector<double> AchievedPrivacy(const PdpReport& report,
                                    std::span<const std::size_t> selected,
                                    std::size_t n);

// Smallest alpha with Pr(|output - truth| <= alpha) >= delta.
double PacRadius(const OutputDistribution& dist, double truth, double delta);

// (n / (4 alpha)) * (ln delta - ln(1 - delta)): the least purchased privacy
// an (alpha, delta)-accurate mechanism needs. Requires 1 <= alpha <= n / 4
// and 0 < delta < 1.
double PurchasedPrivacyLowerBound(std::size_t n, double alpha, double delta);

struct AccuracyBoundReport {
  double pac_radius = 0.0;
  double alpha = 0.0;  // max(1, ceil(pac_radius))
  bool vacuous = false;  // alpha > n / 4: nothing to check
  double purchased = 0.0;
  double bound = 0.0;
  bool holds = true;
};

// Checks that the exact output distribution never beats the lower bound:
// when the PAC radius is at most n / 4 the purchased privacy (sum of the
// sampled eps) must reach PurchasedPrivacyLowerBound. The truth defaults to
// the scaled query value on the sampled data.
AccuracyBoundReport CheckAccuracyBound(const QuerySpec& query,
                                       const SampledDataset& sampled,
                                       double delta,
                                       const PeOptions& options = {});
AccuracyBoundReport CheckAccuracyBound(const QuerySpec& query,
                                       const SampledDataset& sampled,
                                       double delta, double truth,
                                       const PeOptions& options = {});

struct IcIrReport {
  ThresholdVector thresholds;
  double worst_ic_violation = 0.0;  // max of U(psi | theta) - U(theta | theta)
  double worst_ir_violation = 0.0;  // max of -U(theta | theta)
  std::size_t violations = 0;
  bool pass = true;
};

// Solves the thresholds once and scans a (theta, psi) grid with the given
// step over the prior's support for every owner.
IcIrReport CheckIcIr(const RegularPrior& prior, std::span<const double> eps,
                     double budget, double grid_step);

struct BudgetReport {
  double mean_spend = 0.0;
  double std_error = 0.0;
  double analytic_spend = 0.0;  // sum theta_i* F(theta_i*)
  double exceedance_rate = 0.0;  // Pr(total paid > budget)
  bool pass = true;              // |mean - budget| <= 3 std_error
};

// Monte-Carlo estimate of the expected total payment with valuations drawn
// i.i.d. from the prior. Requires draws >= 2.
BudgetReport CheckInterimBf(const RegularPrior& prior,
                            std::span<const double> thresholds, double budget,
                            std::size_t draws, Rng& rng);

// Reference solution on a bid grid: greedily raises the threshold with the
// best marginal eps-gain per unit of expected spend, one grid step at a
// time, until the next step would exceed the budget. Exact for the grid
// problem because each owner's marginal spend grows along the grid while
// the marginal gain is constant per unit of probability.
std::vector<double> GridReferenceThresholds(const RegularPrior& prior,
                                            std::span<const double> eps,
                                            double budget, double step);

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string detail;
  bool pass() const { return failures == 0; }
};

// Randomised self-check suites exposed on the command line.
SuiteResult RunPdpSuite(std::uint64_t seed);
SuiteResult RunIcIrSuite(std::uint64_t seed);
SuiteResult RunAccuracyBoundSuite(std::uint64_t seed);
SuiteResult RunSolverSuite(std::uint64_t seed);

}  // namespace pdq

#endif  // PDQ_VERIFICATION_H_
