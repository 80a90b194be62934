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

// Optimal take-it-or-leave-it thresholds.
//
// The buyer maximises sum_i eps_i F(theta_i*) subject to the expected spend
// sum_i theta_i* F(theta_i*) = B and lower <= theta_i* <= upper. At an
// interior optimum eps_i / lambda equals the virtual cost of theta_i*, so
// every threshold is a clamped inverse virtual cost of eps_i / lambda and a
// single multiplier lambda is tuned until the budget binds (water-filling).
// The box multipliers are never formed explicitly; clamping realises them.

#ifndef PDQ_THRESHOLD_SOLVER_H_
#define PDQ_THRESHOLD_SOLVER_H_

#include <span>
#include <vector>

#include "pdq/market_model.h"

namespace pdq {

struct ThresholdVector {
  std::vector<double> thresholds;
  double multiplier = 0.0;
  double expected_spend = 0.0;
  int iterations = 0;
};

// Largest number of bisection steps before kSolverFailure. Enough to shrink
// any bracket [0, hi] down to adjacent doubles.
inline constexpr int kMaxBisectionIterations = 2200;

double ThresholdAt(const RegularPrior& prior, double eps_i, double lambda);

// sum_i theta_i*(lambda) F(theta_i*(lambda)); nonincreasing in lambda.
double ExpectedSpend(const RegularPrior& prior, std::span<const double> eps,
                     double lambda);

// Spend tolerance used by the solver: max(1e-9, 1e-9 * budget).
double SpendTolerance(double budget);

ThresholdVector SolveThresholds(const RegularPrior& prior,
                                std::span<const double> eps, double budget);
ThresholdVector SolveThresholds(const Market& market,
                                std::span<const double> eps);
// Uses the owners' own privacy requirements.
ThresholdVector SolveThresholds(const Market& market);

// sum_i eps_i F(theta_i*), the expected purchased privacy.
double PurchasedPrivacyExpectation(const RegularPrior& prior,
                                   std::span<const double> eps,
                                   std::span<const double> thresholds);

// eps_i f(theta) - lambda (F(theta) + theta f(theta)); zero at an interior
// optimum.
double StationarityResidual(const RegularPrior& prior, double eps_i,
                            double lambda, double theta);

}  // namespace pdq

#endif  // PDQ_THRESHOLD_SOLVER_H_
