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
#include "pdq/threshold_solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pdq/errors.h"

namespace pdq {
namespace {

void CheckEps(std::span<const double> eps) {
  if (eps.empty()) {
    throw Error(ErrorCode::kInvalidInput, "privacy vector is empty");
  }
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0) || !std::isfinite(eps[i])) {
      throw Error(ErrorCode::kInvalidInput,
                  "privacy requirement " + std::to_string(i) +
                      " must be finite and > 0");
    }
  }
}

std::vector<double> ThresholdsAt(const RegularPrior& prior,
                                 std::span<const double> eps, double lambda) {
  std::vector<double> out(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    out[i] = ThresholdAt(prior, eps[i], lambda);
  }
  return out;
}

double SpendOf(const RegularPrior& prior, std::span<const double> thresholds) {
  double total = 0.0;
  for (double t : thresholds) total += t * prior.Cdf(t);
  return total;
}

}  // namespace

double ThresholdAt(const RegularPrior& prior, double eps_i, double lambda) {
  if (!(lambda >= 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "lambda must be >= 0");
  }
  if (lambda == 0.0) return prior.upper();
  const double y = eps_i / lambda;
  if (std::isinf(y)) return prior.upper();
  return VirtualCostInverse(prior, y);
}

double ExpectedSpend(const RegularPrior& prior, std::span<const double> eps,
                     double lambda) {
  double total = 0.0;
  for (double e : eps) {
    const double t = ThresholdAt(prior, e, lambda);
    total += t * prior.Cdf(t);
  }
  return total;
}

double SpendTolerance(double budget) { return std::max(1e-9, 1e-9 * budget); }

ThresholdVector SolveThresholds(const RegularPrior& prior,
                                std::span<const double> eps, double budget) {
  CheckEps(eps);
  if (!(budget > 0.0) || !std::isfinite(budget)) {
    throw Error(ErrorCode::kInvalidInput, "budget must be finite and > 0");
  }
  const std::size_t n = eps.size();
  const double max_spend =
      static_cast<double>(n) * prior.upper() * prior.Cdf(prior.upper());

  if (budget >= max_spend) {
    ThresholdVector result;
    result.thresholds.assign(n, prior.upper());
    result.expected_spend = max_spend;
    if (budget == max_spend) {
      // Largest lambda that still keeps every threshold at the upper bound.
      const double vc_upper = VirtualCost(prior, prior.upper());
      const double eps_min = *std::min_element(eps.begin(), eps.end());
      result.multiplier = std::isfinite(vc_upper) ? eps_min / vc_upper : 0.0;
    }
    return result;
  }

  const double tol = SpendTolerance(budget);
  auto finish = [&](double lambda, int iterations) {
    ThresholdVector result;
    result.thresholds = ThresholdsAt(prior, eps, lambda);
    result.multiplier = lambda;
    result.expected_spend = SpendOf(prior, result.thresholds);
    result.iterations = iterations;
    return result;
  };

  // Bracket: spend(lo) > B >= spend(hi).
  double lo = 0.0;
  double hi = 1.0;
  int doublings = 0;
  for (;;) {
    const double s = ExpectedSpend(prior, eps, hi);
    if (s == budget) return finish(hi, 0);
    if (s < budget) break;
    lo = hi;
    hi *= 2.0;
    if (++doublings > 2000 || !std::isfinite(hi)) {
      throw Error(ErrorCode::kSolverFailure,
                  "could not bracket the budget multiplier");
    }
  }

  // Bisect until the bracket collapses to adjacent doubles, then keep the
  // side that does not overspend.
  for (int it = 1; it <= kMaxBisectionIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      if (std::abs(ExpectedSpend(prior, eps, hi) - budget) > tol) break;
      return finish(hi, it);
    }
    const double s = ExpectedSpend(prior, eps, mid);
    if (s == budget) return finish(mid, it);
    if (s > budget) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw Error(ErrorCode::kSolverFailure,
              "multiplier bisection did not reach the spend tolerance");
}

ThresholdVector SolveThresholds(const Market& market,
                                std::span<const double> eps) {
  if (eps.size() != market.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "privacy vector length does not match the market size");
  }
  return SolveThresholds(market.prior(), eps, market.budget());
}

ThresholdVector SolveThresholds(const Market& market) {
  const std::vector<double> eps = market.PrivacyRequirements();
  return SolveThresholds(market.prior(), eps, market.budget());
}

double PurchasedPrivacyExpectation(const RegularPrior& prior,
                                   std::span<const double> eps,
                                   std::span<const double> thresholds) {
  if (eps.size() != thresholds.size()) {
    throw Error(ErrorCode::kInvalidInput, "length mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    total += eps[i] * prior.Cdf(thresholds[i]);
  }
  return total;
}

double StationarityResidual(const RegularPrior& prior, double eps_i,
                            double lambda, double theta) {
  const double f = prior.Pdf(theta);
  return eps_i * f - lambda * (prior.Cdf(theta) + theta * f);
}

}  // namespace pdq
