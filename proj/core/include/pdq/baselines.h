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
// Baseline mechanisms used for comparison: FairQuery (FQ) for count and
// median queries, and FairInnerProduct (FIP) for linear predictors. Both sort
// owners by privacy valuation v_i = theta_i / eps_i and buy a cheapest prefix
// under uniform prices, then add Laplace noise for the unbought part.

#ifndef PDQ_BASELINES_H_
#define PDQ_BASELINES_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pdq/market_model.h"
#include "pdq/random.h"

namespace pdq {

struct BaselineSelection {
  std::size_t k = 0;
  // Selected owners in ascending privacy-valuation order.
  std::vector<std::size_t> selected_indices;
  // Indexed by owner; zero for unselected owners.
  std::vector<double> per_owner_payment;
  // FQ: 1 / (n - k). FIP leaves it at zero (levels are per owner).
  double uniform_dp_level = 0.0;
  // theta_i / eps_i for every owner.
  std::vector<double> privacy_valuations;
  // FQ only: owners dropped because eps_i <= 1 / (n - k).
  std::size_t filtered_out = 0;
  // FIP only: a single owner outweighed all others and was bought alone.
  bool dominant = false;

  double TotalPaid() const;
};

// Draws zero-mean noise with the given scale (> 0).
using NoiseFn = std::function<double(double scale)>;

// Laplace noise bound to `rng` (which must outlive the function).
NoiseFn LaplaceNoise(Rng& rng);
// Always returns 0; used to check the deterministic part of an answer.
NoiseFn ZeroNoise();

// Requires n >= 2 and eps.size() == n. k is capped at n - 1 so that the
// (k+1)-th valuation is defined. Owners with eps_i <= 1 / (n - k) are
// removed and k recomputed until no selected owner violates the bound.
BaselineSelection FqSelect(const Market& market, std::span<const double> eps);
BaselineSelection FqSelect(const Market& market);

// sum(selected) + (n - k) / 2 + Lap(n - k).
double FqCountAnswer(std::span<const double> selected_values, std::size_t n,
                     const NoiseFn& noise);

// Largest change of the lower median when one entry is replaced by either
// domain bound.
double MedianSensitivity(std::span<const double> values,
                         const DataDomain& domain);

// median + Lap(sensitivity * (n - k)); throws kNoData when nothing was
// bought.
double FqMedianAnswer(std::span<const double> selected_values, std::size_t n,
                      const DataDomain& domain, const NoiseFn& noise);

// Selection on |w_i|. Throws kInvalidInput when all weights are zero or
// lengths disagree.
BaselineSelection FipSelect(const Market& market,
                            std::span<const double> weights);

// sum_{selected} w_i d_i + midpoint * sum_{unselected} w_i
//   + Lap(width * sum_{unselected} |w_i|).
double FipAnswer(std::span<const double> values,
                 std::span<const double> weights,
                 std::span<const std::size_t> selected,
                 const DataDomain& domain, const NoiseFn& noise);

// eps_i = |w_i| / sum_{unselected} |w_j| for every owner. Throws kAssignment
// when the unselected weight mass is zero.
std::vector<double> FipEpsilonAssignment(
    std::span<const double> weights, std::span<const std::size_t> selected);

}  // namespace pdq

#endif  // PDQ_BASELINES_H_
