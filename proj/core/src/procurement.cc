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
#include "pdq/procurement.h"

#include "pdq/errors.h"

namespace pdq {

ProcurementOutcome AllocateAndPay(std::span<const double> bids,
                                  const ThresholdVector& thresholds,
                                  std::span<const double> eps) {
  const std::size_t n = bids.size();
  if (thresholds.thresholds.size() != n || eps.size() != n) {
    throw Error(ErrorCode::kInvalidInput,
                "bids, thresholds and privacy vectors must have equal length");
  }
  ProcurementOutcome out;
  out.allocation.assign(n, 0);
  out.payments.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = thresholds.thresholds[i];
    if (bids[i] <= t) {
      out.allocation[i] = 1;
      out.payments[i] = t;
      out.selected_indices.push_back(i);
      out.total_paid += t;
      out.purchased_privacy += eps[i];
    }
  }
  return out;
}

double ExpectedAllocation(double psi, double theta_star) {
  return psi <= theta_star ? 1.0 : 0.0;
}

// psi Q(psi) + int_psi^upper Q(s) ds, with Q the step 1{s <= theta_star}.
double ExpectedPayment(double psi, double theta_star) {
  return psi <= theta_star ? theta_star : 0.0;
}

double ExpectedUtility(double psi, double theta, double theta_star) {
  return ExpectedPayment(psi, theta_star) -
         theta * ExpectedAllocation(psi, theta_star);
}

}  // namespace pdq
