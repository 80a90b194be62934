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

// The posted-threshold procurement rule: owner i is selected iff her bid is
// at most theta_i* and, when selected, is paid exactly theta_i*.

#ifndef PDQ_PROCUREMENT_H_
#define PDQ_PROCUREMENT_H_

#include <cstddef>
#include <span>
#include <vector>

#include "pdq/threshold_solver.h"

namespace pdq {

struct ProcurementOutcome {
  std::vector<int> allocation;  // q_i in {0, 1}
  std::vector<double> payments;
  std::vector<std::size_t> selected_indices;
  double total_paid = 0.0;
  double purchased_privacy = 0.0;  // sum of eps over selected owners
};

// Throws kInvalidInput on length mismatch. Ties (bid == threshold) select.
ProcurementOutcome AllocateAndPay(std::span<const double> bids,
                                  const ThresholdVector& thresholds,
                                  std::span<const double> eps);

// Interim allocation, payment and utility of one owner reporting `psi`.
// Other owners' reports do not enter because the thresholds do not depend
// on them.
double ExpectedAllocation(double psi, double theta_star);
double ExpectedPayment(double psi, double theta_star);
double ExpectedUtility(double psi, double theta, double theta_star);

}  // namespace pdq

#endif  // PDQ_PROCUREMENT_H_
