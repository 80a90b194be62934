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
#include "pdq/baselines.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pdq/errors.h"
#include "pdq/pdp_query.h"

namespace pdq {
namespace {

std::vector<double> PrivacyValuations(const Market& market,
                                      std::span<const double> eps) {
  if (eps.size() != market.size()) {
    throw Error(ErrorCode::kInvalidInput, "eps length must equal n");
  }
  std::vector<double> v(market.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(eps[i] > 0.0)) {
      throw Error(ErrorCode::kInvalidInput, "eps must be > 0");
    }
    v[i] = market.owners()[i].valuation / eps[i];
  }
  return v;
}

std::vector<std::size_t> SortedByValuation(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  return order;
}

double LowerMedian(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

}  // namespace

double BaselineSelection::TotalPaid() const {
  return std::accumulate(per_owner_payment.begin(), per_owner_payment.end(),
                         0.0);
}

NoiseFn LaplaceNoise(Rng& rng) {
  return [&rng](double scale) { return LaplaceSample(scale, rng); };
}

NoiseFn ZeroNoise() {
  return [](double) { return 0.0; };
}

BaselineSelection FqSelect(const Market& market, std::span<const double> eps) {
  const std::size_t n = market.size();
  if (n < 2) throw Error(ErrorCode::kInvalidInput, "FQ needs n >= 2");
  BaselineSelection out;
  out.privacy_valuations = PrivacyValuations(market, eps);
  out.per_owner_payment.assign(n, 0.0);
  const auto& v = out.privacy_valuations;
  const double budget = market.budget();

  std::vector<std::size_t> pool = SortedByValuation(v);
  std::size_t k = 0;
  while (true) {
    k = 0;
    for (std::size_t j = 1; j <= std::min(pool.size(), n - 1); ++j) {
      if (static_cast<double>(j) * v[pool[j - 1]] <= budget) k = j;
    }
    const double level = 1.0 / static_cast<double>(n - k);
    std::vector<std::size_t> kept;
    std::size_t dropped = 0;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (j < k && eps[pool[j]] <= level) {
        ++dropped;
      } else {
        kept.push_back(pool[j]);
      }
    }
    if (dropped == 0) break;
    out.filtered_out += dropped;
    pool = std::move(kept);
  }

  out.k = k;
  out.uniform_dp_level = 1.0 / static_cast<double>(n - k);
  if (k == 0) return out;
  out.selected_indices.assign(pool.begin(),
                              pool.begin() + static_cast<std::ptrdiff_t>(k));
  double price = budget / static_cast<double>(k);
  if (k < pool.size()) {
    price = std::min(price, v[pool[k]] / static_cast<double>(n - k));
  }
  for (std::size_t i : out.selected_indices) out.per_owner_payment[i] = price;
  return out;
}

BaselineSelection FqSelect(const Market& market) {
  const auto eps = market.PrivacyRequirements();
  return FqSelect(market, eps);
}

double FqCountAnswer(std::span<const double> selected_values, std::size_t n,
                     const NoiseFn& noise) {
  const std::size_t k = selected_values.size();
  if (k >= n) {
    throw Error(ErrorCode::kInvalidInput, "FQ needs k <= n - 1");
  }
  const double rest = static_cast<double>(n - k);
  const double sum =
      std::accumulate(selected_values.begin(), selected_values.end(), 0.0);
  return sum + rest / 2.0 + noise(rest);
}

double MedianSensitivity(std::span<const double> values,
                         const DataDomain& domain) {
  if (values.empty()) throw Error(ErrorCode::kNoData, "no data");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size();
  const std::size_t h = (k - 1) / 2;
  const double base = v[h];
  double worst = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    // Sorted data with entry i removed.
    auto rest = [&](std::size_t j) { return j < i ? v[j] : v[j + 1]; };
    // The lower bound lands first, the upper bound last.
    const double with_lower = h == 0 ? domain.lower : rest(h - 1);
    const double with_upper = h + 1 < k ? rest(h) : domain.upper;
    worst = std::max({worst, std::abs(with_lower - base),
                      std::abs(with_upper - base)});
  }
  return worst;
}

double FqMedianAnswer(std::span<const double> selected_values, std::size_t n,
                      const DataDomain& domain, const NoiseFn& noise) {
  const std::size_t k = selected_values.size();
  if (k == 0) throw Error(ErrorCode::kNoData, "FQ median bought no data");
  if (k >= n) throw Error(ErrorCode::kInvalidInput, "FQ needs k <= n - 1");
  const double median =
      LowerMedian({selected_values.begin(), selected_values.end()});
  const double scale = MedianSensitivity(selected_values, domain) *
                       static_cast<double>(n - k);
  return scale > 0.0 ? median + noise(scale) : median;
}

BaselineSelection FipSelect(const Market& market,
                            std::span<const double> weights) {
  const std::size_t n = market.size();
  if (weights.size() != n) {
    throw Error(ErrorCode::kInvalidInput, "weights length must equal n");
  }
  std::vector<double> abs_w(n);
  for (std::size_t i = 0; i < n; ++i) abs_w[i] = std::abs(weights[i]);
  const double total = std::accumulate(abs_w.begin(), abs_w.end(), 0.0);
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "FIP weights are all zero");
  }
  BaselineSelection out;
  const auto eps = market.PrivacyRequirements();
  out.privacy_valuations = PrivacyValuations(market, eps);
  out.per_owner_payment.assign(n, 0.0);
  const auto& v = out.privacy_valuations;
  const double budget = market.budget();

  const auto top = std::max_element(abs_w.begin(), abs_w.end());
  if (*top > total - *top) {
    const auto i = static_cast<std::size_t>(top - abs_w.begin());
    out.dominant = true;
    out.k = 1;
    out.selected_indices = {i};
    out.per_owner_payment[i] = budget;
    return out;
  }

  const std::vector<std::size_t> order = SortedByValuation(v);
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + abs_w[order[j]];
  std::size_t k = 0;
  for (std::size_t j = 1; j <= n - 1; ++j) {
    const double head = prefix[j];
    const double tail = total - prefix[j];
    if (head > 0.0 && tail > 0.0 && budget / head >= v[order[j - 1]] / tail) {
      k = j;
    }
  }
  out.k = k;
  if (k == 0) return out;
  out.selected_indices.assign(order.begin(),
                              order.begin() + static_cast<std::ptrdiff_t>(k));
  const double unit = std::min(budget / prefix[k],
                               v[order[k]] / (total - prefix[k]));
  for (std::size_t i : out.selected_indices) {
    out.per_owner_payment[i] = abs_w[i] * unit;
  }
  return out;
}

double FipAnswer(std::span<const double> values,
                 std::span<const double> weights,
                 std::span<const std::size_t> selected,
                 const DataDomain& domain, const NoiseFn& noise) {
  if (values.size() != weights.size()) {
    throw Error(ErrorCode::kInvalidInput, "values and weights differ in size");
  }
  std::vector<bool> chosen(values.size(), false);
  for (std::size_t i : selected) {
    if (i >= values.size()) {
      throw Error(ErrorCode::kInvalidInput, "selected index out of range");
    }
    chosen[i] = true;
  }
  double bought = 0.0;
  double rest_signed = 0.0;
  double rest_abs = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (chosen[i]) {
      bought += weights[i] * values[i];
    } else {
      rest_signed += weights[i];
      rest_abs += std::abs(weights[i]);
    }
  }
  const double answer = bought + domain.midpoint() * rest_signed;
  const double scale = domain.width() * rest_abs;
  return scale > 0.0 ? answer + noise(scale) : answer;
}

std::vector<double> FipEpsilonAssignment(
    std::span<const double> weights, std::span<const std::size_t> selected) {
  std::vector<bool> chosen(weights.size(), false);
  for (std::size_t i : selected) {
    if (i >= weights.size()) {
      throw Error(ErrorCode::kInvalidInput, "selected index out of range");
    }
    chosen[i] = true;
  }
  double rest = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!chosen[i]) rest += std::abs(weights[i]);
  }
  if (!(rest > 0.0)) {
    throw Error(ErrorCode::kAssignment,
                "no unselected weight mass to normalise by");
  }
  std::vector<double> eps(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    eps[i] = std::abs(weights[i]) / rest;
  }
  return eps;
}

}  // namespace pdq
