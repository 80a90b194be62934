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
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "pdq/errors.h"

namespace pdq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::span<const double> EffectiveWeights(const QuerySpec& query,
                                         const SampledDataset& sampled) {
  return sampled.weights.empty() ? std::span<const double>(query.weights())
                                 : std::span<const double>(sampled.weights);
}

void CheckSampled(const QuerySpec& query, const SampledDataset& sampled) {
  if (sampled.values.empty() || sampled.values.size() != sampled.eps.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "sampled dataset needs equal-length, non-empty values/eps");
  }
  switch (query.kind()) {
    case QueryKind::kCount:
    case QueryKind::kMedian:
      ValidateQueryValues(query, sampled.values);
      break;
    case QueryKind::kLinearPredictor: {
      const auto w = EffectiveWeights(query, sampled);
      if (w.size() != sampled.values.size()) {
        throw Error(ErrorCode::kInvalidInput,
                    "sampled weights must align with sampled values");
      }
      for (double v : sampled.values) {
        if (!(v >= query.domain().lower && v <= query.domain().upper)) {
          throw Error(ErrorCode::kDomain, "value outside the data domain");
        }
      }
      break;
    }
  }
}

double LowerMedianOf(std::vector<double> v) {
  const std::size_t mid = (v.size() - 1) / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid),
                   v.end());
  return v[mid];
}

bool IsPositiveInteger(double t) { return t >= 1.0 && t == std::floor(t); }

// Sum of the `count` smallest entries of `costs` (kInf if too few).
double CheapestSum(std::vector<double> costs, std::size_t count) {
  if (count > costs.size()) return kInf;
  std::partial_sort(costs.begin(),
                    costs.begin() + static_cast<std::ptrdiff_t>(count),
                    costs.end());
  return std::accumulate(costs.begin(),
                         costs.begin() + static_cast<std::ptrdiff_t>(count),
                         0.0);
}

// --- count ----------------------------------------------------------------

std::optional<double> CountCost(const SampledDataset& s, double target) {
  const double m = static_cast<double>(s.size());
  if (!(target >= 0.0 && target <= m) || target != std::floor(target)) {
    return std::nullopt;
  }
  const double current =
      std::accumulate(s.values.begin(), s.values.end(), 0.0);
  const double flip_bit = target > current ? 0.0 : 1.0;
  const auto k = static_cast<std::size_t>(std::abs(target - current));
  std::vector<double> costs;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.values[i] == flip_bit) costs.push_back(s.eps[i]);
  }
  const double cost = CheapestSum(std::move(costs), k);
  if (std::isinf(cost)) return std::nullopt;
  return cost;
}

std::vector<std::optional<double>> CountCosts(const SampledDataset& s,
                                              std::span<const double> targets) {
  std::vector<double> zeros;
  std::vector<double> ones;
  for (std::size_t i = 0; i < s.size(); ++i) {
    (s.values[i] == 1.0 ? ones : zeros).push_back(s.eps[i]);
  }
  auto prefix = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    std::vector<double> p(v.size() + 1, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) p[i + 1] = p[i] + v[i];
    return p;
  };
  const auto zero_prefix = prefix(zeros);
  const auto one_prefix = prefix(ones);
  const double current = static_cast<double>(ones.size());
  const double m = static_cast<double>(s.size());
  std::vector<std::optional<double>> out(targets.size());
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const double t = targets[j];
    if (!(t >= 0.0 && t <= m) || t != std::floor(t)) continue;
    if (t >= current) {
      out[j] = zero_prefix[static_cast<std::size_t>(t - current)];
    } else {
      out[j] = one_prefix[static_cast<std::size_t>(current - t)];
    }
  }
  return out;
}

// --- median ---------------------------------------------------------------
//
// With m entries the lower median sits at sorted position h = (m - 1) / 2.
// Median t requires h entries below t, one equal to t and m - 1 - h above.
// Unmodified entries keep their side, so the cheapest fix moves the surplus
// of the overfull side (its cheapest entries); one of them lands on t when t
// is absent. Only t - 1 distinct positive integers exist below t, so the
// target is unreachable when h > t - 1.

struct MedianCounts {
  std::size_t below = 0;
  std::size_t equal = 0;
  std::size_t above = 0;
};

std::optional<double> MedianCost(const SampledDataset& s, double target) {
  if (!IsPositiveInteger(target)) return std::nullopt;
  const std::size_t m = s.size();
  const std::size_t h = (m - 1) / 2;
  if (static_cast<double>(h) > target - 1.0) return std::nullopt;
  std::vector<double> below;
  std::vector<double> above;
  for (std::size_t i = 0; i < m; ++i) {
    if (s.values[i] < target) below.push_back(s.eps[i]);
    if (s.values[i] > target) above.push_back(s.eps[i]);
  }
  if (below.size() > h) return CheapestSum(std::move(below), below.size() - h);
  if (above.size() > m - 1 - h) {
    return CheapestSum(std::move(above), above.size() - (m - 1 - h));
  }
  return 0.0;
}

// Fenwick tree over cost ranks answering "sum of the s cheapest inserted".
class CheapestSumTree {
 public:
  explicit CheapestSumTree(std::size_t n) : count_(n + 1, 0), sum_(n + 1) {}

  void Insert(std::size_t rank, double cost) {
    for (std::size_t i = rank + 1; i < count_.size(); i += i & (~i + 1)) {
      count_[i] += 1;
      sum_[i] += cost;
    }
    ++size_;
  }

  std::size_t size() const { return size_; }

  double SmallestSum(std::size_t s) const {
    std::size_t pos = 0;
    std::size_t remaining = s;
    double total = 0.0;
    std::size_t step = 1;
    while (step * 2 < count_.size()) step *= 2;
    for (; step > 0; step /= 2) {
      const std::size_t next = pos + step;
      if (next < count_.size() && count_[next] <= remaining) {
        pos = next;
        remaining -= count_[next];
        total += sum_[next];
      }
    }
    return total;
  }

 private:
  std::vector<std::size_t> count_;
  std::vector<double> sum_;
  std::size_t size_ = 0;
};

std::vector<std::optional<double>> MedianCosts(
    const SampledDataset& s, std::span<const double> targets) {
  const std::size_t m = s.size();
  const std::size_t h = (m - 1) / 2;
  std::vector<std::size_t> by_value(m);
  std::iota(by_value.begin(), by_value.end(), 0);
  std::sort(by_value.begin(), by_value.end(), [&](std::size_t a, std::size_t b) {
    return s.values[a] < s.values[b];
  });
  std::vector<std::size_t> by_cost(m);
  std::iota(by_cost.begin(), by_cost.end(), 0);
  std::stable_sort(by_cost.begin(), by_cost.end(),
                   [&](std::size_t a, std::size_t b) {
                     return s.eps[a] < s.eps[b];
                   });
  std::vector<std::size_t> rank(m);
  for (std::size_t r = 0; r < m; ++r) rank[by_cost[r]] = r;
  std::vector<double> sorted_values(m);
  for (std::size_t r = 0; r < m; ++r) sorted_values[r] = s.values[by_value[r]];

  std::vector<std::size_t> order(targets.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return targets[a] < targets[b];
  });

  std::vector<std::optional<double>> out(targets.size());
  std::vector<MedianCounts> counts(targets.size());
  std::vector<bool> feasible(targets.size(), false);
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const double t = targets[j];
    if (!IsPositiveInteger(t) || static_cast<double>(h) > t - 1.0) continue;
    feasible[j] = true;
    const auto lo = std::lower_bound(sorted_values.begin(),
                                     sorted_values.end(), t);
    const auto hi = std::upper_bound(lo, sorted_values.end(), t);
    counts[j].below = static_cast<std::size_t>(lo - sorted_values.begin());
    counts[j].equal = static_cast<std::size_t>(hi - lo);
    counts[j].above = m - counts[j].below - counts[j].equal;
    out[j] = 0.0;
  }

  // Surplus below t: ascending sweep over targets.
  CheapestSumTree below_tree(m);
  std::size_t next = 0;
  for (std::size_t j : order) {
    if (!feasible[j]) continue;
    while (next < counts[j].below) {
      const std::size_t idx = by_value[next++];
      below_tree.Insert(rank[idx], s.eps[idx]);
    }
    if (counts[j].below > h) {
      out[j] = below_tree.SmallestSum(counts[j].below - h);
    }
  }
  // Surplus above t: descending sweep.
  CheapestSumTree above_tree(m);
  std::size_t taken = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t j = *it;
    if (!feasible[j]) continue;
    while (taken < counts[j].above) {
      const std::size_t idx = by_value[m - 1 - taken++];
      above_tree.Insert(rank[idx], s.eps[idx]);
    }
    if (counts[j].above > m - 1 - h) {
      out[j] = above_tree.SmallestSum(counts[j].above - (m - 1 - h));
    }
  }
  return out;
}

// --- linear predictor -----------------------------------------------------
//
// Shifting the weighted sum by delta needs a set of entries whose combined
// capacity in that direction (w_i times the room to the domain bound) covers
// |delta|; any shift up to the capacity is reachable because values are
// continuous. The cheapest such set is a min-cost covering knapsack, solved
// exactly by depth-first branch and bound over entries ordered by cost per
// unit capacity with the fractional relaxation as the bound.

class CoverSolver {
 public:
  CoverSolver(std::vector<double> costs, std::vector<double> caps,
              std::int64_t node_budget, double slack)
      : node_budget_(node_budget), slack_(slack) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < caps.size(); ++i) {
      if (caps[i] > 0.0) order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double ra = costs[a] / caps[a];
      const double rb = costs[b] / caps[b];
      if (ra != rb) return ra < rb;
      return caps[a] > caps[b];
    });
    for (std::size_t i : order) {
      cost_.push_back(costs[i]);
      cap_.push_back(caps[i]);
    }
    prefix_cost_.assign(cost_.size() + 1, 0.0);
    prefix_cap_.assign(cap_.size() + 1, 0.0);
    for (std::size_t i = 0; i < cost_.size(); ++i) {
      prefix_cost_[i + 1] = prefix_cost_[i] + cost_[i];
      prefix_cap_[i + 1] = prefix_cap_[i] + cap_[i];
    }
  }

  double total_capacity() const { return prefix_cap_.back(); }

  // Minimum cost to cover `need`; kInf when unreachable.
  double Solve(double need, double tol, bool* exact) {
    tol_ = tol;
    best_ = kInf;
    nodes_ = 0;
    truncated_ = false;
    if (need <= tol_) return 0.0;
    if (total_capacity() < need - tol_) return kInf;
    Search(0, 0.0, need);
    if (truncated_ && exact != nullptr) *exact = false;
    return best_;
  }

 private:
  void Search(std::size_t i, double cost, double need) {
    if (need <= tol_) {
      best_ = std::min(best_, cost);
      return;
    }
    if (i >= cost_.size()) return;
    if (++nodes_ > node_budget_) {
      truncated_ = true;
      return;
    }
    // Fractional relaxation over the undecided suffix [i, end).
    const double base = prefix_cap_[i];
    auto it = std::lower_bound(prefix_cap_.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                               prefix_cap_.end(), base + need - tol_);
    if (it == prefix_cap_.end()) return;
    const std::size_t j = static_cast<std::size_t>(it - prefix_cap_.begin()) - 1;
    const double covered = prefix_cap_[j] - base;
    const double bound = cost + (prefix_cost_[j] - prefix_cost_[i]) +
                         cost_[j] * std::max(0.0, need - covered) / cap_[j];
    if (bound >= best_ * (1.0 - 1e-15) - slack_) return;
    Search(i + 1, cost + cost_[i], need - cap_[i]);
    Search(i + 1, cost, need);
  }

  std::vector<double> cost_;
  std::vector<double> cap_;
  std::vector<double> prefix_cost_;
  std::vector<double> prefix_cap_;
  std::int64_t node_budget_;
  double slack_;
  std::int64_t nodes_ = 0;
  bool truncated_ = false;
  double tol_ = 0.0;
  double best_ = kInf;
};

struct LinearSetup {
  double current = 0.0;
  double scale = 1.0;  // magnitude used for tolerances
  std::vector<double> up_caps;
  std::vector<double> down_caps;
};

LinearSetup MakeLinearSetup(const QuerySpec& query,
                            const SampledDataset& s) {
  const auto w = EffectiveWeights(query, s);
  const DataDomain& dom = query.domain();
  LinearSetup setup;
  setup.up_caps.resize(s.size());
  setup.down_caps.resize(s.size());
  double spread = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double d = s.values[i];
    setup.current += w[i] * d;
    const double raise = dom.upper - d;
    const double lower = d - dom.lower;
    if (w[i] > 0) {
      setup.up_caps[i] = w[i] * raise;
      setup.down_caps[i] = w[i] * lower;
    } else {
      setup.up_caps[i] = -w[i] * lower;
      setup.down_caps[i] = -w[i] * raise;
    }
    spread += std::abs(w[i]) * (std::abs(dom.upper) + std::abs(dom.lower));
  }
  setup.scale = std::max(1.0, spread);
  return setup;
}

std::vector<std::optional<double>> LinearCosts(const QuerySpec& query,
                                               const SampledDataset& s,
                                               std::span<const double> targets,
                                               const PeOptions& options,
                                               bool* exact) {
  const LinearSetup setup = MakeLinearSetup(query, s);
  const double tol = 1e-12 * setup.scale;
  CoverSolver up(s.eps, setup.up_caps, options.max_search_nodes,
                 options.score_tolerance);
  CoverSolver down(s.eps, setup.down_caps, options.max_search_nodes,
                   options.score_tolerance);
  std::vector<std::optional<double>> out(targets.size());
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const double delta = targets[j] - setup.current;
    const double cost = delta >= 0 ? up.Solve(delta, tol, exact)
                                   : down.Solve(-delta, tol, exact);
    if (!std::isinf(cost)) out[j] = cost;
  }
  return out;
}

}  // namespace

SampledDataset MakeSampledDataset(std::vector<double> values,
                                  std::vector<double> eps, std::size_t full_n,
                                  std::vector<double> weights,
                                  std::optional<double> full_weight_sum) {
  if (values.empty() || values.size() != eps.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "sampled values and eps must be non-empty and equal length");
  }
  if (!weights.empty() && weights.size() != values.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "sampled weights must align with sampled values");
  }
  if (full_n < values.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "population size smaller than the sample");
  }
  for (double e : eps) {
    if (!(e > 0.0) || !std::isfinite(e)) {
      throw Error(ErrorCode::kInvalidInput, "sampled eps must be > 0");
    }
  }
  SampledDataset s;
  s.values = std::move(values);
  s.eps = std::move(eps);
  s.weights = std::move(weights);
  s.full_n = full_n;
  s.full_weight_sum = full_weight_sum;
  return s;
}

SampledDataset SelectEntries(const QuerySpec& query,
                             std::span<const double> data_values,
                             std::span<const double> eps,
                             std::span<const std::size_t> selected) {
  if (data_values.size() != eps.size()) {
    throw Error(ErrorCode::kInvalidInput, "length mismatch");
  }
  const bool linear = query.kind() == QueryKind::kLinearPredictor;
  if (linear && query.weights().size() != data_values.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "query weights must cover the whole population");
  }
  std::vector<double> v;
  std::vector<double> e;
  std::vector<double> w;
  for (std::size_t i : selected) {
    if (i >= data_values.size()) {
      throw Error(ErrorCode::kInvalidInput, "selected index out of range");
    }
    v.push_back(data_values[i]);
    e.push_back(eps[i]);
    if (linear) w.push_back(query.weights()[i]);
  }
  std::optional<double> full_sum;
  if (linear) {
    full_sum = std::accumulate(query.weights().begin(), query.weights().end(),
                               0.0);
  }
  return MakeSampledDataset(std::move(v), std::move(e), data_values.size(),
                            std::move(w), full_sum);
}

double EvalQuery(const QuerySpec& query, std::span<const double> values,
                 std::span<const double> weights) {
  if (values.empty()) {
    throw Error(ErrorCode::kInvalidInput, "query over an empty dataset");
  }
  switch (query.kind()) {
    case QueryKind::kCount:
      ValidateQueryValues(query, values);
      return std::accumulate(values.begin(), values.end(), 0.0);
    case QueryKind::kMedian:
      ValidateQueryValues(query, values);
      return LowerMedianOf({values.begin(), values.end()});
    case QueryKind::kLinearPredictor: {
      const auto w = weights.empty() ? std::span<const double>(query.weights())
                                     : weights;
      if (w.size() != values.size()) {
        throw Error(ErrorCode::kDomain,
                    "linear predictor weights do not match the values");
      }
      return std::inner_product(values.begin(), values.end(), w.begin(), 0.0);
    }
  }
  return 0.0;
}

double ReportScale(const QuerySpec& query, const SampledDataset& sampled) {
  switch (query.kind()) {
    case QueryKind::kCount:
      return static_cast<double>(sampled.full_n) /
             static_cast<double>(sampled.size());
    case QueryKind::kMedian:
      return 1.0;
    case QueryKind::kLinearPredictor: {
      const auto w = EffectiveWeights(query, sampled);
      const double sampled_sum = std::accumulate(w.begin(), w.end(), 0.0);
      if (sampled_sum == 0.0) {
        throw Error(ErrorCode::kDegenerateScaling,
                    "sampled weights sum to zero");
      }
      return sampled.full_weight_sum.value_or(sampled_sum) / sampled_sum;
    }
  }
  return 1.0;
}

CandidateSet CandidateOutputs(const QuerySpec& query,
                              const SampledDataset& sampled,
                              const PeOptions& options) {
  CheckSampled(query, sampled);
  CandidateSet out;
  const std::size_t m = sampled.size();
  switch (query.kind()) {
    case QueryKind::kCount:
      for (std::size_t t = 0; t <= m; ++t) {
        out.targets.push_back(static_cast<double>(t));
      }
      break;
    case QueryKind::kMedian: {
      std::vector<double> v = sampled.values;
      std::sort(v.begin(), v.end());
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0 && v[i] - v[i - 1] >= 2.0) {
          out.targets.push_back(std::floor(0.5 * (v[i] + v[i - 1])));
        }
        out.targets.push_back(v[i]);
      }
      break;
    }
    case QueryKind::kLinearPredictor: {
      const auto w = EffectiveWeights(query, sampled);
      const DataDomain& dom = query.domain();
      double lo = 0.0;
      double hi = 0.0;
      for (double wi : w) {
        lo += std::min(wi * dom.lower, wi * dom.upper);
        hi += std::max(wi * dom.lower, wi * dom.upper);
      }
      const int g = options.linear_grid_points;
      if (g < 1) {
        throw Error(ErrorCode::kInvalidInput, "grid needs at least 1 point");
      }
      if (g == 1) {
        out.targets.push_back(EvalQuery(query, sampled.values, w));
      } else if (hi == lo) {
        out.targets.push_back(lo);
      } else {
        for (int j = 0; j < g; ++j) {
          out.targets.push_back(j == g - 1 ? hi : lo + (hi - lo) * j / (g - 1));
        }
      }
      break;
    }
  }
  const double scale = ReportScale(query, sampled);
  out.reported.reserve(out.targets.size());
  for (double t : out.targets) out.reported.push_back(scale * t);
  return out;
}

double Sigma(const QuerySpec& query, const SampledDataset& sampled,
             double target, const PeOptions& options) {
  CheckSampled(query, sampled);
  std::optional<double> cost;
  switch (query.kind()) {
    case QueryKind::kCount:
      cost = CountCost(sampled, target);
      break;
    case QueryKind::kMedian:
      cost = MedianCost(sampled, target);
      break;
    case QueryKind::kLinearPredictor: {
      const double t[] = {target};
      cost = LinearCosts(query, sampled, t, options, nullptr)[0];
      break;
    }
  }
  if (!cost) {
    throw Error(ErrorCode::kInfeasibleTarget,
                "no in-domain modification reaches the target");
  }
  return -*cost;
}

ScoreResult ScoreCandidates(const QuerySpec& query,
                            const SampledDataset& sampled,
                            std::span<const double> targets,
                            const PeOptions& options) {
  CheckSampled(query, sampled);
  ScoreResult result;
  switch (query.kind()) {
    case QueryKind::kCount:
      result.scores = CountCosts(sampled, targets);
      break;
    case QueryKind::kMedian:
      result.scores = MedianCosts(sampled, targets);
      break;
    case QueryKind::kLinearPredictor:
      result.scores =
          LinearCosts(query, sampled, targets, options, &result.exact);
      break;
  }
  for (auto& s : result.scores) {
    if (s) *s = *s == 0.0 ? 0.0 : -*s;
  }
  return result;
}

std::vector<double> HalfSoftmax(std::span<const double> scores) {
  if (scores.empty()) return {};
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<double> p(scores.size());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    p[i] = std::exp(0.5 * (scores[i] - top));
    total += p[i];
  }
  for (double& x : p) x /= total;
  return p;
}

OutputDistribution PeDistributionOver(const QuerySpec& query,
                                      const SampledDataset& sampled,
                                      std::span<const double> targets,
                                      const PeOptions& options) {
  const ScoreResult scored = ScoreCandidates(query, sampled, targets, options);
  const double scale = ReportScale(query, sampled);
  OutputDistribution dist;
  dist.exact = scored.exact;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    if (!scored.scores[j]) continue;
    dist.targets.push_back(targets[j]);
    dist.candidates.push_back(scale * targets[j]);
    dist.scores.push_back(*scored.scores[j]);
  }
  if (dist.targets.empty()) {
    throw Error(ErrorCode::kInfeasibleTarget, "no reachable candidate");
  }
  dist.probabilities = HalfSoftmax(dist.scores);
  return dist;
}

OutputDistribution PeDistribution(const QuerySpec& query,
                                  const SampledDataset& sampled,
                                  const PeOptions& options) {
  const CandidateSet candidates = CandidateOutputs(query, sampled, options);
  return PeDistributionOver(query, sampled, candidates.targets, options);
}

double PeSampleAt(const OutputDistribution& dist, double u) {
  if (dist.candidates.empty()) {
    throw Error(ErrorCode::kInvalidInput, "empty output distribution");
  }
  double cumulative = 0.0;
  for (std::size_t j = 0; j < dist.probabilities.size(); ++j) {
    cumulative += dist.probabilities[j];
    if (u < cumulative) return dist.candidates[j];
  }
  // Rounding left the total slightly below u; fall back to the last
  // candidate with positive mass.
  for (std::size_t j = dist.probabilities.size(); j-- > 0;) {
    if (dist.probabilities[j] > 0.0) return dist.candidates[j];
  }
  return dist.candidates.back();
}

double PeSample(const OutputDistribution& dist, Rng& rng) {
  return PeSampleAt(dist, UniformOpen01(rng));
}

double PeMode(const OutputDistribution& dist) {
  if (dist.candidates.empty()) {
    throw Error(ErrorCode::kInvalidInput, "empty output distribution");
  }
  const auto it =
      std::max_element(dist.probabilities.begin(), dist.probabilities.end());
  return dist.candidates[static_cast<std::size_t>(
      it - dist.probabilities.begin())];
}

double LaplaceFromUniform(double scale, double u) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::kInvalidInput, "Laplace scale must be > 0");
  }
  if (!(u > 0.0 && u < 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "uniform level must be in (0, 1)");
  }
  const double x = u - 0.5;
  if (x == 0.0) return 0.0;
  const double sign = x > 0 ? 1.0 : -1.0;
  return -scale * sign * std::log1p(-2.0 * std::abs(x));
}

double LaplaceSample(double scale, Rng& rng) {
  return LaplaceFromUniform(scale, UniformOpen01(rng));
}

}  // namespace pdq
