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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <utility>

#include "pdq/errors.h"
#include "pdq/procurement.h"

namespace pdq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Probability of each target under `dist`, zero for dropped targets.
std::vector<double> ProbabilitiesOn(const OutputDistribution& dist,
                                    std::span<const double> targets) {
  std::vector<double> p(targets.size(), 0.0);
  std::size_t j = 0;
  for (std::size_t t = 0; t < targets.size() && j < dist.targets.size(); ++t) {
    if (dist.targets[j] == targets[t]) p[t] = dist.probabilities[j++];
  }
  return p;
}

std::vector<double> UnionTargets(const QuerySpec& query,
                                 const SampledDataset& a,
                                 const SampledDataset& b,
                                 const PeOptions& options) {
  std::vector<double> u = CandidateOutputs(query, a, options).targets;
  const auto other = CandidateOutputs(query, b, options).targets;
  u.insert(u.end(), other.begin(), other.end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

bool NeighbourAllowed(const QuerySpec& query, const SampledDataset& s,
                      std::size_t i, double x) {
  if (x == s.values[i]) return false;
  if (query.kind() == QueryKind::kMedian) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j != i && s.values[j] == x) return false;
    }
  }
  return true;
}

}  // namespace

PdpReport VerifyPdp(const QuerySpec& query, const SampledDataset& sampled,
                    std::span<const double> neighbor_domain,
                    const PeOptions& options) {
  if (sampled.size() > kMaxPdpEntries) {
    throw Error(ErrorCode::kInvalidInput,
                "exact PDP enumeration needs at most 8 sampled entries");
  }
  PdpReport report;
  report.required = sampled.eps;
  report.per_index_max_log_ratio.assign(sampled.size(), 0.0);
  std::ostringstream diag;
  for (std::size_t i = 0; i < sampled.size(); ++i) {
    for (double x : neighbor_domain) {
      if (!NeighbourAllowed(query, sampled, i, x)) continue;
      SampledDataset neighbour = sampled;
      neighbour.values[i] = x;
      const auto targets = UnionTargets(query, sampled, neighbour, options);
      const auto p =
          ProbabilitiesOn(PeDistributionOver(query, sampled, targets, options),
                          targets);
      const auto q = ProbabilitiesOn(
          PeDistributionOver(query, neighbour, targets, options), targets);
      double worst = 0.0;
      for (std::size_t r = 0; r < targets.size(); ++r) {
        if (p[r] == 0.0 && q[r] == 0.0) continue;
        const double ratio = (p[r] == 0.0 || q[r] == 0.0)
                                 ? kInf
                                 : std::abs(std::log(p[r]) - std::log(q[r]));
        worst = std::max(worst, ratio);
      }
      double& slot = report.per_index_max_log_ratio[i];
      slot = std::max(slot, worst);
      if (worst > sampled.eps[i] + kPdpSlack && report.pass) {
        report.pass = false;
        diag << "index " << i << " -> " << x << ": log ratio " << worst
             << " exceeds eps " << sampled.eps[i];
      }
    }
  }
  report.diagnostic = diag.str();
  return report;
}

std::vector<double> AchievedPrivacy(const PdpReport& report,
                                    std::span<const std::size_t> selected,
                                    std::size_t n) {
  if (selected.size() != report.per_index_max_log_ratio.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "selection does not match the verified sample");
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < selected.size(); ++j) {
    if (selected[j] >= n) {
      throw Error(ErrorCode::kInvalidInput, "selected index out of range");
    }
    out[selected[j]] = report.per_index_max_log_ratio[j];
  }
  return out;
}

double PacRadius(const OutputDistribution& dist, double truth, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "delta must lie in (0, 1)");
  }
  std::vector<std::pair<double, double>> errors;
  errors.reserve(dist.candidates.size());
  for (std::size_t j = 0; j < dist.candidates.size(); ++j) {
    errors.emplace_back(std::abs(dist.candidates[j] - truth),
                        dist.probabilities[j]);
  }
  std::sort(errors.begin(), errors.end());
  double mass = 0.0;
  for (std::size_t j = 0; j < errors.size(); ++j) {
    mass += errors[j].second;
    const bool group_end =
        j + 1 == errors.size() || errors[j + 1].first != errors[j].first;
    if (group_end && mass >= delta - 1e-12) return errors[j].first;
  }
  return errors.empty() ? 0.0 : errors.back().first;
}

double PurchasedPrivacyLowerBound(std::size_t n, double alpha, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "delta must lie in (0, 1)");
  }
  const double nd = static_cast<double>(n);
  if (!(alpha >= 1.0 && alpha <= nd / 4.0)) {
    throw Error(ErrorCode::kInvalidInput, "alpha must lie in [1, n / 4]");
  }
  return nd / (4.0 * alpha) * (std::log(delta) - std::log1p(-delta));
}

AccuracyBoundReport CheckAccuracyBound(const QuerySpec& query,
                                       const SampledDataset& sampled,
                                       double delta, double truth,
                                       const PeOptions& options) {
  AccuracyBoundReport r;
  const OutputDistribution dist = PeDistribution(query, sampled, options);
  r.pac_radius = PacRadius(dist, truth, delta);
  r.alpha = std::max(1.0, std::ceil(r.pac_radius - 1e-12));
  r.purchased = std::accumulate(sampled.eps.begin(), sampled.eps.end(), 0.0);
  const double n = static_cast<double>(sampled.full_n);
  if (r.alpha > n / 4.0) {
    r.vacuous = true;
    return r;
  }
  r.bound = PurchasedPrivacyLowerBound(sampled.full_n, r.alpha, delta);
  r.holds = r.purchased >= r.bound - 1e-12;
  return r;
}

AccuracyBoundReport CheckAccuracyBound(const QuerySpec& query,
                                       const SampledDataset& sampled,
                                       double delta,
                                       const PeOptions& options) {
  const auto w = query.kind() == QueryKind::kLinearPredictor &&
                         !sampled.weights.empty()
                     ? std::span<const double>(sampled.weights)
                     : std::span<const double>();
  const double truth =
      ReportScale(query, sampled) * EvalQuery(query, sampled.values, w);
  return CheckAccuracyBound(query, sampled, delta, truth, options);
}

IcIrReport CheckIcIr(const RegularPrior& prior, std::span<const double> eps,
                     double budget, double grid_step) {
  if (!(grid_step > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "grid step must be > 0");
  }
  IcIrReport r;
  r.thresholds = SolveThresholds(prior, eps, budget);
  std::vector<double> grid;
  const double span = prior.upper() - prior.lower();
  const auto steps = static_cast<std::size_t>(std::floor(span / grid_step));
  for (std::size_t j = 0; j <= steps; ++j) {
    grid.push_back(std::min(prior.upper(),
                            prior.lower() + static_cast<double>(j) * grid_step));
  }
  if (grid.back() < prior.upper()) grid.push_back(prior.upper());
  for (double theta_star : r.thresholds.thresholds) {
    for (double theta : grid) {
      const double truthful = ExpectedUtility(theta, theta, theta_star);
      const double ir_gap = -truthful;
      r.worst_ir_violation = std::max(r.worst_ir_violation, ir_gap);
      if (ir_gap > kIcIrTolerance) ++r.violations;
      for (double psi : grid) {
        const double gap = ExpectedUtility(psi, theta, theta_star) - truthful;
        r.worst_ic_violation = std::max(r.worst_ic_violation, gap);
        if (gap > kIcIrTolerance) ++r.violations;
      }
    }
  }
  r.pass = r.violations == 0;
  return r;
}

BudgetReport CheckInterimBf(const RegularPrior& prior,
                            std::span<const double> thresholds, double budget,
                            std::size_t draws, Rng& rng) {
  if (draws < 2) throw Error(ErrorCode::kInvalidInput, "need >= 2 draws");
  BudgetReport r;
  for (double t : thresholds) r.analytic_spend += t * prior.Cdf(t);
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t exceed = 0;
  for (std::size_t d = 0; d < draws; ++d) {
    double paid = 0.0;
    for (double t : thresholds) {
      const double theta = prior.Quantile(UniformOpen01(rng));
      paid += ExpectedPayment(theta, t);
    }
    if (paid > budget) ++exceed;
    const double delta = paid - mean;
    mean += delta / static_cast<double>(d + 1);
    m2 += delta * (paid - mean);
  }
  const double var = m2 / static_cast<double>(draws - 1);
  r.mean_spend = mean;
  r.std_error = std::sqrt(var / static_cast<double>(draws));
  r.exceedance_rate =
      static_cast<double>(exceed) / static_cast<double>(draws);
  const double gap = std::abs(mean - budget);
  r.pass = r.std_error > 0.0 ? gap <= 3.0 * r.std_error : gap <= 1e-12;
  return r;
}

std::vector<double> GridReferenceThresholds(const RegularPrior& prior,
                                            std::span<const double> eps,
                                            double budget, double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::kInvalidInput, "step must be > 0");
  const std::size_t n = eps.size();
  std::vector<double> theta(n, prior.lower());
  auto spend_at = [&](double t) { return t * prior.Cdf(t); };
  struct Move {
    double ratio;
    double cost;
    std::size_t owner;
    bool operator<(const Move& o) const { return ratio < o.ratio; }
  };
  auto next_move = [&](std::size_t i) -> std::optional<Move> {
    if (theta[i] >= prior.upper()) return std::nullopt;
    const double to = std::min(prior.upper(), theta[i] + step);
    const double gain = eps[i] * (prior.Cdf(to) - prior.Cdf(theta[i]));
    const double cost = spend_at(to) - spend_at(theta[i]);
    return Move{cost > 0.0 ? gain / cost : kInf, cost, i};
  };
  std::priority_queue<Move> heap;
  for (std::size_t i = 0; i < n; ++i) {
    if (auto m = next_move(i)) heap.push(*m);
  }
  double spent = 0.0;
  while (!heap.empty()) {
    const Move m = heap.top();
    heap.pop();
    if (spent + m.cost > budget) break;
    spent += m.cost;
    theta[m.owner] = std::min(prior.upper(), theta[m.owner] + step);
    if (auto next = next_move(m.owner)) heap.push(*next);
  }
  return theta;
}

namespace {

double Uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * UniformOpen01(rng);
}

std::size_t UniformIndex(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(UniformOpen01(rng) *
                                       static_cast<double>(hi - lo + 1));
}

std::vector<double> RandomEps(Rng& rng, std::size_t m) {
  std::vector<double> eps(m);
  for (double& e : eps) e = Uniform(rng, 0.05, 2.0);
  return eps;
}

std::vector<double> DistinctIntegers(Rng& rng, std::size_t m, int max_value) {
  std::vector<double> pool(static_cast<std::size_t>(max_value));
  std::iota(pool.begin(), pool.end(), 1.0);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(m);
  return pool;
}

}  // namespace

SuiteResult RunPdpSuite(std::uint64_t seed) {
  SuiteResult result;
  result.name = "pdp";
  Rng rng(seed);
  const QuerySpec count = QuerySpec::Count();
  const double bits[] = {0.0, 1.0};
  for (int c = 0; c < 200; ++c) {
    const std::size_t m = UniformIndex(rng, 1, 5);
    std::vector<double> values(m);
    for (double& v : values) v = UniformOpen01(rng) < 0.5 ? 0.0 : 1.0;
    const auto s = MakeSampledDataset(values, RandomEps(rng, m), m);
    const auto report = VerifyPdp(count, s, bits);
    ++result.cases;
    if (!report.pass) {
      ++result.failures;
      result.detail = "count: " + report.diagnostic;
    }
  }
  const QuerySpec median = QuerySpec::Median({1.0, 15.0});
  std::vector<double> domain(15);
  std::iota(domain.begin(), domain.end(), 1.0);
  for (int c = 0; c < 100; ++c) {
    const std::size_t m = UniformIndex(rng, 1, 5);
    const auto s =
        MakeSampledDataset(DistinctIntegers(rng, m, 15), RandomEps(rng, m), m);
    const auto report = VerifyPdp(median, s, domain);
    ++result.cases;
    if (!report.pass) {
      ++result.failures;
      result.detail = "median: " + report.diagnostic;
    }
  }
  return result;
}

SuiteResult RunIcIrSuite(std::uint64_t seed) {
  SuiteResult result;
  result.name = "icir";
  Rng rng(seed);
  const RegularPrior prior = RegularPrior::Uniform();
  for (int c = 0; c < 50; ++c) {
    const std::size_t n = UniformIndex(rng, 1, 5);
    const auto eps = RandomEps(rng, n);
    const double budget = Uniform(rng, 0.0, static_cast<double>(n));
    const auto report = CheckIcIr(prior, eps, budget, 0.01);
    ++result.cases;
    if (!report.pass) {
      ++result.failures;
      std::ostringstream os;
      os << "worst IC gap " << report.worst_ic_violation << ", IR gap "
         << report.worst_ir_violation;
      result.detail = os.str();
    }
  }
  return result;
}

SuiteResult RunAccuracyBoundSuite(std::uint64_t seed) {
  SuiteResult result;
  result.name = "lemma2";
  Rng rng(seed);
  const QuerySpec count = QuerySpec::Count();
  for (double delta : {0.6, 0.75, 0.9}) {
    for (int c = 0; c < 100; ++c) {
      const std::size_t m = UniformIndex(rng, 1, 8);
      std::vector<double> values(m);
      for (double& v : values) v = UniformOpen01(rng) < 0.5 ? 0.0 : 1.0;
      std::vector<double> eps(m);
      for (double& e : eps) e = std::exp(Uniform(rng, -3.0, 2.0));
      const auto s = MakeSampledDataset(values, eps, m);
      const auto report = CheckAccuracyBound(count, s, delta);
      ++result.cases;
      if (!report.holds) {
        ++result.failures;
        std::ostringstream os;
        os << "delta " << delta << ": purchased " << report.purchased
           << " < bound " << report.bound;
        result.detail = os.str();
      }
    }
  }
  return result;
}

SuiteResult RunSolverSuite(std::uint64_t seed) {
  SuiteResult result;
  result.name = "solver";
  Rng rng(seed);
  const RegularPrior prior = RegularPrior::Uniform();
  for (int c = 0; c < 100; ++c) {
    const std::size_t n = UniformIndex(rng, 1, 5);
    const auto eps = RandomEps(rng, n);
    const double budget = Uniform(rng, 0.0, static_cast<double>(n));
    const auto solved = SolveThresholds(prior, eps, budget);
    const auto reference = GridReferenceThresholds(prior, eps, budget, 1e-3);
    const double gap =
        std::abs(PurchasedPrivacyExpectation(prior, eps, solved.thresholds) -
                 PurchasedPrivacyExpectation(prior, eps, reference));
    const bool binding =
        std::abs(solved.expected_spend - budget) <=
        1e-9 * std::max(1.0, budget);
    ++result.cases;
    if (gap > 1e-2 || !binding) {
      ++result.failures;
      std::ostringstream os;
      os << "n=" << n << " B=" << budget << ": objective gap " << gap
         << ", spend " << solved.expected_spend;
      result.detail = os.str();
    }
  }
  return result;
}

}  // namespace pdq
