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

// Personalised-DP query answering with the exponential-style P-E mechanism.
//
// For a sampled dataset d and a candidate target r, the score sigma(d, r) is
// minus the smallest total privacy requirement of a set of entries whose
// modification (within the query's data domain) makes the query evaluate to
// r. The mechanism reports r with probability proportional to
// exp(sigma(d, r) / 2) over a finite candidate range.

#ifndef PDQ_PDP_QUERY_H_
#define PDQ_PDP_QUERY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pdq/market_model.h"
#include "pdq/random.h"

namespace pdq {

// Data bought from the selected owners.
struct SampledDataset {
  std::vector<double> values;
  std::vector<double> eps;
  std::vector<double> weights;  // linear predictor only, aligned with values
  std::size_t full_n = 0;       // population size n
  std::optional<double> full_weight_sum;  // sum of weights over all owners

  std::size_t size() const { return values.size(); }
};

// Checks lengths, eps > 0 and full_n >= size >= 1; throws kInvalidInput.
SampledDataset MakeSampledDataset(std::vector<double> values,
                                  std::vector<double> eps, std::size_t full_n,
                                  std::vector<double> weights = {},
                                  std::optional<double> full_weight_sum = {});

// Picks the `selected` entries out of population-wide vectors. For a linear
// predictor the weights come from the query.
SampledDataset SelectEntries(const QuerySpec& query,
                             std::span<const double> data_values,
                             std::span<const double> eps,
                             std::span<const std::size_t> selected);

struct PeOptions {
  // Size of the uniform target grid for the linear predictor.
  int linear_grid_points = 201;
  // Search-node budget per linear-predictor target; exceeding it keeps the
  // best cover found and clears OutputDistribution::exact.
  std::int64_t max_search_nodes = 2'000'000;
  // Linear-predictor branches whose cost bound is within this much of the
  // best cover are pruned, so scores are at most this far from optimal.
  double score_tolerance = 0.0;
};

struct CandidateSet {
  std::vector<double> targets;   // query values on the sampled data
  std::vector<double> reported;  // what the mechanism outputs for each
};

struct OutputDistribution {
  std::vector<double> candidates;  // reported output values
  std::vector<double> targets;
  std::vector<double> scores;
  std::vector<double> probabilities;
  bool exact = true;
};

struct ScoreResult {
  std::vector<std::optional<double>> scores;  // nullopt: unreachable target
  bool exact = true;
};

// Count: sum; median: lower-middle order statistic; linear predictor:
// sum_i w_i d_i with `weights` (defaults to the query's weights).
// Throws kDomain on data that violates the query's requirements.
double EvalQuery(const QuerySpec& query, std::span<const double> values,
                 std::span<const double> weights = {});

// Factor mapping a sampled-data target to a population-level answer:
// n / |S_c| for count, 1 for median, sum_S w / sum_{S_c} w for the linear
// predictor (kDegenerateScaling when the sampled weight sum is zero).
double ReportScale(const QuerySpec& query, const SampledDataset& sampled);

CandidateSet CandidateOutputs(const QuerySpec& query,
                              const SampledDataset& sampled,
                              const PeOptions& options = {});

// Single-target score. Throws kInfeasibleTarget when no modification within
// the domain reaches `target`.
double Sigma(const QuerySpec& query, const SampledDataset& sampled,
             double target, const PeOptions& options = {});

// Scores for many targets at once (sorted-prefix sums for count, Fenwick
// trees for median, branch and bound for the linear predictor).
ScoreResult ScoreCandidates(const QuerySpec& query,
                            const SampledDataset& sampled,
                            std::span<const double> targets,
                            const PeOptions& options = {});

// exp(score / 2) normalised; computed relative to the largest score.
std::vector<double> HalfSoftmax(std::span<const double> scores);

OutputDistribution PeDistribution(const QuerySpec& query,
                                  const SampledDataset& sampled,
                                  const PeOptions& options = {});

// Distribution over an explicit target list; unreachable targets are
// dropped.
OutputDistribution PeDistributionOver(const QuerySpec& query,
                                      const SampledDataset& sampled,
                                      std::span<const double> targets,
                                      const PeOptions& options = {});

double PeSample(const OutputDistribution& dist, Rng& rng);
// Inverse-CDF lookup for a given uniform level u in (0, 1).
double PeSampleAt(const OutputDistribution& dist, double u);
// Most probable candidate (first on ties).
double PeMode(const OutputDistribution& dist);

// Zero-mean Laplace with scale b (density exp(-|x| / b) / 2b).
double LaplaceSample(double scale, Rng& rng);
double LaplaceFromUniform(double scale, double u);

}  // namespace pdq

#endif  // PDQ_PDP_QUERY_H_
