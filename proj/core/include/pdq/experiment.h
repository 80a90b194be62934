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
// Experiment harness: budget sweeps over synthetic or loaded data, repeated
// trials per mechanism, and CSV reporting.

#ifndef PDQ_EXPERIMENT_H_
#define PDQ_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdq/datagen_io.h"
#include "pdq/market_model.h"

namespace pdq {

enum class Mechanism { kSmq = 0, kFq = 1, kFip = 2 };

std::string_view MechanismName(Mechanism m);
Mechanism ParseMechanism(std::string_view text);

struct ExperimentConfig {
  QueryKind query = QueryKind::kCount;
  std::vector<Mechanism> mechanisms = {Mechanism::kSmq, Mechanism::kFq};
  // Synthetic population size; ignored when data_file is set.
  std::size_t n = 1000;
  std::vector<double> rhos = {0.0};
  std::vector<double> budget_fractions = {0.1, 0.2, 0.3, 0.4, 0.5,
                                          0.6, 0.7, 0.8, 0.9};
  std::size_t trials = 500;
  std::uint64_t seed = 1;
  std::string output_dir = ".";
  std::string prior = "uniform";

  // Optional dataset; the schema fields apply only when data_file is set.
  std::string data_file;
  TabularSchema schema;
  std::vector<double> new_profile;  // linear predictor; default column means

  // Synthetic data shape.
  double count_p = 0.25;
  int median_max = 10000;
  std::size_t linear_dims = 5;

  int grid_points = 201;
  std::int64_t max_search_nodes = 200'000;
  // Linear-predictor scores may be this far from the optimal cover cost;
  // bounds the search on large samples with near-identical cost ratios.
  double score_tolerance = 1e-3;
  bool zero_noise = false;
  bool fix_population = false;
};

// key = value lines; '#' starts a comment. Lists are comma separated.
// Throws kConfig on unknown keys, bad values or an invalid combination.
ExperimentConfig ParseConfig(std::istream& in);
ExperimentConfig LoadConfig(const std::string& path);
void ValidateConfig(const ExperimentConfig& config);

struct TrialRecord {
  Mechanism mechanism = Mechanism::kSmq;
  QueryKind query = QueryKind::kCount;
  double rho = 0.0;
  double budget_fraction = 0.0;
  std::size_t trial = 0;
  double answer = 0.0;
  double truth = 0.0;
  double purchased_privacy = 0.0;
  std::size_t num_selected = 0;
  double total_paid = 0.0;
  std::uint64_t seed = 0;
  // Nothing was bought; the answer is the mechanism's data-free fallback.
  bool fallback = false;
};

struct SummaryStats {
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double rmse = 0.0;
};

// Mean, empirical central `confidence` interval (linear interpolation
// between order statistics) and RMSE against per-trial truths.
SummaryStats Summarize(const std::vector<double>& answers,
                       const std::vector<double>& truths,
                       double confidence = 0.95);
SummaryStats Summarize(const std::vector<double>& answers, double truth,
                       double confidence = 0.95);

struct SummaryRow {
  Mechanism mechanism = Mechanism::kSmq;
  QueryKind query = QueryKind::kCount;
  double rho = 0.0;
  double budget_fraction = 0.0;
  SummaryStats stats;
  double mean_selected = 0.0;
  double mean_paid = 0.0;
};

struct ExperimentResult {
  std::vector<TrialRecord> trials;
  std::vector<SummaryRow> summary;
  std::size_t dropped_rows = 0;
  std::size_t duplicate_values = 0;
};

// Prepared data shared by all trials of one configuration.
class ExperimentData {
 public:
  static ExperimentData Prepare(const ExperimentConfig& config);

  const std::vector<double>& values() const { return values_; }
  const QuerySpec& query() const { return query_; }
  double truth() const { return truth_; }
  std::size_t factor() const { return factor_; }
  std::size_t dropped_rows() const { return dropped_rows_; }
  std::size_t duplicates() const { return duplicates_; }

 private:
  ExperimentData(std::vector<double> values, QuerySpec query)
      : values_(std::move(values)), query_(std::move(query)) {}

  std::vector<double> values_;
  QuerySpec query_;
  double truth_ = 0.0;
  std::size_t factor_ = 1;
  std::size_t dropped_rows_ = 0;
  std::size_t duplicates_ = 0;
};

// Seeds: the trial seed drives the mechanism's randomness; the population
// seed drives (theta, eps) and is shared by all mechanisms so that they are
// compared on the same draws.
std::uint64_t TrialSeed(std::uint64_t master, Mechanism m,
                        std::size_t budget_index, std::size_t trial);
std::uint64_t PopulationSeed(std::uint64_t master, std::size_t budget_index,
                             std::size_t trial, bool fixed);

// One trial, reproducible in isolation.
TrialRecord RunTrial(const ExperimentConfig& config, const ExperimentData& data,
                     Mechanism mechanism, std::size_t rho_index,
                     std::size_t budget_index, std::size_t trial);

ExperimentResult RunExperiment(const ExperimentConfig& config);

void WriteSummaryCsv(const std::vector<SummaryRow>& rows, std::ostream& out);
void WriteTrialsCsv(const std::vector<TrialRecord>& rows, std::ostream& out);
// Writes summary.csv and trials.csv into config.output_dir.
void WriteResults(const ExperimentResult& result, const std::string& dir);

}  // namespace pdq

#endif  // PDQ_EXPERIMENT_H_
