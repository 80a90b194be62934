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
#include "pdq/experiment.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "pdq/baselines.h"
#include "pdq/errors.h"
#include "pdq/pdp_query.h"
#include "pdq/procurement.h"
#include "pdq/threshold_solver.h"

namespace pdq {
namespace {

constexpr std::uint64_t kPopulationTag = 0x706f70756c617469ULL;
constexpr std::uint64_t kDataTag = 0x6461746173657421ULL;

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> SplitList(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string_view::npos ? s.size() : comma;
    const std::string item = Trim(s.substr(start, end - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void BadValue(const std::string& key, const std::string& value) {
  throw Error(ErrorCode::kConfig,
              "invalid value '" + value + "' for key '" + key + "'");
}

double ToDouble(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    BadValue(key, value);
  }
  return out;
}

std::uint64_t ToUnsigned(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) BadValue(key, value);
  return out;
}

bool ToBool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  BadValue(key, value);
}

std::vector<double> ToDoubles(const std::string& key,
                              const std::string& value) {
  std::vector<double> out;
  for (const auto& item : SplitList(value)) out.push_back(ToDouble(key, item));
  if (out.empty()) BadValue(key, value);
  return out;
}

std::string FormatNumber(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

double Percentile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

bool Supports(Mechanism m, QueryKind q) {
  switch (m) {
    case Mechanism::kSmq:
      return true;
    case Mechanism::kFq:
      return q != QueryKind::kLinearPredictor;
    case Mechanism::kFip:
      return q == QueryKind::kLinearPredictor;
  }
  return false;
}

// Data-free answer used when a mechanism buys nothing.
double FallbackAnswer(const QuerySpec& query, std::size_t n) {
  switch (query.kind()) {
    case QueryKind::kCount:
      return static_cast<double>(n) / 2.0;
    case QueryKind::kMedian:
      return query.domain().midpoint();
    case QueryKind::kLinearPredictor: {
      const auto& w = query.weights();
      return query.domain().midpoint() *
             std::accumulate(w.begin(), w.end(), 0.0);
    }
  }
  return 0.0;
}

}  // namespace

std::string_view MechanismName(Mechanism m) {
  switch (m) {
    case Mechanism::kSmq:
      return "SMQ";
    case Mechanism::kFq:
      return "FQ";
    case Mechanism::kFip:
      return "FIP";
  }
  return "?";
}

Mechanism ParseMechanism(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (upper == "SMQ") return Mechanism::kSmq;
  if (upper == "FQ") return Mechanism::kFq;
  if (upper == "FIP") return Mechanism::kFip;
  throw Error(ErrorCode::kConfig, "unknown mechanism '" + std::string(text) +
                                      "'");
}

ExperimentConfig ParseConfig(std::istream& in) {
  ExperimentConfig c;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (Trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfig,
                  "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = Trim(std::string_view(line).substr(0, eq));
    const std::string value = Trim(std::string_view(line).substr(eq + 1));
    if (key == "query") {
      try {
        c.query = ParseQueryKind(value);
      } catch (const Error&) {
        BadValue(key, value);
      }
    } else if (key == "mechanisms") {
      c.mechanisms.clear();
      for (const auto& item : SplitList(value)) {
        c.mechanisms.push_back(ParseMechanism(item));
      }
    } else if (key == "n") {
      c.n = ToUnsigned(key, value);
    } else if (key == "rho") {
      c.rhos = ToDoubles(key, value);
    } else if (key == "budget_fractions") {
      c.budget_fractions = ToDoubles(key, value);
    } else if (key == "trials") {
      c.trials = ToUnsigned(key, value);
    } else if (key == "seed") {
      c.seed = ToUnsigned(key, value);
    } else if (key == "output_dir") {
      c.output_dir = value;
    } else if (key == "prior") {
      c.prior = value;
    } else if (key == "data_file") {
      c.data_file = value;
    } else if (key == "delimiter") {
      if (value == "tab" || value == "\\t") {
        c.schema.delimiter = '\t';
      } else if (value.size() == 1) {
        c.schema.delimiter = value[0];
      } else {
        BadValue(key, value);
      }
    } else if (key == "query_column") {
      c.schema.query_column = value;
    } else if (key == "transform") {
      try {
        c.schema.transform = ParseColumnTransform(value);
      } catch (const Error&) {
        BadValue(key, value);
      }
    } else if (key == "threshold") {
      c.schema.threshold = ToDouble(key, value);
    } else if (key == "profile_columns") {
      c.schema.profile_columns = SplitList(value);
    } else if (key == "new_profile") {
      c.new_profile = ToDoubles(key, value);
    } else if (key == "count_p") {
      c.count_p = ToDouble(key, value);
    } else if (key == "median_max") {
      c.median_max = static_cast<int>(ToUnsigned(key, value));
    } else if (key == "linear_dims") {
      c.linear_dims = ToUnsigned(key, value);
    } else if (key == "grid_points") {
      c.grid_points = static_cast<int>(ToUnsigned(key, value));
    } else if (key == "max_search_nodes") {
      c.max_search_nodes = static_cast<std::int64_t>(ToUnsigned(key, value));
    } else if (key == "score_tolerance") {
      c.score_tolerance = ToDouble(key, value);
    } else if (key == "zero_noise") {
      c.zero_noise = ToBool(key, value);
    } else if (key == "fix_population") {
      c.fix_population = ToBool(key, value);
    } else {
      throw Error(ErrorCode::kConfig, "unknown key '" + key + "'");
    }
  }
  ValidateConfig(c);
  return c;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return ParseConfig(in);
}

void ValidateConfig(const ExperimentConfig& c) {
  if (c.trials < 1) throw Error(ErrorCode::kConfig, "trials must be >= 1");
  if (c.mechanisms.empty()) {
    throw Error(ErrorCode::kConfig, "no mechanism selected");
  }
  for (Mechanism m : c.mechanisms) {
    if (!Supports(m, c.query)) {
      throw Error(ErrorCode::kConfig,
                  std::string(MechanismName(m)) + " does not answer " +
                      std::string(QueryKindName(c.query)) + " queries");
    }
  }
  for (double f : c.budget_fractions) {
    if (!(f > 0.0 && f <= 1.0)) {
      throw Error(ErrorCode::kConfig, "budget fractions must lie in (0, 1]");
    }
  }
  for (double r : c.rhos) {
    if (!(r >= -1.0 && r <= 0.0)) {
      throw Error(ErrorCode::kConfig, "rho must lie in [-1, 0]");
    }
  }
  if (c.data_file.empty() && c.n < 2) {
    throw Error(ErrorCode::kConfig, "n must be >= 2");
  }
  if (!c.data_file.empty() && c.schema.query_column.empty()) {
    throw Error(ErrorCode::kConfig, "data_file needs query_column");
  }
  if (!(c.score_tolerance >= 0.0)) {
    throw Error(ErrorCode::kConfig, "score_tolerance must be >= 0");
  }
  if (c.grid_points < 1) {
    throw Error(ErrorCode::kConfig, "grid_points must be >= 1");
  }
  if (!PriorRegistry::WithBuiltins().Contains(c.prior)) {
    throw Error(ErrorCode::kConfig, "unknown prior '" + c.prior + "'");
  }
}

SummaryStats Summarize(const std::vector<double>& answers,
                       const std::vector<double>& truths, double confidence) {
  if (answers.empty() || answers.size() != truths.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "need matching, non-empty answers and truths");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "confidence must lie in (0, 1)");
  }
  SummaryStats s;
  const double count = static_cast<double>(answers.size());
  s.mean = std::accumulate(answers.begin(), answers.end(), 0.0) / count;
  double sq = 0.0;
  for (std::size_t i = 0; i < answers.size(); ++i) {
    const double e = answers[i] - truths[i];
    sq += e * e;
  }
  s.rmse = std::sqrt(sq / count);
  std::vector<double> sorted = answers;
  std::sort(sorted.begin(), sorted.end());
  const double tail = 0.5 * (1.0 - confidence);
  s.ci_low = Percentile(sorted, tail);
  s.ci_high = Percentile(sorted, 1.0 - tail);
  return s;
}

SummaryStats Summarize(const std::vector<double>& answers, double truth,
                       double confidence) {
  return Summarize(answers, std::vector<double>(answers.size(), truth),
                   confidence);
}

ExperimentData ExperimentData::Prepare(const ExperimentConfig& config) {
  Rng rng(CombineSeeds({config.seed, kDataTag}));
  std::vector<double> values;
  std::vector<std::vector<double>> profiles;
  std::vector<double> new_profile = config.new_profile;
  std::size_t dropped = 0;
  const bool from_file = !config.data_file.empty();
  if (from_file) {
    TabularData t = LoadTabular(config.data_file, config.schema);
    values = std::move(t.values);
    profiles = std::move(t.profiles);
    dropped = t.dropped_rows;
  } else if (config.query == QueryKind::kCount) {
    values = GenCountData(config.n, config.count_p, rng);
  } else if (config.query == QueryKind::kMedian) {
    values = GenMedianData(config.n, config.median_max, rng);
  } else {
    LinearData d = GenLinearData(config.n, config.linear_dims, rng);
    values = std::move(d.values);
    profiles = std::move(d.profiles);
    if (new_profile.empty()) new_profile = std::move(d.new_profile);
  }
  if (values.size() < 2) {
    throw Error(ErrorCode::kEmptyDataset, "need at least two data rows");
  }

  std::size_t factor = 1;
  std::size_t duplicates = 0;
  std::optional<QuerySpec> query;
  switch (config.query) {
    case QueryKind::kCount:
      query = QuerySpec::Count();
      break;
    case QueryKind::kMedian: {
      if (from_file) {
        DistinctValues d = MakeDistinct(values);
        duplicates = d.duplicates;
        if (duplicates > 0) {
          factor = d.factor;
          values = std::move(d.values);
        }
      }
      const double hi = from_file
                            ? *std::max_element(values.begin(), values.end())
                            : static_cast<double>(config.median_max);
      query = QuerySpec::Median({1.0, std::max(1.0, hi)});
      break;
    }
    case QueryKind::kLinearPredictor: {
      if (profiles.empty()) {
        throw Error(ErrorCode::kConfig,
                    "linear predictor needs profile columns");
      }
      if (new_profile.empty()) {
        new_profile.assign(profiles.front().size(), 0.0);
        for (const auto& p : profiles) {
          for (std::size_t j = 0; j < p.size(); ++j) new_profile[j] += p[j];
        }
        for (double& x : new_profile) x /= static_cast<double>(profiles.size());
      }
      const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
      DataDomain domain{*lo, *hi};
      if (!from_file) domain = {0.0, 1.0};
      query = QuerySpec::LinearPredictor(CosineWeights(profiles, new_profile),
                                         domain);
      break;
    }
  }
  ExperimentData data(std::move(values), std::move(*query));
  data.truth_ = EvalQuery(data.query_, data.values_);
  if (factor > 1) data.truth_ = MapBack(data.truth_, factor);
  data.factor_ = factor;
  data.dropped_rows_ = dropped;
  data.duplicates_ = duplicates;
  return data;
}

std::uint64_t TrialSeed(std::uint64_t master, Mechanism m,
                        std::size_t budget_index, std::size_t trial) {
  return CombineSeeds({master, static_cast<std::uint64_t>(m), budget_index,
                       trial});
}

std::uint64_t PopulationSeed(std::uint64_t master, std::size_t budget_index,
                             std::size_t trial, bool fixed) {
  if (fixed) return CombineSeeds({master, kPopulationTag});
  return CombineSeeds({master, kPopulationTag, budget_index, trial});
}

TrialRecord RunTrial(const ExperimentConfig& config, const ExperimentData& data,
                     Mechanism mechanism, std::size_t rho_index,
                     std::size_t budget_index, std::size_t trial) {
  const QuerySpec& query = data.query();
  const std::size_t n = data.values().size();
  TrialRecord rec;
  rec.mechanism = mechanism;
  rec.query = query.kind();
  rec.rho = config.rhos.at(rho_index);
  rec.budget_fraction = config.budget_fractions.at(budget_index);
  rec.trial = trial;
  rec.truth = data.truth();
  rec.seed = TrialSeed(config.seed, mechanism, budget_index, trial);

  const RegularPrior prior =
      PriorRegistry::WithBuiltins().Create(config.prior, 0.0, 1.0);
  PopulationSpec spec;
  spec.n = n;
  spec.rho = rec.rho;
  spec.seed = PopulationSeed(config.seed, budget_index, trial,
                             config.fix_population);
  const Population pop = GenCorrelatedUniforms(spec);
  std::vector<PrivacyAwareOwner> owners;
  owners.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    owners.push_back(MakeOwner(data.values()[i], pop.theta[i], pop.eps[i]));
  }
  const double budget =
      rec.budget_fraction * prior.upper() * static_cast<double>(n);
  const Market market = Market::Create(std::move(owners), prior, budget);

  Rng rng(rec.seed);
  const NoiseFn noise = config.zero_noise ? ZeroNoise() : LaplaceNoise(rng);
  const auto& values = data.values();
  const double scale_back = static_cast<double>(data.factor());

  switch (mechanism) {
    case Mechanism::kSmq: {
      std::vector<double> eps = pop.eps;
      if (query.kind() == QueryKind::kLinearPredictor) {
        const BaselineSelection fip = FipSelect(market, query.weights());
        eps = FipEpsilonAssignment(query.weights(), fip.selected_indices);
      }
      const ThresholdVector th = SolveThresholds(prior, eps, budget);
      const ProcurementOutcome out = AllocateAndPay(pop.theta, th, eps);
      rec.num_selected = out.selected_indices.size();
      rec.total_paid = out.total_paid;
      rec.purchased_privacy = out.purchased_privacy;
      if (out.selected_indices.empty()) {
        rec.fallback = true;
        rec.answer = FallbackAnswer(query, n);
        break;
      }
      const SampledDataset sampled =
          SelectEntries(query, values, eps, out.selected_indices);
      PeOptions options;
      options.linear_grid_points = config.grid_points;
      options.max_search_nodes = config.max_search_nodes;
      options.score_tolerance = config.score_tolerance;
      const OutputDistribution dist = PeDistribution(query, sampled, options);
      rec.answer = config.zero_noise ? PeMode(dist) : PeSample(dist, rng);
      break;
    }
    case Mechanism::kFq: {
      const BaselineSelection fq = FqSelect(market);
      rec.num_selected = fq.k;
      rec.total_paid = fq.TotalPaid();
      rec.purchased_privacy =
          static_cast<double>(fq.k) * fq.uniform_dp_level;
      std::vector<double> bought;
      for (std::size_t i : fq.selected_indices) bought.push_back(values[i]);
      rec.fallback = fq.k == 0;
      if (query.kind() == QueryKind::kCount) {
        rec.answer = FqCountAnswer(bought, n, noise);
      } else if (fq.k == 0) {
        rec.answer = FallbackAnswer(query, n);
      } else {
        rec.answer = FqMedianAnswer(bought, n, query.domain(), noise);
      }
      break;
    }
    case Mechanism::kFip: {
      const BaselineSelection fip = FipSelect(market, query.weights());
      rec.num_selected = fip.k;
      rec.total_paid = fip.TotalPaid();
      const auto eps =
          FipEpsilonAssignment(query.weights(), fip.selected_indices);
      for (std::size_t i : fip.selected_indices) {
        rec.purchased_privacy += eps[i];
      }
      rec.fallback = fip.k == 0;
      rec.answer = FipAnswer(values, query.weights(), fip.selected_indices,
                             query.domain(), noise);
      break;
    }
  }
  if (data.factor() > 1) {
    rec.answer = mechanism == Mechanism::kSmq && !rec.fallback
                     ? MapBack(rec.answer, data.factor())
                     : rec.answer / scale_back;
  }
  return rec;
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  ValidateConfig(config);
  const ExperimentData data = ExperimentData::Prepare(config);
  std::vector<Mechanism> mechanisms = config.mechanisms;
  std::sort(mechanisms.begin(), mechanisms.end());
  mechanisms.erase(std::unique(mechanisms.begin(), mechanisms.end()),
                   mechanisms.end());

  ExperimentResult result;
  result.dropped_rows = data.dropped_rows();
  result.duplicate_values = data.duplicates();
  for (Mechanism m : mechanisms) {
    for (std::size_t r = 0; r < config.rhos.size(); ++r) {
      for (std::size_t b = 0; b < config.budget_fractions.size(); ++b) {
        std::vector<double> answers;
        std::vector<double> truths;
        double selected = 0.0;
        double paid = 0.0;
        for (std::size_t t = 0; t < config.trials; ++t) {
          TrialRecord rec = RunTrial(config, data, m, r, b, t);
          answers.push_back(rec.answer);
          truths.push_back(rec.truth);
          selected += static_cast<double>(rec.num_selected);
          paid += rec.total_paid;
          result.trials.push_back(rec);
        }
        SummaryRow row;
        row.mechanism = m;
        row.query = config.query;
        row.rho = config.rhos[r];
        row.budget_fraction = config.budget_fractions[b];
        row.stats = Summarize(answers, truths);
        const double count = static_cast<double>(config.trials);
        row.mean_selected = selected / count;
        row.mean_paid = paid / count;
        result.summary.push_back(row);
      }
    }
  }
  return result;
}

void WriteSummaryCsv(const std::vector<SummaryRow>& rows, std::ostream& out) {
  out << "mechanism,query,rho,budget_fraction,mean,ci_low,ci_high,rmse,"
         "mean_selected,mean_paid\n";
  for (const auto& r : rows) {
    out << MechanismName(r.mechanism) << ',' << QueryKindName(r.query) << ','
        << FormatNumber(r.rho) << ',' << FormatNumber(r.budget_fraction)
        << ',' << FormatNumber(r.stats.mean) << ','
        << FormatNumber(r.stats.ci_low) << ',' << FormatNumber(r.stats.ci_high)
        << ',' << FormatNumber(r.stats.rmse) << ','
        << FormatNumber(r.mean_selected) << ',' << FormatNumber(r.mean_paid)
        << '\n';
  }
}

void WriteTrialsCsv(const std::vector<TrialRecord>& rows, std::ostream& out) {
  out << "mechanism,query,rho,budget_fraction,trial,answer,truth,"
         "purchased_privacy,num_selected,total_paid,seed,fallback\n";
  for (const auto& r : rows) {
    out << MechanismName(r.mechanism) << ',' << QueryKindName(r.query) << ','
        << FormatNumber(r.rho) << ',' << FormatNumber(r.budget_fraction)
        << ',' << r.trial << ',' << FormatNumber(r.answer) << ','
        << FormatNumber(r.truth) << ',' << FormatNumber(r.purchased_privacy)
        << ',' << r.num_selected << ',' << FormatNumber(r.total_paid) << ','
        << r.seed << ',' << (r.fallback ? 1 : 0) << '\n';
  }
}

void WriteResults(const ExperimentResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  std::ofstream summary(base / "summary.csv", std::ios::binary);
  std::ofstream trials(base / "trials.csv", std::ios::binary);
  if (!summary || !trials) {
    throw Error(ErrorCode::kIo, "cannot write results into '" + dir + "'");
  }
  WriteSummaryCsv(result.summary, summary);
  WriteTrialsCsv(result.trials, trials);
}

}  // namespace pdq
