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
#include "pdq/datagen_io.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "pdq/errors.h"

namespace pdq {
namespace {

double ToRange(const std::pair<double, double>& range, double u) {
  return range.first + (range.second - range.first) * u;
}

// Standard normal CDF kept strictly inside (0, 1).
double NormalLevel(double z) {
  const double u = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  constexpr double kTiny = 1e-16;
  return std::clamp(u, kTiny, 1.0 - kTiny);
}

std::vector<std::string> SplitRow(const std::string& line, char delimiter) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, delimiter)) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == delimiter) cells.emplace_back();
  return cells;
}

bool IsMissing(const std::string& cell) {
  return cell.empty() || cell == "?" || cell == "NA";
}

double ParseNumber(const std::string& cell, std::size_t line) {
  double value = 0.0;
  const char* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw Error(ErrorCode::kParse, "line " + std::to_string(line) +
                                       ": non-numeric cell '" + cell + "'");
  }
  return value;
}

double ApplyTransform(const TabularSchema& schema, double v,
                      std::size_t line) {
  switch (schema.transform) {
    case ColumnTransform::kNone:
      return v;
    case ColumnTransform::kBinarize:
      return v > schema.threshold ? 1.0 : 0.0;
    case ColumnTransform::kInteger:
      if (v != std::floor(v)) {
        throw Error(ErrorCode::kParse, "line " + std::to_string(line) +
                                           ": expected an integer");
      }
      return v;
  }
  return v;
}

}  // namespace

Population GenCorrelatedUniforms(const PopulationSpec& spec, Rng& rng) {
  if (spec.n < 1) throw Error(ErrorCode::kInvalidInput, "n must be >= 1");
  if (!(spec.rho >= -1.0 && spec.rho <= 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "rho must lie in [-1, 0]");
  }
  if (!(spec.theta_range.first < spec.theta_range.second) ||
      !(spec.eps_range.first < spec.eps_range.second)) {
    throw Error(ErrorCode::kInvalidInput, "ranges must be non-empty");
  }
  Population pop;
  pop.theta.resize(spec.n);
  pop.eps.resize(spec.n);
  const double rho_normal = 2.0 * std::sin(std::numbers::pi * spec.rho / 6.0);
  const double rest = std::sqrt(std::max(0.0, 1.0 - rho_normal * rho_normal));
  std::normal_distribution<double> normal;
  for (std::size_t i = 0; i < spec.n; ++i) {
    double u = 0.0;
    double v = 0.0;
    if (spec.rho == 0.0) {
      u = UniformOpen01(rng);
      v = UniformOpen01(rng);
    } else if (spec.rho == -1.0) {
      u = UniformOpen01(rng);
      v = 1.0 - u;
    } else {
      const double z1 = normal(rng);
      const double z2 = rho_normal * z1 + rest * normal(rng);
      u = NormalLevel(z1);
      v = NormalLevel(z2);
    }
    pop.theta[i] = ToRange(spec.theta_range, u);
    pop.eps[i] = ToRange(spec.eps_range, v);
  }
  return pop;
}

Population GenCorrelatedUniforms(const PopulationSpec& spec) {
  Rng rng(spec.seed);
  return GenCorrelatedUniforms(spec, rng);
}

void WritePopulationCsv(const Population& pop, std::ostream& out) {
  out << "index,theta,eps\n";
  char buf[64];
  for (std::size_t i = 0; i < pop.theta.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", i, pop.theta[i],
                  pop.eps[i]);
    out << buf;
  }
}

ColumnTransform ParseColumnTransform(std::string_view text) {
  if (text == "none" || text.empty()) return ColumnTransform::kNone;
  if (text == "binarize") return ColumnTransform::kBinarize;
  if (text == "integer") return ColumnTransform::kInteger;
  throw Error(ErrorCode::kSchema,
              "unknown column transform '" + std::string(text) + "'");
}

TabularData ParseTabular(std::istream& in, const TabularSchema& schema) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kEmptyDataset, "input has no header row");
  }
  const auto header = SplitRow(line, schema.delimiter);
  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw Error(ErrorCode::kSchema, "missing column '" + name + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t query_col = column(schema.query_column);
  std::vector<std::size_t> profile_cols;
  for (const auto& name : schema.profile_columns) {
    profile_cols.push_back(column(name));
  }

  TabularData data;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = SplitRow(line, schema.delimiter);
    auto cell = [&](std::size_t c) -> const std::string& {
      static const std::string kEmpty;
      return c < cells.size() ? cells[c] : kEmpty;
    };
    bool missing = IsMissing(cell(query_col));
    for (std::size_t c : profile_cols) missing = missing || IsMissing(cell(c));
    if (missing) {
      ++data.dropped_rows;
      continue;
    }
    data.values.push_back(ApplyTransform(
        schema, ParseNumber(cell(query_col), line_no), line_no));
    if (!profile_cols.empty()) {
      std::vector<double> profile;
      for (std::size_t c : profile_cols) {
        profile.push_back(ParseNumber(cell(c), line_no));
      }
      data.profiles.push_back(std::move(profile));
    }
  }
  if (data.values.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no usable data rows");
  }
  return data;
}

TabularData LoadTabular(const std::string& path, const TabularSchema& schema) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return ParseTabular(in, schema);
}

DistinctValues MakeDistinct(const std::vector<double>& values) {
  DistinctValues out;
  out.factor = values.size();
  std::map<double, std::size_t> seen;
  out.values.reserve(values.size());
  for (double v : values) {
    if (!(v >= 1.0) || v != std::floor(v)) {
      throw Error(ErrorCode::kDomain,
                  "median data must be positive integers");
    }
    const std::size_t rank = seen[v]++;
    if (rank > 0) ++out.duplicates;
    out.values.push_back(v * static_cast<double>(out.factor) +
                         static_cast<double>(rank));
  }
  return out;
}

double MapBack(double mapped, std::size_t factor) {
  if (factor == 0) throw Error(ErrorCode::kInvalidInput, "factor must be > 0");
  return std::floor(mapped / static_cast<double>(factor));
}

std::vector<double> GenCountData(std::size_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "p must lie in [0, 1]");
  }
  std::vector<double> out(n);
  for (double& v : out) v = UniformOpen01(rng) < p ? 1.0 : 0.0;
  return out;
}

std::vector<double> GenMedianData(std::size_t n, int max_value, Rng& rng) {
  if (max_value < 1 || n > static_cast<std::size_t>(max_value) / 2) {
    throw Error(ErrorCode::kInvalidInput,
                "need max_value >= 2n for distinct median data");
  }
  const double mean = 0.5 * max_value;
  std::normal_distribution<double> bell(mean, 0.1 * max_value);
  std::set<int> used;
  std::vector<double> out;
  out.reserve(n);
  while (out.size() < n) {
    const auto v = static_cast<int>(std::lround(bell(rng)));
    if (v < 1 || v > max_value || !used.insert(v).second) continue;
    out.push_back(v);
  }
  return out;
}

LinearData GenLinearData(std::size_t n, std::size_t dims, Rng& rng) {
  if (dims < 1) throw Error(ErrorCode::kInvalidInput, "dims must be >= 1");
  LinearData data;
  data.values = GenCountData(n, 0.5, rng);
  data.profiles.assign(n, std::vector<double>(dims));
  for (auto& profile : data.profiles) {
    for (double& x : profile) x = 0.05 + UniformOpen01(rng);
  }
  data.new_profile.resize(dims);
  for (double& x : data.new_profile) x = 0.05 + UniformOpen01(rng);
  return data;
}

}  // namespace pdq
