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
// Population generators and tabular data loading for experiments.

#ifndef PDQ_DATAGEN_IO_H_
#define PDQ_DATAGEN_IO_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdq/random.h"

namespace pdq {

struct PopulationSpec {
  std::size_t n = 0;
  double rho = 0.0;  // correlation of (theta, eps), in [-1, 0]
  std::uint64_t seed = 0;
  std::pair<double, double> theta_range{0.0, 1.0};
  std::pair<double, double> eps_range{0.0, 1.0};
};

struct Population {
  std::vector<double> theta;
  std::vector<double> eps;
};

// Uniform marginals on the two ranges with Pearson correlation rho. rho = 0
// draws independently, rho = -1 mirrors the level (eps = 1 - u), anything in
// between uses a Gaussian copula with normal correlation 2 sin(pi rho / 6),
// which gives the uniforms correlation rho exactly. Both values stay strictly
// inside their ranges.
Population GenCorrelatedUniforms(const PopulationSpec& spec, Rng& rng);
Population GenCorrelatedUniforms(const PopulationSpec& spec);

void WritePopulationCsv(const Population& pop, std::ostream& out);

enum class ColumnTransform { kNone, kBinarize, kInteger };

ColumnTransform ParseColumnTransform(std::string_view text);

struct TabularSchema {
  char delimiter = ',';
  std::string query_column;
  ColumnTransform transform = ColumnTransform::kNone;
  double threshold = 0.0;  // kBinarize: value > threshold -> 1
  std::vector<std::string> profile_columns;
};

struct TabularData {
  std::vector<double> values;
  std::vector<std::vector<double>> profiles;  // empty when no profile columns
  std::size_t dropped_rows = 0;               // rows with missing cells
};

// Header row required. Missing cells ("", "?", "NA") drop the row; other
// non-numeric cells throw kParse naming the line. Throws kSchema for an
// absent column, kEmptyDataset when no row survives and kIo when the file
// cannot be read.
TabularData ParseTabular(std::istream& in, const TabularSchema& schema);
TabularData LoadTabular(const std::string& path, const TabularSchema& schema);

struct DistinctValues {
  std::vector<double> values;
  std::size_t duplicates = 0;  // entries that shared a value with an earlier one
  std::size_t factor = 1;      // multiplier used by the mapping
};

// Maps value v at duplicate rank j (in row order) to v * n + j, which keeps
// the order, makes every entry distinct and stays a positive integer for
// positive integer input. Throws kDomain on non-positive or fractional
// values.
DistinctValues MakeDistinct(const std::vector<double>& values);
// Inverse of the mapping above for a median computed on mapped values.
double MapBack(double mapped, std::size_t factor);

// Synthetic data used when no file is given.
std::vector<double> GenCountData(std::size_t n, double p, Rng& rng);
// Distinct integers in [1, max_value], bell-shaped around max_value / 2.
std::vector<double> GenMedianData(std::size_t n, int max_value, Rng& rng);
// Binary data plus strictly positive profiles of the given dimension.
struct LinearData {
  std::vector<double> values;
  std::vector<std::vector<double>> profiles;
  std::vector<double> new_profile;
};
LinearData GenLinearData(std::size_t n, std::size_t dims, Rng& rng);

}  // namespace pdq

#endif  // PDQ_DATAGEN_IO_H_
