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

// Domain types for the data market: owners, the valuation prior, the market
// itself and the query being answered.

#ifndef PDQ_MARKET_MODEL_H_
#define PDQ_MARKET_MODEL_H_

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pdq {

// One seller: her data entry, private valuation and the personalised privacy
// level she insists on before releasing the entry.
struct PrivacyAwareOwner {
  double data_value = 0.0;
  double valuation = 0.0;
  double privacy_req = 0.0;
  // Attribute vector used only to derive similarity weights.
  std::vector<double> profile;
};

// Validates privacy_req > 0 (and finiteness of all fields).
PrivacyAwareOwner MakeOwner(double data_value, double valuation,
                            double privacy_req,
                            std::vector<double> profile = {});

// Valuation distribution on [lower, upper] whose virtual cost
// theta + F(theta) / f(theta) is nondecreasing. Immutable after construction.
class RegularPrior {
 public:
  using Fn = std::function<double(double)>;

  // Number of grid points used for the construction-time regularity check.
  static constexpr int kRegularityGrid = 10000;

  // Generic prior from a CDF/PDF pair. Checks boundary values, monotonicity
  // of the CDF, positivity of the PDF in the interior and regularity on a
  // grid; throws kIrregularPrior / kSingularPrior / kInvalidInput.
  static RegularPrior FromFunctions(std::string name, double lower,
                                    double upper, Fn cdf, Fn pdf);

  static RegularPrior Uniform(double lower = 0.0, double upper = 1.0);

  // F(theta) = ((theta - lower) / (upper - lower))^exponent, exponent > 0.
  static RegularPrior Power(double exponent, double lower = 0.0,
                            double upper = 1.0);

  const std::string& name() const { return name_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }

  double Cdf(double theta) const;
  double Pdf(double theta) const;
  // Inverse CDF; closed form when available, bisection otherwise.
  double Quantile(double u) const;

  bool has_closed_form_inverse() const {
    return static_cast<bool>(virtual_cost_inverse_);
  }

 private:
  friend double VirtualCostInverse(const RegularPrior& prior, double y);

  RegularPrior() = default;
  void Validate() const;

  std::string name_;
  double lower_ = 0.0;
  double upper_ = 1.0;
  Fn cdf_;
  Fn pdf_;
  Fn virtual_cost_inverse_;  // optional
  Fn quantile_;              // optional
};

// theta + F(theta) / f(theta). At a boundary where the density vanishes the
// limit is used (lower bound: theta itself; upper bound: +infinity). A zero
// density strictly inside the support throws kSingularPrior.
double VirtualCost(const RegularPrior& prior, double theta);

// The theta in [lower, upper] with VirtualCost(theta) = y; clamps to the
// bounds when y is outside the virtual-cost range. Tolerance 1e-12 on theta.
double VirtualCostInverse(const RegularPrior& prior, double y);

// Named factories for priors on [lower, upper]. "uniform" is always present;
// callers can register further shapes.
class PriorRegistry {
 public:
  using Factory = std::function<RegularPrior(double lower, double upper)>;

  static PriorRegistry WithBuiltins();

  void Register(std::string name, Factory factory);
  RegularPrior Create(std::string_view name, double lower,
                      double upper) const;
  bool Contains(std::string_view name) const;
  std::vector<std::string> Names() const;

 private:
  std::map<std::string, Factory, std::less<>> factories_;
};

// n owners, a common prior and the buyer's budget B with 0 < B <= upper * n.
class Market {
 public:
  static Market Create(std::vector<PrivacyAwareOwner> owners,
                       RegularPrior prior, double budget);

  const std::vector<PrivacyAwareOwner>& owners() const { return owners_; }
  const RegularPrior& prior() const { return prior_; }
  double budget() const { return budget_; }
  std::size_t size() const { return owners_.size(); }

  std::vector<double> Valuations() const;
  std::vector<double> PrivacyRequirements() const;
  std::vector<double> DataValues() const;

 private:
  Market(std::vector<PrivacyAwareOwner> owners, RegularPrior prior,
         double budget);

  std::vector<PrivacyAwareOwner> owners_;
  RegularPrior prior_;
  double budget_;
};

enum class QueryKind { kCount, kMedian, kLinearPredictor };

std::string_view QueryKindName(QueryKind kind);
// Accepts "count", "median", "linear" / "linear-predictor".
QueryKind ParseQueryKind(std::string_view text);

// Closed interval of admissible data values.
struct DataDomain {
  double lower = 0.0;
  double upper = 1.0;

  double width() const { return upper - lower; }
  double midpoint() const { return 0.5 * (lower + upper); }
};

class QuerySpec {
 public:
  // Count over {0, 1} data.
  static QuerySpec Count();
  // Median over mutually distinct positive integers inside `domain`.
  static QuerySpec Median(DataDomain domain);
  // sum_i w_i d_i with every w_i != 0 and d_i inside `domain`.
  static QuerySpec LinearPredictor(std::vector<double> weights,
                                   DataDomain domain);

  QueryKind kind() const { return kind_; }
  const std::vector<double>& weights() const { return weights_; }
  const DataDomain& domain() const { return domain_; }

 private:
  QuerySpec(QueryKind kind, std::vector<double> weights, DataDomain domain)
      : kind_(kind), weights_(std::move(weights)), domain_(domain) {}

  QueryKind kind_;
  std::vector<double> weights_;
  DataDomain domain_;
};

// Throws kDomain when `values` violate the query's data requirements
// (binary for count, distinct positive integers for median, inside the
// domain and matching the weight count for the linear predictor).
void ValidateQueryValues(const QuerySpec& query,
                         std::span<const double> values);

// Cosine similarity of every profile with `new_profile`. Throws
// kDegenerateProfile for a zero-norm vector or mismatched dimensions, and
// kInvalidWeight when a resulting weight is exactly zero.
std::vector<double> CosineWeights(
    const std::vector<std::vector<double>>& profiles,
    std::span<const double> new_profile);

}  // namespace pdq

#endif  // PDQ_MARKET_MODEL_H_
