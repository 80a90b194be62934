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
#include "pdq/market_model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "pdq/errors.h"

namespace pdq {
namespace {

constexpr double kBoundaryTol = 1e-9;
constexpr double kMonotoneTol = 1e-9;
constexpr double kInverseTol = 1e-12;

bool IsFinite(double x) { return std::isfinite(x); }

std::string Describe(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

PrivacyAwareOwner MakeOwner(double data_value, double valuation,
                            double privacy_req, std::vector<double> profile) {
  if (!IsFinite(data_value) || !IsFinite(valuation)) {
    throw Error(ErrorCode::kInvalidInput, "owner fields must be finite");
  }
  if (!IsFinite(privacy_req) || privacy_req <= 0.0) {
    throw Error(ErrorCode::kInvalidInput,
                "privacy requirement must be finite and > 0, got " +
                    Describe(privacy_req));
  }
  return PrivacyAwareOwner{data_value, valuation, privacy_req,
                           std::move(profile)};
}

RegularPrior RegularPrior::FromFunctions(std::string name, double lower,
                                         double upper, Fn cdf, Fn pdf) {
  RegularPrior prior;
  prior.name_ = std::move(name);
  prior.lower_ = lower;
  prior.upper_ = upper;
  prior.cdf_ = std::move(cdf);
  prior.pdf_ = std::move(pdf);
  prior.Validate();
  return prior;
}

RegularPrior RegularPrior::Uniform(double lower, double upper) {
  const double width = upper - lower;
  RegularPrior prior;
  prior.name_ = "uniform";
  prior.lower_ = lower;
  prior.upper_ = upper;
  prior.cdf_ = [lower, width](double t) {
    return std::clamp((t - lower) / width, 0.0, 1.0);
  };
  prior.pdf_ = [width](double) { return 1.0 / width; };
  // theta + (theta - lower) = y
  prior.virtual_cost_inverse_ = [lower](double y) { return 0.5 * (y + lower); };
  prior.quantile_ = [lower, width](double u) { return lower + u * width; };
  prior.Validate();
  return prior;
}

RegularPrior RegularPrior::Power(double exponent, double lower, double upper) {
  if (!(exponent > 0.0) || !IsFinite(exponent)) {
    throw Error(ErrorCode::kInvalidInput, "power prior exponent must be > 0");
  }
  const double width = upper - lower;
  RegularPrior prior;
  prior.name_ = "power";
  prior.lower_ = lower;
  prior.upper_ = upper;
  prior.cdf_ = [=](double t) {
    const double x = std::clamp((t - lower) / width, 0.0, 1.0);
    return std::pow(x, exponent);
  };
  prior.pdf_ = [=](double t) {
    const double x = std::clamp((t - lower) / width, 0.0, 1.0);
    return exponent * std::pow(x, exponent - 1.0) / width;
  };
  // F / f = (theta - lower) / exponent
  prior.virtual_cost_inverse_ = [=](double y) {
    return (exponent * y + lower) / (exponent + 1.0);
  };
  prior.quantile_ = [=](double u) {
    return lower + width * std::pow(u, 1.0 / exponent);
  };
  prior.Validate();
  return prior;
}

double RegularPrior::Cdf(double theta) const { return cdf_(theta); }

double RegularPrior::Pdf(double theta) const { return pdf_(theta); }

double RegularPrior::Quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "quantile level outside [0, 1]");
  }
  if (quantile_) return std::clamp(quantile_(u), lower_, upper_);
  double lo = lower_;
  double hi = upper_;
  while (hi - lo > kInverseTol * std::max(1.0, upper_ - lower_)) {
    const double mid = 0.5 * (lo + hi);
    if (cdf_(mid) < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void RegularPrior::Validate() const {
  if (!IsFinite(lower_) || !IsFinite(upper_) || !(lower_ < upper_)) {
    throw Error(ErrorCode::kInvalidInput,
                "prior support must be a finite interval with lower < upper");
  }
  if (!cdf_ || !pdf_) {
    throw Error(ErrorCode::kInvalidInput, "prior needs both a CDF and a PDF");
  }
  if (std::abs(cdf_(lower_)) > kBoundaryTol ||
      std::abs(cdf_(upper_) - 1.0) > kBoundaryTol) {
    throw Error(ErrorCode::kInvalidInput,
                "prior CDF must be 0 at the lower and 1 at the upper bound");
  }
  const int n = kRegularityGrid;
  double prev_cdf = -std::numeric_limits<double>::infinity();
  double prev_vc = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    const double t =
        j == n - 1 ? upper_ : lower_ + (upper_ - lower_) * j / (n - 1);
    const double c = cdf_(t);
    if (c < prev_cdf - 1e-12) {
      throw Error(ErrorCode::kIrregularPrior,
                  "prior CDF decreases near theta=" + Describe(t));
    }
    prev_cdf = c;
    const bool interior = j > 0 && j < n - 1;
    if (interior && !(pdf_(t) > 0.0)) {
      throw Error(ErrorCode::kSingularPrior,
                  "prior density vanishes at interior theta=" + Describe(t));
    }
    const double vc = VirtualCost(*this, t);
    if (vc < prev_vc - kMonotoneTol) {
      throw Error(ErrorCode::kIrregularPrior,
                  "virtual cost decreases near theta=" + Describe(t));
    }
    prev_vc = vc;
  }
}

double VirtualCost(const RegularPrior& prior, double theta) {
  const double lo = prior.lower();
  const double hi = prior.upper();
  if (!(theta >= lo - kBoundaryTol && theta <= hi + kBoundaryTol)) {
    throw Error(ErrorCode::kInvalidInput,
                "theta=" + Describe(theta) + " outside the prior support");
  }
  theta = std::clamp(theta, lo, hi);
  const double f = prior.Pdf(theta);
  const double big_f = prior.Cdf(theta);
  if (f > 0.0) return theta + big_f / f;
  if (theta == lo && big_f == 0.0) return theta;
  if (theta == hi) return std::numeric_limits<double>::infinity();
  throw Error(ErrorCode::kSingularPrior,
              "density is zero at interior theta=" + Describe(theta));
}

double VirtualCostInverse(const RegularPrior& prior, double y) {
  const double lo = prior.lower();
  const double hi = prior.upper();
  if (std::isnan(y)) throw Error(ErrorCode::kInvalidInput, "y is NaN");
  if (prior.virtual_cost_inverse_) {
    return std::clamp(prior.virtual_cost_inverse_(y), lo, hi);
  }
  if (y <= VirtualCost(prior, lo)) return lo;
  if (y >= VirtualCost(prior, hi)) return hi;
  double a = lo;
  double b = hi;
  while (b - a > kInverseTol) {
    const double mid = 0.5 * (a + b);
    if (VirtualCost(prior, mid) < y) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

PriorRegistry PriorRegistry::WithBuiltins() {
  PriorRegistry registry;
  registry.Register("uniform", [](double lower, double upper) {
    return RegularPrior::Uniform(lower, upper);
  });
  registry.Register("power2", [](double lower, double upper) {
    return RegularPrior::Power(2.0, lower, upper);
  });
  return registry;
}

void PriorRegistry::Register(std::string name, Factory factory) {
  factories_.insert_or_assign(std::move(name), std::move(factory));
}

RegularPrior PriorRegistry::Create(std::string_view name, double lower,
                                   double upper) const {
  auto it = factories_.find(name);
  if (it == factories_.end()) {
    throw Error(ErrorCode::kInvalidInput,
                "unknown prior '" + std::string(name) + "'");
  }
  return it->second(lower, upper);
}

bool PriorRegistry::Contains(std::string_view name) const {
  return factories_.find(name) != factories_.end();
}

std::vector<std::string> PriorRegistry::Names() const {
  std::vector<std::string> names;
  names.reserve(factories_.size());
  for (const auto& [name, factory] : factories_) names.push_back(name);
  return names;
}

Market::Market(std::vector<PrivacyAwareOwner> owners, RegularPrior prior,
               double budget)
    : owners_(std::move(owners)), prior_(std::move(prior)), budget_(budget) {}

Market Market::Create(std::vector<PrivacyAwareOwner> owners,
                      RegularPrior prior, double budget) {
  if (owners.empty()) {
    throw Error(ErrorCode::kInvalidInput, "market needs at least one owner");
  }
  const double max_budget = prior.upper() * static_cast<double>(owners.size());
  if (!IsFinite(budget) || budget <= 0.0 || budget > max_budget) {
    throw Error(ErrorCode::kInvalidInput,
                "budget " + Describe(budget) + " outside (0, " +
                    Describe(max_budget) + "]");
  }
  for (std::size_t i = 0; i < owners.size(); ++i) {
    const auto& o = owners[i];
    if (!(o.valuation >= prior.lower() && o.valuation <= prior.upper())) {
      throw Error(ErrorCode::kInvalidInput,
                  "owner " + std::to_string(i) + " valuation " +
                      Describe(o.valuation) + " outside the prior support");
    }
    if (!(o.privacy_req > 0.0) || !IsFinite(o.privacy_req)) {
      throw Error(ErrorCode::kInvalidInput,
                  "owner " + std::to_string(i) +
                      " privacy requirement must be > 0");
    }
  }
  return Market(std::move(owners), std::move(prior), budget);
}

std::vector<double> Market::Valuations() const {
  std::vector<double> out;
  out.reserve(owners_.size());
  for (const auto& o : owners_) out.push_back(o.valuation);
  return out;
}

std::vector<double> Market::PrivacyRequirements() const {
  std::vector<double> out;
  out.reserve(owners_.size());
  for (const auto& o : owners_) out.push_back(o.privacy_req);
  return out;
}

std::vector<double> Market::DataValues() const {
  std::vector<double> out;
  out.reserve(owners_.size());
  for (const auto& o : owners_) out.push_back(o.data_value);
  return out;
}

std::string_view QueryKindName(QueryKind kind) {
  switch (kind) {
    case QueryKind::kCount:
      return "count";
    case QueryKind::kMedian:
      return "median";
    case QueryKind::kLinearPredictor:
      return "linear";
  }
  return "unknown";
}

QueryKind ParseQueryKind(std::string_view text) {
  if (text == "count") return QueryKind::kCount;
  if (text == "median") return QueryKind::kMedian;
  if (text == "linear" || text == "linear-predictor" ||
      text == "linear_predictor") {
    return QueryKind::kLinearPredictor;
  }
  throw Error(ErrorCode::kInvalidInput,
              "unknown query kind '" + std::string(text) + "'");
}

QuerySpec QuerySpec::Count() {
  return QuerySpec(QueryKind::kCount, {}, DataDomain{0.0, 1.0});
}

QuerySpec QuerySpec::Median(DataDomain domain) {
  if (!(domain.lower >= 1.0) || !(domain.upper >= domain.lower)) {
    throw Error(ErrorCode::kInvalidInput,
                "median domain must be positive with lower <= upper");
  }
  return QuerySpec(QueryKind::kMedian, {}, domain);
}

QuerySpec QuerySpec::LinearPredictor(std::vector<double> weights,
                                     DataDomain domain) {
  if (weights.empty()) {
    throw Error(ErrorCode::kInvalidWeight, "linear predictor needs weights");
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] == 0.0 || !IsFinite(weights[i])) {
      throw Error(ErrorCode::kInvalidWeight,
                  "weight " + std::to_string(i) + " must be finite and != 0");
    }
  }
  if (!IsFinite(domain.lower) || !IsFinite(domain.upper) ||
      domain.lower > domain.upper) {
    throw Error(ErrorCode::kInvalidInput, "invalid data domain");
  }
  return QuerySpec(QueryKind::kLinearPredictor, std::move(weights), domain);
}

void ValidateQueryValues(const QuerySpec& query,
                         std::span<const double> values) {
  switch (query.kind()) {
    case QueryKind::kCount:
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] != 0.0 && values[i] != 1.0) {
          throw Error(ErrorCode::kDomain,
                      "count data must be 0/1, entry " + std::to_string(i) +
                          " is " + Describe(values[i]));
        }
      }
      return;
    case QueryKind::kMedian: {
      std::unordered_set<double> seen;
      for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if (!(v >= 1.0) || v != std::floor(v) || !IsFinite(v)) {
          throw Error(ErrorCode::kDomain,
                      "median data must be positive integers, entry " +
                          std::to_string(i) + " is " + Describe(v));
        }
        if (!seen.insert(v).second) {
          throw Error(ErrorCode::kDomain,
                      "median data must be mutually distinct, duplicate " +
                          Describe(v));
        }
      }
      return;
    }
    case QueryKind::kLinearPredictor:
      if (values.size() != query.weights().size()) {
        throw Error(ErrorCode::kDomain,
                    "linear predictor has " +
                        std::to_string(query.weights().size()) +
                        " weights but " + std::to_string(values.size()) +
                        " values");
      }
      for (double v : values) {
        if (!(v >= query.domain().lower && v <= query.domain().upper)) {
          throw Error(ErrorCode::kDomain,
                      "value " + Describe(v) + " outside the data domain");
        }
      }
      return;
  }
}

std::vector<double> CosineWeights(
    const std::vector<std::vector<double>>& profiles,
    std::span<const double> new_profile) {
  auto norm = [](std::span<const double> v) {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  };
  const double new_norm = norm(new_profile);
  if (!(new_norm > 0.0)) {
    throw Error(ErrorCode::kDegenerateProfile, "new profile has zero norm");
  }
  std::vector<double> weights;
  weights.reserve(profiles.size());
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const auto& p = profiles[i];
    if (p.size() != new_profile.size()) {
      throw Error(ErrorCode::kDegenerateProfile,
                  "profile " + std::to_string(i) + " has dimension " +
                      std::to_string(p.size()) + ", expected " +
                      std::to_string(new_profile.size()));
    }
    const double pn = norm(p);
    if (!(pn > 0.0)) {
      throw Error(ErrorCode::kDegenerateProfile,
                  "profile " + std::to_string(i) + " has zero norm");
    }
    const double dot =
        std::inner_product(p.begin(), p.end(), new_profile.begin(), 0.0);
    const double w = std::clamp(dot / (pn * new_norm), -1.0, 1.0);
    if (w == 0.0) {
      throw Error(ErrorCode::kInvalidWeight,
                  "profile " + std::to_string(i) +
                      " is orthogonal to the new profile (weight 0)");
    }
    weights.push_back(w);
  }
  return weights;
}

}  // namespace pdq
