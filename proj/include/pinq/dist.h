// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Product distributions over value profiles and the single-dimensional
// revenue quantities built on them: virtual values, hazard rates, monopoly
// reserves and quantiles.

#ifndef PINQ_DIST_H_
#define PINQ_DIST_H_

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pinq/env.h"
#include "pinq/random.h"

namespace pinq {

enum class MarginalFamily {
  kUniform,                 // U(low, high)
  kExponential,             // Exp(rate)
  kPointMass,               // always `value`
  kTruncatedEqualRevenue,   // F(v) = 1 - 1/v on [1, cap), atom at cap
  kEmpirical,               // finite atoms with probabilities
};

std::string_view MarginalFamilyName(MarginalFamily family);
MarginalFamily ParseMarginalFamily(std::string_view name);

class Marginal {
 public:
  static Marginal Uniform(double low, double high);
  static Marginal Exponential(double rate);
  static Marginal PointMass(double value);
  static Marginal TruncatedEqualRevenue(double cap);
  // Atoms need not be sorted; probabilities must be non-negative and sum to 1
  // within 1e-9. Duplicate atoms are merged.
  static Marginal Empirical(std::vector<double> atoms,
                            std::vector<double> probabilities);

  MarginalFamily family() const { return family_; }
  // Family parameters in declaration order: (low, high), (rate), (value),
  // (cap). Empty for empirical marginals.
  const std::vector<double>& params() const { return params_; }
  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& probabilities() const { return probs_; }

  // Virtual value non-decreasing on the support.
  bool is_regular() const;
  // Hazard rate non-decreasing on the support. Implies regular.
  bool is_mhr() const;
  // No atoms; Density and VirtualValue are defined on the support interior.
  bool is_continuous() const;

  double SupportMin() const;
  double SupportMax() const;
  double Mean() const;

  // Right-continuous CDF.
  double Cdf(double x) const;
  // UnsupportedOperationError for families without a density.
  double Density(double x) const;
  // inf{x : F(x) >= p}; p = 0 gives the support minimum.
  double Quantile(double p) const;
  double Sample(RandomStream& rng) const;

  bool operator==(const Marginal& o) const = default;

 private:
  Marginal(MarginalFamily family, std::vector<double> params)
      : family_(family), params_(std::move(params)) {}

  MarginalFamily family_;
  std::vector<double> params_;
  std::vector<double> atoms_;   // empirical, ascending
  std::vector<double> probs_;   // empirical
  std::vector<double> cumulative_;  // empirical, cumulative_[i] = F(atoms_[i])
};

// v - (1 - F(v)) / f(v). At the atom of a truncated equal-revenue marginal the
// value is the cap, and a point mass has virtual value equal to its atom.
// UnsupportedOperationError for empirical marginals; InputDomainError for v
// outside the support.
double VirtualValue(const Marginal& m, double v);

// f(v) / (1 - F(v)) for continuous marginals below the support maximum.
double HazardRate(const Marginal& m, double v);

// Smallest price with non-negative virtual value. InputDomainError for
// non-regular marginals.
double MonopolyReserve(const Marginal& m);

class ProductDistribution {
 public:
  explicit ProductDistribution(std::vector<Marginal> marginals);
  static ProductDistribution Iid(const Marginal& m, int n);

  int size() const { return static_cast<int>(marginals_.size()); }
  const Marginal& marginal(int i) const { return marginals_[i]; }
  const std::vector<Marginal>& marginals() const { return marginals_; }
  bool iid() const { return iid_; }
  bool all_regular() const;
  bool all_mhr() const;

  // One independent draw per coordinate, in coordinate order.
  WeightVector Sample(RandomStream& rng) const;

 private:
  std::vector<Marginal> marginals_;
  bool iid_ = true;
};

// {"family": ..., "params": {...}} for one marginal. Distribution documents
// are either {"family", "params", "n"} (iid) or {"marginals": [...]}.
nlohmann::json MarginalToJson(const Marginal& m);
Marginal MarginalFromJson(const nlohmann::json& j);
nlohmann::json DistributionToJson(const ProductDistribution& d);
ProductDistribution DistributionFromJson(const nlohmann::json& j);

}  // namespace pinq

#endif  // PINQ_DIST_H_
