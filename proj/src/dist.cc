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

#include "pinq/dist.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "pinq/errors.h"

namespace pinq {
namespace {

constexpr double kProbabilityTolerance = 1e-9;

void RequireFinite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw InputDomainError(std::string(what) + " must be finite");
  }
}

}  // namespace

std::string_view MarginalFamilyName(MarginalFamily family) {
  switch (family) {
    case MarginalFamily::kUniform:
      return "uniform";
    case MarginalFamily::kExponential:
      return "exponential";
    case MarginalFamily::kPointMass:
      return "point-mass";
    case MarginalFamily::kTruncatedEqualRevenue:
      return "truncated-equal-revenue";
    case MarginalFamily::kEmpirical:
      return "empirical";
  }
  return "?";
}

MarginalFamily ParseMarginalFamily(std::string_view name) {
  for (auto f : {MarginalFamily::kUniform, MarginalFamily::kExponential,
                 MarginalFamily::kPointMass,
                 MarginalFamily::kTruncatedEqualRevenue,
                 MarginalFamily::kEmpirical}) {
    if (MarginalFamilyName(f) == name) return f;
  }
  throw InputDomainError("unknown distribution family '" + std::string(name) +
                         "'");
}

Marginal Marginal::Uniform(double low, double high) {
  RequireFinite(low, "uniform low");
  RequireFinite(high, "uniform high");
  if (low < 0 || !(high > low)) {
    throw InputDomainError("uniform requires 0 <= low < high");
  }
  return Marginal(MarginalFamily::kUniform, {low, high});
}

Marginal Marginal::Exponential(double rate) {
  RequireFinite(rate, "exponential rate");
  if (!(rate > 0)) throw InputDomainError("exponential rate must be positive");
  return Marginal(MarginalFamily::kExponential, {rate});
}

Marginal Marginal::PointMass(double value) {
  RequireFinite(value, "point-mass value");
  if (value < 0) throw InputDomainError("point-mass value must be >= 0");
  return Marginal(MarginalFamily::kPointMass, {value});
}

Marginal Marginal::TruncatedEqualRevenue(double cap) {
  RequireFinite(cap, "truncated-equal-revenue cap");
  if (!(cap > 1)) {
    throw InputDomainError("truncated-equal-revenue cap must exceed 1");
  }
  return Marginal(MarginalFamily::kTruncatedEqualRevenue, {cap});
}

Marginal Marginal::Empirical(std::vector<double> atoms,
                             std::vector<double> probabilities) {
  if (atoms.empty() || atoms.size() != probabilities.size()) {
    throw InputDomainError(
        "empirical marginal needs equally many atoms and probabilities");
  }
  std::map<double, double> merged;
  double total = 0;
  for (size_t i = 0; i < atoms.size(); ++i) {
    RequireFinite(atoms[i], "empirical atom");
    RequireFinite(probabilities[i], "empirical probability");
    if (atoms[i] < 0 || probabilities[i] < 0) {
      throw InputDomainError("empirical atoms and probabilities must be >= 0");
    }
    merged[atoms[i]] += probabilities[i];
    total += probabilities[i];
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw InputDomainError("empirical probabilities must sum to 1");
  }
  Marginal m(MarginalFamily::kEmpirical, {});
  double acc = 0;
  for (const auto& [atom, p] : merged) {
    m.atoms_.push_back(atom);
    m.probs_.push_back(p);
    acc += p;
    m.cumulative_.push_back(acc);
  }
  m.cumulative_.back() = 1.0;
  return m;
}

bool Marginal::is_regular() const {
  return family_ != MarginalFamily::kEmpirical;
}

bool Marginal::is_mhr() const {
  return family_ == MarginalFamily::kUniform ||
         family_ == MarginalFamily::kExponential ||
         family_ == MarginalFamily::kPointMass;
}

bool Marginal::is_continuous() const {
  return family_ == MarginalFamily::kUniform ||
         family_ == MarginalFamily::kExponential;
}

double Marginal::SupportMin() const {
  switch (family_) {
    case MarginalFamily::kUniform:
      return params_[0];
    case MarginalFamily::kExponential:
      return 0.0;
    case MarginalFamily::kPointMass:
      return params_[0];
    case MarginalFamily::kTruncatedEqualRevenue:
      return 1.0;
    case MarginalFamily::kEmpirical:
      return atoms_.front();
  }
  return 0.0;
}

double Marginal::SupportMax() const {
  switch (family_) {
    case MarginalFamily::kUniform:
      return params_[1];
    case MarginalFamily::kExponential:
      return std::numeric_limits<double>::infinity();
    case MarginalFamily::kPointMass:
      return params_[0];
    case MarginalFamily::kTruncatedEqualRevenue:
      return params_[0];
    case MarginalFamily::kEmpirical:
      return atoms_.back();
  }
  return 0.0;
}

double Marginal::Mean() const {
  switch (family_) {
    case MarginalFamily::kUniform:
      return 0.5 * (params_[0] + params_[1]);
    case MarginalFamily::kExponential:
      return 1.0 / params_[0];
    case MarginalFamily::kPointMass:
      return params_[0];
    case MarginalFamily::kTruncatedEqualRevenue:
      // Integral of the survival function 1/v over [1, cap), plus 1.
      return 1.0 + std::log(params_[0]);
    case MarginalFamily::kEmpirical: {
      double mean = 0;
      for (size_t i = 0; i < atoms_.size(); ++i) mean += atoms_[i] * probs_[i];
      return mean;
    }
  }
  return 0.0;
}

double Marginal::Cdf(double x) const {
  switch (family_) {
    case MarginalFamily::kUniform: {
      const double a = params_[0], b = params_[1];
      if (x <= a) return 0.0;
      if (x >= b) return 1.0;
      return (x - a) / (b - a);
    }
    case MarginalFamily::kExponential:
      return x <= 0 ? 0.0 : -std::expm1(-params_[0] * x);
    case MarginalFamily::kPointMass:
      return x >= params_[0] ? 1.0 : 0.0;
    case MarginalFamily::kTruncatedEqualRevenue:
      if (x < 1) return 0.0;
      if (x >= params_[0]) return 1.0;
      return 1.0 - 1.0 / x;
    case MarginalFamily::kEmpirical: {
      auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x);
      if (it == atoms_.begin()) return 0.0;
      return cumulative_[it - atoms_.begin() - 1];
    }
  }
  return 0.0;
}

double Marginal::Density(double x) const {
  switch (family_) {
    case MarginalFamily::kUniform:
      return (x < params_[0] || x > params_[1])
                 ? 0.0
                 : 1.0 / (params_[1] - params_[0]);
    case MarginalFamily::kExponential:
      return x < 0 ? 0.0 : params_[0] * std::exp(-params_[0] * x);
    case MarginalFamily::kTruncatedEqualRevenue:
      // Absolutely continuous part only; the atom at the cap has no density.
      return (x < 1 || x >= params_[0]) ? 0.0 : 1.0 / (x * x);
    case MarginalFamily::kPointMass:
    case MarginalFamily::kEmpirical:
      break;
  }
  throw UnsupportedOperationError(
      std::string("density undefined for ") +
      std::string(MarginalFamilyName(family_)) + " marginals");
}

double Marginal::Quantile(double p) const {
  if (!(p >= 0 && p <= 1)) {
    throw InputDomainError("quantile probability must lie in [0, 1]");
  }
  switch (family_) {
    case MarginalFamily::kUniform:
      return params_[0] + p * (params_[1] - params_[0]);
    case MarginalFamily::kExponential:
      if (p == 1) return std::numeric_limits<double>::infinity();
      return -std::log1p(-p) / params_[0];
    case MarginalFamily::kPointMass:
      return params_[0];
    case MarginalFamily::kTruncatedEqualRevenue: {
      const double cap = params_[0];
      if (p >= 1.0 - 1.0 / cap) return cap;
      return 1.0 / (1.0 - p);
    }
    case MarginalFamily::kEmpirical: {
      // Cumulative sums carry rounding error, so "F(x) >= p" is tested with
      // a small tolerance.
      for (size_t i = 0; i < atoms_.size(); ++i) {
        if (cumulative_[i] >= p - 1e-12) return atoms_[i];
      }
      return atoms_.back();
    }
  }
  return 0.0;
}

double Marginal::Sample(RandomStream& rng) const {
  return Quantile(rng.Uniform01());
}

double VirtualValue(const Marginal& m, double v) {
  const auto& p = m.params();
  switch (m.family()) {
    case MarginalFamily::kUniform:
      if (v < p[0] || v > p[1]) break;
      return 2.0 * v - p[1];
    case MarginalFamily::kExponential:
      if (v < 0) break;
      return v - 1.0 / p[0];
    case MarginalFamily::kPointMass:
      return p[0];
    case MarginalFamily::kTruncatedEqualRevenue:
      if (v < 1 || v > p[0]) break;
      return v == p[0] ? p[0] : 0.0;
    case MarginalFamily::kEmpirical:
      throw UnsupportedOperationError(
          "virtual values of empirical marginals require ironing");
  }
  throw InputDomainError("virtual value requested outside the support");
}

double HazardRate(const Marginal& m, double v) {
  if (!m.is_continuous() &&
      m.family() != MarginalFamily::kTruncatedEqualRevenue) {
    throw UnsupportedOperationError("hazard rate needs a density");
  }
  const double survival = 1.0 - m.Cdf(v);
  if (!(survival > 0)) {
    throw InputDomainError("hazard rate undefined at the support maximum");
  }
  if (m.family() == MarginalFamily::kExponential) return m.params()[0];
  return m.Density(v) / survival;
}

double MonopolyReserve(const Marginal& m) {
  if (!m.is_regular()) {
    throw InputDomainError(
        "monopoly reserve requires a regular marginal; got " +
        std::string(MarginalFamilyName(m.family())));
  }
  const auto& p = m.params();
  switch (m.family()) {
    case MarginalFamily::kUniform:
      return std::max(p[0], 0.5 * p[1]);
    case MarginalFamily::kExponential:
      return 1.0 / p[0];
    case MarginalFamily::kPointMass:
      return p[0];
    case MarginalFamily::kTruncatedEqualRevenue:
      return 1.0;
    case MarginalFamily::kEmpirical:
      break;
  }
  throw InputDomainError("monopoly reserve unavailable");
}

ProductDistribution::ProductDistribution(std::vector<Marginal> marginals)
    : marginals_(std::move(marginals)) {
  for (size_t i = 1; i < marginals_.size(); ++i) {
    if (!(marginals_[i] == marginals_[0])) iid_ = false;
  }
}

ProductDistribution ProductDistribution::Iid(const Marginal& m, int n) {
  if (n < 0) throw InputDomainError("distribution size must be >= 0");
  return ProductDistribution(std::vector<Marginal>(n, m));
}

bool ProductDistribution::all_regular() const {
  return std::all_of(marginals_.begin(), marginals_.end(),
                     [](const Marginal& m) { return m.is_regular(); });
}

bool ProductDistribution::all_mhr() const {
  return std::all_of(marginals_.begin(), marginals_.end(),
                     [](const Marginal& m) { return m.is_mhr(); });
}

WeightVector ProductDistribution::Sample(RandomStream& rng) const {
  WeightVector w(marginals_.size());
  for (size_t i = 0; i < marginals_.size(); ++i) {
    w[i] = marginals_[i].Sample(rng);
  }
  return w;
}

nlohmann::json MarginalToJson(const Marginal& m) {
  nlohmann::json params;
  const auto& p = m.params();
  switch (m.family()) {
    case MarginalFamily::kUniform:
      params = {{"low", p[0]}, {"high", p[1]}};
      break;
    case MarginalFamily::kExponential:
      params = {{"rate", p[0]}};
      break;
    case MarginalFamily::kPointMass:
      params = {{"value", p[0]}};
      break;
    case MarginalFamily::kTruncatedEqualRevenue:
      params = {{"cap", p[0]}};
      break;
    case MarginalFamily::kEmpirical:
      params = {{"atoms", m.atoms()}, {"probabilities", m.probabilities()}};
      break;
  }
  return {{"family", std::string(MarginalFamilyName(m.family()))},
          {"params", std::move(params)}};
}

Marginal MarginalFromJson(const nlohmann::json& j) {
  try {
    const MarginalFamily family =
        ParseMarginalFamily(j.at("family").get<std::string>());
    const auto& p = j.at("params");
    switch (family) {
      case MarginalFamily::kUniform:
        return Marginal::Uniform(p.at("low").get<double>(),
                                 p.at("high").get<double>());
      case MarginalFamily::kExponential:
        return Marginal::Exponential(p.at("rate").get<double>());
      case MarginalFamily::kPointMass:
        return Marginal::PointMass(p.at("value").get<double>());
      case MarginalFamily::kTruncatedEqualRevenue:
        return Marginal::TruncatedEqualRevenue(p.at("cap").get<double>());
      case MarginalFamily::kEmpirical:
        return Marginal::Empirical(
            p.at("atoms").get<std::vector<double>>(),
            p.at("probabilities").get<std::vector<double>>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputDomainError(std::string("malformed marginal JSON: ") +
                           e.what());
  }
  throw InputDomainError("unreachable marginal family");
}

nlohmann::json DistributionToJson(const ProductDistribution& d) {
  if (d.iid() && d.size() > 0) {
    nlohmann::json j = MarginalToJson(d.marginal(0));
    j["n"] = d.size();
    return j;
  }
  nlohmann::json list = nlohmann::json::array();
  for (const auto& m : d.marginals()) list.push_back(MarginalToJson(m));
  return {{"marginals", std::move(list)}};
}

ProductDistribution DistributionFromJson(const nlohmann::json& j) {
  try {
    if (j.contains("marginals")) {
      std::vector<Marginal> ms;
      for (const auto& m : j.at("marginals")) ms.push_back(MarginalFromJson(m));
      return ProductDistribution(std::move(ms));
    }
    return ProductDistribution::Iid(MarginalFromJson(j),
                                    j.at("n").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw InputDomainError(std::string("malformed distribution JSON: ") +
                           e.what());
  }
}

}  // namespace pinq
