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

// Monte-Carlo experiments: draw samples and values, order the arrivals, run
// an allocation rule as a posted-price mechanism, and compare with the
// offline optimum on the same draw.

#ifndef PINQ_EXPERIMENT_H_
#define PINQ_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pinq/dist.h"
#include "pinq/env.h"
#include "pinq/mech.h"

namespace pinq {

enum class OrderKind { kIncreasing, kDecreasing, kRandom, kFixed, kExhaustive };

struct OrderStrategy {
  OrderKind kind = OrderKind::kRandom;
  std::vector<int> permutation;  // kFixed only
};

// Largest n for which the exhaustive adversary is allowed.
inline constexpr int kMaxExhaustiveN = 8;

struct ExperimentConfig {
  Environment environment = Environment::Uniform(1, 1);
  ProductDistribution distribution{std::vector<Marginal>{}};
  // A prophet algorithm name, "free-order" (mechanism picks the order), or
  // "none" (benchmark only).
  std::string algorithm = "none";
  OrderStrategy order;
  int trials = 1;
  uint64_t seed = 0;
  std::optional<ReservePolicy> reserve;
  std::string output;          // empty: no file
  std::string format = "json";  // json | csv
};

// Throws ConfigError on invalid combinations (unknown algorithm, exhaustive
// order above kMaxExhaustiveN, trials < 1, size mismatch).
ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& j);
nlohmann::json ExperimentConfigToJson(const ExperimentConfig& config);

struct TrialRecord {
  int trial = 0;
  double welfare = 0.0;
  double revenue = 0.0;
  double benchmark = 0.0;          // offline optimum of the same values
  double revenue_benchmark = 0.0;  // virtual surplus; 0 without reserves
  std::vector<int> winners;
  // Arrival order used; for the exhaustive adversary, the minimizing order.
  std::vector<int> order;
};

struct RatioEstimate {
  double numerator_mean = 0.0;
  double denominator_mean = 0.0;
  double ratio = 0.0;
  // Delta-method 95% half-width from sample variances and covariance.
  double half_width = 0.0;
  double stderr_ratio = 0.0;
};

// Ratio of means for paired draws.
RatioEstimate PairedRatio(const std::vector<double>& numerator,
                          const std::vector<double>& denominator);

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialRecord> records;
  RatioEstimate welfare;  // welfare vs offline optimum
  // Present when a reserve policy is configured and marginals are regular.
  std::optional<RatioEstimate> revenue;
  double mean_revenue = 0.0;
  double wall_clock_seconds = 0.0;
};

// Trials run on PINQ_WORKERS threads (default: hardware concurrency); trial
// t uses RandomStream(seed, t), so results do not depend on the worker count.
ExperimentReport RunExperiment(const ExperimentConfig& config);

// Report body without the wall-clock, for determinism checks.
nlohmann::json ReportToJson(const ExperimentReport& report,
                            bool include_wall_clock = true);
// Header: trial,welfare,revenue,benchmark,revenue_benchmark,winners,order.
// Lists are space-separated.
std::string ReportToCsv(const ExperimentReport& report);

}  // namespace pinq

#endif  // PINQ_EXPERIMENT_H_
