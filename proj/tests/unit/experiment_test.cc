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

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "pinq/errors.h"
#include "pinq/experiment.h"
#include "pinq/verify.h"

namespace pinq {
namespace {

using nlohmann::json;

json BaseConfig() {
  return {{"environment", {{"kind", "uniform"}, {"n", 2}, {"k", 1}}},
          {"distribution",
           {{"family", "uniform"}, {"params", {{"low", 0}, {"high", 1}}}}},
          {"algorithm", "none"},
          {"trials", 20000},
          {"seed", 3}};
}

class ScopedWorkers {
 public:
  explicit ScopedWorkers(const char* value) {
    if (const char* old = std::getenv("PINQ_WORKERS")) old_ = old;
    setenv("PINQ_WORKERS", value, 1);
  }
  ~ScopedWorkers() {
    if (old_.empty()) unsetenv("PINQ_WORKERS");
    else setenv("PINQ_WORKERS", old_.c_str(), 1);
  }

 private:
  std::string old_;
};

TEST(PairedRatio, MatchesHandComputation) {
  const RatioEstimate r = PairedRatio({1, 2, 3}, {2, 4, 6});
  EXPECT_DOUBLE_EQ(r.ratio, 0.5);
  // Exactly proportional pairs leave no ratio variance.
  EXPECT_NEAR(r.half_width, 0.0, 1e-12);
  EXPECT_THROW(PairedRatio({}, {}), InputDomainError);
}

TEST(RunExperiment, BenchmarkOnlyMeanIsExpectedMaximum) {
  const ExperimentReport r = RunExperiment(ExperimentConfigFromJson(BaseConfig()));
  ASSERT_EQ(r.records.size(), 20000u);
  EXPECT_NEAR(r.welfare.denominator_mean, 2.0 / 3.0, 0.01);
}

TEST(RunExperiment, DeterministicAcrossWorkerCounts) {
  json cfg = BaseConfig();
  cfg["algorithm"] = "rehearsal";
  cfg["environment"] = {{"kind", "uniform"}, {"n", 12}, {"k", 4}};
  cfg["trials"] = 300;
  cfg["order"] = "random";
  cfg["reserve"] = "single-sample";
  const ExperimentConfig config = ExperimentConfigFromJson(cfg);
  json one, many;
  {
    ScopedWorkers w("1");
    one = ReportToJson(RunExperiment(config), false);
  }
  {
    ScopedWorkers w("4");
    many = ReportToJson(RunExperiment(config), false);
  }
  EXPECT_EQ(one.dump(), many.dump());
}

TEST(RunExperiment, ExhaustiveOrderIsNoBetterThanIdentity) {
  json cfg = BaseConfig();
  cfg["algorithm"] = "rehearsal";
  cfg["environment"] = {{"kind", "uniform"}, {"n", 5}, {"k", 2}};
  cfg["trials"] = 50;
  cfg["order"] = "exhaustive";
  const ExperimentReport worst = RunExperiment(ExperimentConfigFromJson(cfg));
  cfg["order"] = {{"kind", "fixed"}, {"permutation", {0, 1, 2, 3, 4}}};
  const ExperimentReport fixed = RunExperiment(ExperimentConfigFromJson(cfg));
  for (size_t t = 0; t < worst.records.size(); ++t) {
    EXPECT_LE(worst.records[t].welfare, fixed.records[t].welfare + 1e-12);
  }
}

TEST(ExperimentConfig, RoundTrip) {
  json cfg = BaseConfig();
  cfg["algorithm"] = "rank1";
  cfg["reserve"] = {{"kind", "quantile"}, {"application", "eager"}, {"quantile", 0.25}};
  const ExperimentConfig c = ExperimentConfigFromJson(cfg);
  const ExperimentConfig back = ExperimentConfigFromJson(ExperimentConfigToJson(c));
  EXPECT_EQ(ExperimentConfigToJson(back).dump(), ExperimentConfigToJson(c).dump());
}

TEST(ExperimentConfig, InvalidCombinations) {
  auto expect_bad = [](json cfg) {
    EXPECT_THROW(ExperimentConfigFromJson(cfg), ConfigError) << cfg.dump();
  };
  json c = BaseConfig();
  c["algorithm"] = "nope";
  expect_bad(c);
  c = BaseConfig();
  c["trials"] = 0;
  expect_bad(c);
  c = BaseConfig();
  c["format"] = "xml";
  expect_bad(c);
  c = BaseConfig();
  c["environment"] = {{"kind", "uniform"}, {"n", 9}, {"k", 1}};
  c["order"] = "exhaustive";
  expect_bad(c);
  c = BaseConfig();
  c["order"] = {{"kind", "fixed"}, {"permutation", {0, 0}}};
  expect_bad(c);
  c = BaseConfig();
  c["distribution"] = {{"family", "uniform"},
                       {"params", {{"low", 0}, {"high", 1}}},
                       {"n", 3}};
  expect_bad(c);
  c = BaseConfig();
  c["distribution"] = {{"family", "empirical"},
                       {"params", {{"atoms", {1, 2}}, {"probabilities", {0.5, 0.5}}}}};
  c["reserve"] = "monopoly";
  expect_bad(c);
  c = BaseConfig();
  c["algorithm"] = "free-order";
  c["environment"] = {{"kind", "bipartite-matching"},
                      {"left", 1},
                      {"right", 1},
                      {"edges", {{{"left", 0}, {"right", 0}}}}};
  expect_bad(c);
}

TEST(ExperimentConfig, AlgorithmEnvironmentMismatchIsConfigError) {
  json cfg = BaseConfig();
  cfg["algorithm"] = "graphic-kp";
  cfg["trials"] = 2;
  EXPECT_THROW(RunExperiment(ExperimentConfigFromJson(cfg)), ConfigError);
}

TEST(Report, CsvHeaderAndRows) {
  json cfg = BaseConfig();
  cfg["trials"] = 3;
  const std::string csv = ReportToCsv(RunExperiment(ExperimentConfigFromJson(cfg)));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "trial,welfare,revenue,benchmark,revenue_benchmark,winners,order");
  int rows = 0;
  while (std::getline(in, line)) rows += line.empty() ? 0 : 1;
  EXPECT_EQ(rows, 3);
}

TEST(Report, JsonAggregateFields) {
  json cfg = BaseConfig();
  cfg["trials"] = 5;
  cfg["algorithm"] = "rank1";
  cfg["reserve"] = "monopoly";
  const json j = ReportToJson(RunExperiment(ExperimentConfigFromJson(cfg)));
  EXPECT_TRUE(j.contains("wall_clock_seconds"));
  EXPECT_EQ(j["records"].size(), 5u);
  EXPECT_TRUE(j["aggregate"].contains("welfare_ratio"));
  EXPECT_TRUE(j["aggregate"].contains("revenue_ratio"));
}

}  // namespace
}  // namespace pinq
