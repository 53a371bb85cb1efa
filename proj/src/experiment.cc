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

#include "pinq/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "pinq/env_io.h"
#include "pinq/errors.h"
#include "pinq/prophet.h"

namespace pinq {
namespace {

std::string_view OrderKindName(OrderKind kind) {
  switch (kind) {
    case OrderKind::kIncreasing: return "increasing";
    case OrderKind::kDecreasing: return "decreasing";
    case OrderKind::kRandom: return "random";
    case OrderKind::kFixed: return "fixed";
    case OrderKind::kExhaustive: return "exhaustive";
  }
  return "random";
}

OrderKind ParseOrderKind(const std::string& name) {
  if (name == "increasing") return OrderKind::kIncreasing;
  if (name == "decreasing") return OrderKind::kDecreasing;
  if (name == "random") return OrderKind::kRandom;
  if (name == "fixed") return OrderKind::kFixed;
  if (name == "exhaustive") return OrderKind::kExhaustive;
  throw ConfigError("unknown order strategy '" + name + "'");
}

// Ties in value are broken by index in both directions.
std::vector<int> SortedOrder(std::span<const double> v, bool increasing) {
  std::vector<int> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return increasing ? v[a] < v[b] : v[a] > v[b];
  });
  return order;
}

int WorkerCount() {
  if (const char* env = std::getenv("PINQ_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

class TrialRunner {
 public:
  explicit TrialRunner(const ExperimentConfig& config) : config_(config) {
    const std::string& name = config.algorithm;
    if (name != "none" && name != "free-order") {
      algorithm_ = MakeProphetAlgorithm(name);
      profiles_ = algorithm_->SampleProfiles(config.environment);
    } else if (name == "free-order") {
      profiles_ = 1;
    }
    policy_ = config.reserve.value_or(ReservePolicy{});
    revenue_benchmark_ =
        config.reserve.has_value() && config.distribution.all_regular();
  }

  bool revenue_benchmark() const { return revenue_benchmark_; }

  TrialRecord Run(int t) const {
    const Environment& env = config_.environment;
    const ProductDistribution& dist = config_.distribution;
    RandomStream rng(config_.seed, static_cast<uint64_t>(t));
    std::vector<WeightVector> samples;
    for (int p = 0; p < profiles_; ++p) samples.push_back(dist.Sample(rng));
    const WeightVector v = dist.Sample(rng);

    TrialRecord rec;
    rec.trial = t;
    rec.benchmark = OfflineOpt(env, v).weight;
    if (revenue_benchmark_) rec.revenue_benchmark = VirtualSurplus(env, dist, v);
    if (config_.algorithm == "none") return rec;

    std::vector<int> order;
    switch (config_.order.kind) {
      case OrderKind::kIncreasing: order = SortedOrder(v, true); break;
      case OrderKind::kDecreasing: order = SortedOrder(v, false); break;
      case OrderKind::kRandom: order = rng.Permutation(env.size()); break;
      case OrderKind::kFixed: order = config_.order.permutation; break;
      case OrderKind::kExhaustive:
        order.resize(env.size());
        std::iota(order.begin(), order.end(), 0);
        break;
    }
    const RandomStream alg_rng = rng.Fork(1);

    MechanismOutcome outcome;
    if (config_.algorithm == "free-order") {
      RandomStream r = alg_rng;
      outcome = SpmFreeOrder(env, samples[0], v, policy_, dist, r);
      order.clear();
    } else if (config_.order.kind == OrderKind::kExhaustive) {
      bool first = true;
      std::vector<int> perm = order;
      do {
        RandomStream r = alg_rng;
        MechanismOutcome o = RunPostedPriceMechanism(
            env, *algorithm_, samples, perm, v, policy_, dist, r);
        if (first || o.welfare < outcome.welfare) {
          outcome = std::move(o);
          order = perm;
          first = false;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
      RandomStream r = alg_rng;
      outcome = RunPostedPriceMechanism(env, *algorithm_, samples, order, v,
                                        policy_, dist, r);
    }
    rec.welfare = outcome.welfare;
    rec.revenue = outcome.revenue;
    rec.winners = std::move(outcome.winners);
    rec.order = std::move(order);
    return rec;
  }

 private:
  const ExperimentConfig& config_;
  std::unique_ptr<ProphetAlgorithm> algorithm_;
  int profiles_ = 0;
  ReservePolicy policy_;
  bool revenue_benchmark_ = false;
};

std::string JoinInts(const std::vector<int>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(xs[i]);
  }
  return out;
}

nlohmann::json RatioToJson(const RatioEstimate& r) {
  return {{"numerator_mean", r.numerator_mean},
          {"denominator_mean", r.denominator_mean},
          {"ratio", r.ratio},
          {"stderr", r.stderr_ratio},
          {"ci95_half_width", r.half_width}};
}

}  // namespace

ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    c.environment = EnvironmentFromJson(j.at("environment"));
    nlohmann::json dist = j.at("distribution");
    if (!dist.contains("marginals") && !dist.contains("n")) {
      dist["n"] = c.environment.size();
    }
    c.distribution = DistributionFromJson(dist);
    c.algorithm = j.value("algorithm", std::string("none"));
    if (j.contains("order")) {
      const auto& o = j.at("order");
      if (o.is_string()) {
        c.order.kind = ParseOrderKind(o.get<std::string>());
      } else {
        c.order.kind = ParseOrderKind(o.at("kind").get<std::string>());
        if (o.contains("permutation")) {
          c.order.permutation = o.at("permutation").get<std::vector<int>>();
        }
      }
    }
    c.trials = j.value("trials", 1);
    c.seed = j.value("seed", uint64_t{0});
    if (j.contains("reserve") && !j.at("reserve").is_null()) {
      c.reserve = ReservePolicyFromJson(j.at("reserve"));
    }
    c.output = j.value("output", std::string());
    c.format = j.value("format", std::string("json"));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed experiment config: ") + e.what());
  } catch (const InputDomainError& e) {
    throw ConfigError(e.what());
  }

  const int n = c.environment.size();
  if (c.distribution.size() != n) {
    throw ConfigError("distribution has " +
                      std::to_string(c.distribution.size()) +
                      " marginals for " + std::to_string(n) + " elements");
  }
  if (c.trials < 1) throw ConfigError("trials must be at least 1");
  if (c.format != "json" && c.format != "csv") {
    throw ConfigError("format must be json or csv");
  }
  if (c.order.kind == OrderKind::kExhaustive && n > kMaxExhaustiveN) {
    throw ConfigError("exhaustive order needs n <= " +
                      std::to_string(kMaxExhaustiveN));
  }
  if (c.order.kind == OrderKind::kFixed) {
    std::vector<int> sorted = c.order.permutation;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> ident(n);
    std::iota(ident.begin(), ident.end(), 0);
    if (sorted != ident) throw ConfigError("fixed order must be a permutation");
  }
  if (c.algorithm != "none" && c.algorithm != "free-order") {
    const auto names = ProphetAlgorithmNames();
    if (std::find(names.begin(), names.end(), c.algorithm) == names.end()) {
      throw ConfigError("unknown algorithm '" + c.algorithm + "'");
    }
  }
  if (c.algorithm == "free-order" && !c.environment.is_matroid()) {
    throw ConfigError("free-order needs a matroid environment");
  }
  if (c.reserve && c.reserve->kind == ReserveKind::kMonopoly &&
      !c.distribution.all_regular()) {
    throw ConfigError("monopoly reserves need regular marginals");
  }
  return c;
}

nlohmann::json ExperimentConfigToJson(const ExperimentConfig& c) {
  nlohmann::json order = {{"kind", OrderKindName(c.order.kind)}};
  if (c.order.kind == OrderKind::kFixed) order["permutation"] = c.order.permutation;
  nlohmann::json j = {{"environment", EnvironmentToJson(c.environment)},
                      {"distribution", DistributionToJson(c.distribution)},
                      {"algorithm", c.algorithm},
                      {"order", order},
                      {"trials", c.trials},
                      {"seed", c.seed},
                      {"format", c.format}};
  if (c.reserve) j["reserve"] = ReservePolicyToJson(*c.reserve);
  if (!c.output.empty()) j["output"] = c.output;
  return j;
}

RatioEstimate PairedRatio(const std::vector<double>& a,
                          const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) {
    throw InputDomainError("paired ratio needs equal, non-empty samples");
  }
  const double t = static_cast<double>(a.size());
  RatioEstimate r;
  r.numerator_mean = std::accumulate(a.begin(), a.end(), 0.0) / t;
  r.denominator_mean = std::accumulate(b.begin(), b.end(), 0.0) / t;
  if (r.denominator_mean <= 0.0) return r;
  r.ratio = r.numerator_mean / r.denominator_mean;
  if (a.size() < 2) return r;
  double vaa = 0.0, vbb = 0.0, vab = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - r.numerator_mean;
    const double db = b[i] - r.denominator_mean;
    vaa += da * da;
    vbb += db * db;
    vab += da * db;
  }
  vaa /= t - 1;
  vbb /= t - 1;
  vab /= t - 1;
  const double var =
      (vaa - 2.0 * r.ratio * vab + r.ratio * r.ratio * vbb) /
      (r.denominator_mean * r.denominator_mean * t);
  r.stderr_ratio = std::sqrt(std::max(var, 0.0));
  r.half_width = 1.96 * r.stderr_ratio;
  return r;
}

ExperimentReport RunExperiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const TrialRunner runner(config);
  ExperimentReport report;
  report.config = config;
  report.records.resize(config.trials);

  // Pairing errors surface on the first trial; report them as config errors.
  try {
    report.records[0] = runner.Run(0);
  } catch (const InputDomainError& e) {
    throw ConfigError(config.algorithm + ": " + e.what());
  } catch (const UnsupportedOperationError& e) {
    throw ConfigError(config.algorithm + ": " + e.what());
  }

  const int workers = std::min(WorkerCount(), config.trials);
  std::atomic<int> next{1};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    try {
      for (int t = next++; t < config.trials; t = next++) {
        report.records[t] = runner.Run(t);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  std::vector<double> welfare, benchmark, revenue, revenue_benchmark;
  for (const auto& r : report.records) {
    welfare.push_back(r.welfare);
    benchmark.push_back(r.benchmark);
    revenue.push_back(r.revenue);
    revenue_benchmark.push_back(r.revenue_benchmark);
  }
  report.welfare = PairedRatio(welfare, benchmark);
  report.mean_revenue =
      std::accumulate(revenue.begin(), revenue.end(), 0.0) / config.trials;
  if (runner.revenue_benchmark()) {
    report.revenue = PairedRatio(revenue, revenue_benchmark);
  }
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

nlohmann::json ReportToJson(const ExperimentReport& report,
                            bool include_wall_clock) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : report.records) {
    records.push_back({{"trial", r.trial},
                       {"welfare", r.welfare},
                       {"revenue", r.revenue},
                       {"benchmark", r.benchmark},
                       {"revenue_benchmark", r.revenue_benchmark},
                       {"winners", r.winners},
                       {"order", r.order}});
  }
  nlohmann::json aggregate = {{"mean_welfare", report.welfare.numerator_mean},
                              {"mean_benchmark", report.welfare.denominator_mean},
                              {"mean_revenue", report.mean_revenue},
                              {"welfare_ratio", RatioToJson(report.welfare)}};
  if (report.revenue) aggregate["revenue_ratio"] = RatioToJson(*report.revenue);
  nlohmann::json j = {{"config", ExperimentConfigToJson(report.config)},
                      {"seed", report.config.seed},
                      {"aggregate", aggregate},
                      {"records", records}};
  if (include_wall_clock) j["wall_clock_seconds"] = report.wall_clock_seconds;
  return j;
}

std::string ReportToCsv(const ExperimentReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "trial,welfare,revenue,benchmark,revenue_benchmark,winners,order\n";
  for (const auto& r : report.records) {
    out << r.trial << ',' << r.welfare << ',' << r.revenue << ','
        << r.benchmark << ',' << r.revenue_benchmark << ','
        << JoinInts(r.winners) << ',' << JoinInts(r.order) << '\n';
  }
  return out.str();
}

}  // namespace pinq
