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

#include "pinq/mech.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "pinq/errors.h"
#include "pinq/online.h"
#include "pinq/secretary.h"

namespace pinq {
namespace {

constexpr double kPaymentTolerance = 1e-9;

std::string_view ReserveKindName(ReserveKind kind) {
  switch (kind) {
    case ReserveKind::kNone: return "none";
    case ReserveKind::kMonopoly: return "monopoly";
    case ReserveKind::kSingleSample: return "single-sample";
    case ReserveKind::kQuantile: return "quantile";
  }
  return "none";
}

void CheckSizes(const Environment& env, const ProductDistribution& dist,
                std::span<const double> v) {
  ValidateWeights(v, env.size());
  if (dist.size() != env.size()) {
    throw InputDomainError("distribution has " + std::to_string(dist.size()) +
                           " marginals for " + std::to_string(env.size()) +
                           " elements");
  }
}

void CheckPermutation(std::span<const int> p, int n, const char* what) {
  if (static_cast<int>(p.size()) != n) {
    throw InputDomainError(std::string(what) + " must list every element");
  }
  std::vector<char> seen(n, 0);
  for (int e : p) {
    if (e < 0 || e >= n || seen[e]) {
      throw InputDomainError(std::string(what) + " is not a permutation");
    }
    seen[e] = 1;
  }
}

MechanismOutcome Finish(FeasibleSet winners, std::vector<double> payments,
                        std::span<const double> v) {
  MechanismOutcome out;
  std::vector<int> idx(winners.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return winners[a] < winners[b]; });
  for (int i : idx) {
    out.winners.push_back(winners[i]);
    out.payments.push_back(payments[i]);
    out.welfare += v[winners[i]];
    out.revenue += payments[i];
  }
  return out;
}

}  // namespace

ReservePolicy ReservePolicyFromJson(const nlohmann::json& j) {
  ReservePolicy p;
  if (j.is_null()) return p;
  if (j.is_string()) return ReservePolicyFromJson(nlohmann::json{{"kind", j}});
  if (!j.is_object()) throw InputDomainError("reserve must be an object");
  try {
    const std::string kind = j.value("kind", std::string("none"));
    if (kind == "none") {
      p.kind = ReserveKind::kNone;
    } else if (kind == "monopoly") {
      p.kind = ReserveKind::kMonopoly;
    } else if (kind == "single-sample") {
      p.kind = ReserveKind::kSingleSample;
    } else if (kind == "quantile") {
      p.kind = ReserveKind::kQuantile;
    } else {
      throw InputDomainError("unknown reserve kind '" + kind + "'");
    }
    const std::string app = j.value("application", std::string("lazy"));
    if (app == "lazy") {
      p.application = ReserveApplication::kLazy;
    } else if (app == "eager") {
      p.application = ReserveApplication::kEager;
    } else {
      throw InputDomainError("unknown reserve application '" + app + "'");
    }
    p.quantile = j.value("quantile", 0.5);
  } catch (const nlohmann::json::exception& e) {
    throw InputDomainError(std::string("malformed reserve: ") + e.what());
  }
  if (!(p.quantile >= 0.0 && p.quantile <= 1.0)) {
    throw InputDomainError("reserve quantile must lie in [0, 1]");
  }
  return p;
}

nlohmann::json ReservePolicyToJson(const ReservePolicy& policy) {
  nlohmann::json j = {
      {"kind", ReserveKindName(policy.kind)},
      {"application",
       policy.application == ReserveApplication::kLazy ? "lazy" : "eager"}};
  if (policy.kind == ReserveKind::kQuantile) j["quantile"] = policy.quantile;
  return j;
}

double ThresholdPayment(bool accepted, double threshold) {
  return accepted ? std::max(threshold, 0.0) : 0.0;
}

std::vector<double> DrawReserves(const ReservePolicy& policy,
                                 const ProductDistribution& dist,
                                 std::span<const double> s,
                                 std::span<const char> consumed,
                                 RandomStream& rng) {
  const int n = dist.size();
  if (!s.empty() && static_cast<int>(s.size()) != n) {
    throw InputDomainError("sample profile length differs from n");
  }
  if (!consumed.empty() && static_cast<int>(consumed.size()) != n) {
    throw InputDomainError("consumed mask length differs from n");
  }
  std::vector<double> r(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const Marginal& m = dist.marginal(i);
    switch (policy.kind) {
      case ReserveKind::kNone:
        break;
      case ReserveKind::kMonopoly:
        r[i] = MonopolyReserve(m);
        break;
      case ReserveKind::kSingleSample: {
        const bool fresh = s.empty() || (!consumed.empty() && consumed[i]);
        r[i] = fresh ? m.Sample(rng) : s[i];
        break;
      }
      case ReserveKind::kQuantile:
        r[i] = m.Quantile(policy.quantile);
        break;
    }
  }
  return r;
}

MechanismOutcome ApplyLazyReserves(const MechanismOutcome& outcome,
                                   std::span<const double> v,
                                   std::span<const double> reserves) {
  if (outcome.payments.size() != outcome.winners.size()) {
    throw InputDomainError("payments and winners differ in length");
  }
  FeasibleSet winners;
  std::vector<double> payments;
  for (size_t i = 0; i < outcome.winners.size(); ++i) {
    const int e = outcome.winners[i];
    if (e < 0 || e >= static_cast<int>(v.size()) ||
        e >= static_cast<int>(reserves.size())) {
      throw InputDomainError("winner outside the universe");
    }
    if (v[e] < reserves[e]) continue;
    winners.push_back(e);
    payments.push_back(std::max(outcome.payments[i], reserves[e]));
  }
  return Finish(std::move(winners), std::move(payments), v);
}

MechanismOutcome RunPostedPriceMechanism(const Environment& env,
                                         const ProphetAlgorithm& algorithm,
                                         std::span<const WeightVector> samples,
                                         std::span<const int> order,
                                         std::span<const double> v,
                                         const ReservePolicy& policy,
                                         const ProductDistribution& dist,
                                         RandomStream& rng) {
  CheckSizes(env, dist, v);
  CheckPermutation(order, env.size(), "arrival order");
  const int needed = algorithm.SampleProfiles(env);
  if (static_cast<int>(samples.size()) < needed) {
    throw InputDomainError(algorithm.name() + " needs " +
                           std::to_string(needed) + " sample profiles, got " +
                           std::to_string(samples.size()));
  }
  const bool eager = policy.application == ReserveApplication::kEager &&
                     policy.kind != ReserveKind::kNone;
  std::vector<double> reserves;
  if (eager) reserves = DrawReserves(policy, dist, {}, {}, rng);

  PreparedRun prepared = algorithm.Prepare(env, samples, rng);
  FeasibleSet winners;
  std::vector<double> payments;
  for (int e : order) {
    if (eager && v[e] < reserves[e]) continue;
    const Decision d = prepared.run->Offer(e, v[e]);
    if (!d.accepted) continue;
    winners.push_back(e);
    payments.push_back(eager ? std::max(ThresholdPayment(true, d.price),
                                        reserves[e])
                             : ThresholdPayment(true, d.price));
  }
  MechanismOutcome out = Finish(std::move(winners), std::move(payments), v);
  if (eager || policy.kind == ReserveKind::kNone) return out;
  const std::span<const double> s =
      samples.empty() ? std::span<const double>() : std::span(samples[0]);
  reserves = DrawReserves(policy, dist, s, prepared.consumed, rng);
  return ApplyLazyReserves(out, v, reserves);
}

bool CheckOutcome(const Environment& env, const MechanismOutcome& outcome,
                  std::span<const double> v, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (outcome.payments.size() != outcome.winners.size()) {
    return fail("payments and winners differ in length");
  }
  if (!IsFeasible(env, outcome.winners)) return fail("winners infeasible");
  double welfare = 0.0, revenue = 0.0;
  for (size_t i = 0; i < outcome.winners.size(); ++i) {
    const int e = outcome.winners[i];
    const double p = outcome.payments[i];
    if (p < 0.0) return fail("negative payment for " + std::to_string(e));
    if (p > v[e] + kPaymentTolerance) {
      return fail("payment " + std::to_string(p) + " exceeds value " +
                  std::to_string(v[e]) + " for " + std::to_string(e));
    }
    welfare += v[e];
    revenue += p;
  }
  const double tol = kPaymentTolerance * (1.0 + welfare);
  if (std::abs(welfare - outcome.welfare) > tol) return fail("welfare drift");
  if (std::abs(revenue - outcome.revenue) > tol) return fail("revenue drift");
  return true;
}

double VirtualSurplus(const Environment& env, const ProductDistribution& dist,
                      std::span<const double> v) {
  CheckSizes(env, dist, v);
  std::vector<double> phi(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    phi[i] = std::max(VirtualValue(dist.marginal(static_cast<int>(i)), v[i]),
                      0.0);
  }
  return OfflineOpt(env, phi).weight;
}

Estimate MyersonBenchmark(const Environment& env,
                          const ProductDistribution& dist, int trials,
                          RandomStream& rng) {
  if (trials <= 0) throw InputDomainError("trials must be positive");
  if (!dist.all_regular()) {
    throw InputDomainError("optimal-revenue benchmark needs regular marginals");
  }
  double mean = 0.0, m2 = 0.0;
  for (int t = 1; t <= trials; ++t) {
    const WeightVector v = dist.Sample(rng);
    const double x = VirtualSurplus(env, dist, v);
    const double delta = x - mean;
    mean += delta / t;
    m2 += delta * (x - mean);
  }
  Estimate est;
  est.mean = mean;
  est.trials = trials;
  est.stderr_mean = trials > 1 ? std::sqrt(m2 / (trials - 1) / trials) : 0.0;
  return est;
}

CopiesInstance BuildCopies(int buyers, int items,
                           const std::vector<std::vector<Marginal>>& marginals,
                           std::span<const std::pair<int, int>> allowed) {
  if (buyers <= 0 || items <= 0) {
    throw InputDomainError("copies need at least one buyer and one item");
  }
  if (static_cast<int>(marginals.size()) != buyers) {
    throw InputDomainError("one marginal row per buyer required");
  }
  for (const auto& row : marginals) {
    if (static_cast<int>(row.size()) != items) {
      throw InputDomainError("one marginal per (buyer, item) pair required");
    }
  }
  std::vector<std::pair<int, int>> pairs(allowed.begin(), allowed.end());
  if (pairs.empty()) {
    for (int i = 0; i < buyers; ++i) {
      for (int j = 0; j < items; ++j) pairs.emplace_back(i, j);
    }
  }
  std::vector<char> seen(static_cast<size_t>(buyers) * items, 0);
  std::vector<Marginal> agent_marginals;
  CopiesInstance c;
  c.buyers = buyers;
  c.items = items;
  for (const auto& [i, j] : pairs) {
    if (i < 0 || i >= buyers || j < 0 || j >= items) {
      throw InputDomainError("allowed pair outside the market");
    }
    char& s = seen[static_cast<size_t>(i) * items + j];
    if (s) throw InputDomainError("duplicate allowed pair");
    s = 1;
    c.agent_buyer.push_back(i);
    c.agent_item.push_back(j);
    agent_marginals.push_back(marginals[i][j]);
  }
  c.env = Environment::BipartiteMatching(
      BipartiteGraph::FromPairs(buyers, items, pairs));
  c.dist = ProductDistribution(std::move(agent_marginals));
  return c;
}

MechanismOutcome OpmRevenueRun(const CopiesInstance& copies,
                               const ProphetAlgorithm& algorithm,
                               const ReservePolicy& policy,
                               std::span<const int> order,
                               std::span<const WeightVector> samples,
                               std::span<const double> v, RandomStream& rng) {
  return RunPostedPriceMechanism(copies.env, algorithm, samples, order, v,
                                 policy, copies.dist, rng);
}

MechanismGuarantee OpmGuarantee(double alpha, bool mhr) {
  MechanismGuarantee g;
  g.welfare = alpha / 2.0;
  g.revenue = mhr ? alpha / (2.0 * std::numbers::e) : alpha / 2.0;
  g.label = mhr ? "alpha/(2e) revenue, MHR" : "alpha/2 revenue, iid regular";
  return g;
}

MechanismGuarantee SpmGuarantee(bool mhr) {
  MechanismGuarantee g;
  g.welfare = 1.0 / 8.0;
  g.revenue = mhr ? 1.0 / (8.0 * std::numbers::e) : 1.0 / 8.0;
  g.label = mhr ? "1/8 welfare, 1/(8e) revenue, MHR"
                : "1/8 revenue, iid regular";
  return g;
}

MechanismOutcome SpmFreeOrder(const Environment& env, std::span<const double> s,
                              std::span<const double> v,
                              const ReservePolicy& policy,
                              const ProductDistribution& dist,
                              RandomStream& rng) {
  CheckSizes(env, dist, v);
  ValidateWeights(s, env.size());
  if (policy.application == ReserveApplication::kEager &&
      policy.kind != ReserveKind::kNone) {
    throw UnsupportedOperationError(
        "the free-order mechanism applies reserves lazily only");
  }
  std::vector<char> in_sample(env.size(), 0);
  for (int e = 0; e < env.size(); ++e) in_sample[e] = rng.Bernoulli(0.5);
  const FreeOrderResult r = FreeOrderJsz(env, in_sample, s, v);
  FeasibleSet winners;
  std::vector<double> payments;
  for (const Decision& d : r.decisions) {
    if (!d.accepted) continue;
    winners.push_back(d.index);
    payments.push_back(ThresholdPayment(true, d.price));
  }
  MechanismOutcome out = Finish(std::move(winners), std::move(payments), v);
  if (policy.kind == ReserveKind::kNone) return out;
  return ApplyLazyReserves(out, v,
                           DrawReserves(policy, dist, s, in_sample, rng));
}

ComparisonMass ComparisonMassCheck(const Environment& env,
                                   const ProphetAlgorithm& algorithm,
                                   const ProductDistribution& dist,
                                   std::span<const int> ranking,
                                   std::span<const int> order, double alpha,
                                   int trials, uint64_t seed) {
  const int n = env.size();
  if (dist.size() != n) throw InputDomainError("distribution size differs");
  CheckPermutation(ranking, n, "ranking");
  CheckPermutation(order, n, "arrival order");
  if (trials <= 0) throw InputDomainError("trials must be positive");

  std::vector<int> rank_of(n);
  for (int j = 0; j < n; ++j) rank_of[ranking[j]] = j;
  const int profiles = algorithm.SampleProfiles(env);
  auto cube = [](std::vector<double> x) {
    for (double& y : x) y = y * y * y;
    return x;
  };
  auto run = [&](const std::vector<WeightVector>& samples,
                 const std::vector<double>& v, const RandomStream& rng) {
    RandomStream local = rng;
    PreparedRun prepared = algorithm.Prepare(env, samples, local);
    return RunOnline(*prepared.run, order, v).accepted;
  };

  std::vector<double> sum(n, 0.0), sum_sq(n, 0.0), q(n, 0.0);
  ComparisonMass out;
  for (int t = 0; t < trials; ++t) {
    RandomStream rng(seed, static_cast<uint64_t>(t));
    WeightVector drawn = dist.Sample(rng);
    std::sort(drawn.begin(), drawn.end(), std::greater<>());
    std::vector<double> v(n);
    for (int j = 0; j < n; ++j) v[ranking[j]] = drawn[j];
    std::vector<WeightVector> samples, cubed_samples;
    for (int p = 0; p < profiles; ++p) {
      samples.push_back(dist.Sample(rng));
      cubed_samples.push_back(cube(samples.back()));
    }
    const RandomStream alg_rng = rng.Fork(1);
    const FeasibleSet a = run(samples, v, alg_rng);
    const FeasibleSet b = run(cubed_samples, cube(v), alg_rng);
    if (a != b) ++out.embedding_mismatches;

    std::vector<int> hit(n, 0);
    for (int e : a) hit[rank_of[e]] = 1;
    int prefix = 0;
    for (int j = 0; j < n; ++j) {
      q[j] += hit[j];
      prefix += hit[j];
      sum[j] += prefix;
      sum_sq[j] += static_cast<double>(prefix) * prefix;
    }
  }

  std::vector<double> top(n, 0.0);
  for (int i = 0; i < n; ++i) {
    out.q.push_back(q[i] / trials);
    const double mean = sum[i] / trials;
    out.cumulative.push_back(mean);
    top[ranking[i]] = 1.0;
    const double j_i = OfflineOpt(env, top).weight;
    out.rank_prefix.push_back(j_i);
    const double var =
        trials > 1
            ? std::max(0.0, (sum_sq[i] - trials * mean * mean) / (trials - 1))
            : 0.0;
    const double se = std::sqrt(var / trials);
    if (mean < alpha * j_i - 3.0 * se) out.dominates = false;
  }
  return out;
}

}  // namespace pinq
