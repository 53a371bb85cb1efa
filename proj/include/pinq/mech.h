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

// Posted-price mechanisms built from the online rules: threshold payments,
// reserve prices (lazy or eager), the optimal-revenue benchmark, the copies
// construction for unit-demand markets, and the free-order sequential
// posted-price mechanism.

#ifndef PINQ_MECH_H_
#define PINQ_MECH_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pinq/dist.h"
#include "pinq/env.h"
#include "pinq/prophet.h"
#include "pinq/random.h"

namespace pinq {

enum class ReserveKind { kNone, kMonopoly, kSingleSample, kQuantile };
enum class ReserveApplication { kLazy, kEager };

struct ReservePolicy {
  ReserveKind kind = ReserveKind::kNone;
  ReserveApplication application = ReserveApplication::kLazy;
  double quantile = 0.5;  // for kQuantile, in [0, 1]
};

// {"kind": "none|monopoly|single-sample|quantile", "application":
// "lazy|eager", "quantile": p}. Missing fields take the defaults above.
ReservePolicy ReservePolicyFromJson(const nlohmann::json& j);
nlohmann::json ReservePolicyToJson(const ReservePolicy& policy);

struct MechanismOutcome {
  FeasibleSet winners;
  std::vector<double> payments;  // parallel to winners
  double welfare = 0.0;
  double revenue = 0.0;
};

// Payment of a step allocation rule with critical value `threshold`: the
// threshold (at least 0, since bids are non-negative) if accepted, else 0.
double ThresholdPayment(bool accepted, double threshold);

// One reserve per bidder. Single-sample reserves read s[i] when `s` is
// non-empty and consumed[i] == 0, and draw fresh from D_i otherwise.
// Monopoly reserves throw InputDomainError for non-regular marginals.
std::vector<double> DrawReserves(const ReservePolicy& policy,
                                 const ProductDistribution& dist,
                                 std::span<const double> s,
                                 std::span<const char> consumed,
                                 RandomStream& rng);

// Keeps winners with v_i >= r_i; each pays max(payment, r_i).
MechanismOutcome ApplyLazyReserves(const MechanismOutcome& outcome,
                                   std::span<const double> v,
                                   std::span<const double> reserves);

// Runs `algorithm` as the allocation rule on arrivals in `order`, charges
// threshold payments and applies the reserve policy. Lazy: the rule sees
// every bidder, then reserves filter the winners. Eager: bidders below their
// (freshly drawn) reserve are removed before the rule runs.
MechanismOutcome RunPostedPriceMechanism(const Environment& env,
                                         const ProphetAlgorithm& algorithm,
                                         std::span<const WeightVector> samples,
                                         std::span<const int> order,
                                         std::span<const double> v,
                                         const ReservePolicy& policy,
                                         const ProductDistribution& dist,
                                         RandomStream& rng);

// Payments in [0, v_i] for winners; welfare and revenue match the sums;
// winners feasible. Writes the first violation to `why` when given.
bool CheckOutcome(const Environment& env, const MechanismOutcome& outcome,
                  std::span<const double> v, std::string* why = nullptr);

// Optimal revenue for value profile v: the best feasible set under virtual
// values clamped at 0.
double VirtualSurplus(const Environment& env, const ProductDistribution& dist,
                      std::span<const double> v);

struct Estimate {
  double mean = 0.0;
  double stderr_mean = 0.0;
  int trials = 0;
  // 95% normal-approximation half-width.
  double half_width() const { return 1.96 * stderr_mean; }
};

// Monte-Carlo mean of VirtualSurplus. InputDomainError unless every marginal
// is regular.
Estimate MyersonBenchmark(const Environment& env,
                          const ProductDistribution& dist, int trials,
                          RandomStream& rng);

// Single-dimensional surrogate of a unit-demand market: one agent per allowed
// (buyer, item) pair, feasible sets are matchings between buyers and items.
struct CopiesInstance {
  int buyers = 0;
  int items = 0;
  std::vector<int> agent_buyer;
  std::vector<int> agent_item;
  Environment env = Environment::Uniform(0, 0);
  ProductDistribution dist{std::vector<Marginal>{}};
};

// marginals[i][j] is buyer i's value distribution for item j. Empty
// `allowed` means every pair.
CopiesInstance BuildCopies(int buyers, int items,
                           const std::vector<std::vector<Marginal>>& marginals,
                           std::span<const std::pair<int, int>> allowed = {});

// RunPostedPriceMechanism on the copies environment. InputDomainError when
// fewer sample profiles than the algorithm's budget are supplied.
MechanismOutcome OpmRevenueRun(const CopiesInstance& copies,
                               const ProphetAlgorithm& algorithm,
                               const ReservePolicy& policy,
                               std::span<const int> order,
                               std::span<const WeightVector> samples,
                               std::span<const double> v, RandomStream& rng);

struct MechanismGuarantee {
  double welfare = 0.0;
  double revenue = 0.0;
  std::string label;
};

// Lazy single-sample reserves on top of an alpha-competitive rule: alpha/2
// revenue for iid regular values, alpha/(2e) for MHR values; alpha/2 welfare.
MechanismGuarantee OpmGuarantee(double alpha, bool mhr);
// Free-order mechanism: 1/8 welfare and 1/(8e) revenue for MHR values, 1/8
// revenue for iid regular values.
MechanismGuarantee SpmGuarantee(bool mhr);

// Free-order mechanism: a fair coin per element puts it in the sample set S
// (observed through s) or in P (offered with v); the free-order rule picks
// the winners and prices; reserves follow the policy, single-sample reserves
// reading the untouched s_i of winners.
MechanismOutcome SpmFreeOrder(const Environment& env, std::span<const double> s,
                              std::span<const double> v,
                              const ReservePolicy& policy,
                              const ProductDistribution& dist,
                              RandomStream& rng);

struct ComparisonMass {
  // q[j]: frequency with which the bidder holding the j-th largest value is
  // selected.
  std::vector<double> q;
  std::vector<double> cumulative;  // sum_{j <= i} q_j
  std::vector<double> rank_prefix;  // J(i)
  // cumulative[i] >= alpha * J(i) - 3 sigma for every i.
  bool dominates = true;
  // Number of trials whose accepted sets differed between the two value
  // embeddings x and x^3.
  int embedding_mismatches = 0;
};

// `ranking` lists bidders from the largest value to the smallest; every trial
// draws values and samples from `dist`, reassigns the sorted values along
// the ranking, and runs `algorithm` on arrivals in `order`. The same trial is
// replayed with all values and samples cubed.
ComparisonMass ComparisonMassCheck(const Environment& env,
                                   const ProphetAlgorithm& algorithm,
                                   const ProductDistribution& dist,
                                   std::span<const int> ranking,
                                   std::span<const int> order, double alpha,
                                   int trials, uint64_t seed);

}  // namespace pinq

#endif  // PINQ_MECH_H_
