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

// Prophet algorithms that see only a few samples of the value distribution:
// the secretary-to-prophet reduction, the rehearsal algorithm for k-uniform
// matroids, and the coin-flip pricing algorithm for degree-bounded bipartite
// matchings.

#ifndef PINQ_PROPHET_H_
#define PINQ_PROPHET_H_

#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pinq/env.h"
#include "pinq/online.h"
#include "pinq/random.h"
#include "pinq/secretary.h"

namespace pinq {

// An online run plus the bookkeeping of which sample coordinates it read.
struct PreparedRun {
  std::unique_ptr<OnlineRun> run;
  // consumed[i] != 0 iff coordinate i of the first sample profile was used.
  std::vector<char> consumed;
  // Elements fed to a secretary algorithm as its sample phase, in feed order.
  std::vector<int> sample_phase;
};

struct ReductionOptions {
  // Replaces the random permutation j_1, ..., j_n.
  std::optional<std::vector<int>> permutation;
  // Replaces the algorithm's sample-phase size.
  std::optional<int> sample_phase_size;
};

// Draws a uniform permutation j of the elements and a sample-phase size k,
// then starts `algorithm` with (j_1, s_{j_1}), ..., (j_k, s_{j_k}) as its
// sample phase. Online values of j_1, ..., j_k are ignored by the run. Only
// those k sample coordinates are marked consumed.
PreparedRun PrepareReduction(const Environment& env,
                             const SecretaryAlgorithm& algorithm,
                             std::span<const double> s, RandomStream& rng,
                             const ReductionOptions& options = {});

struct ReductionResult {
  FeasibleSet accepted;
  std::vector<int> sample_phase;
  std::vector<char> consumed;
  std::vector<Decision> decisions;
};

ReductionResult ReduceSecretaryToProphet(const Environment& env,
                                         const SecretaryAlgorithm& algorithm,
                                         std::span<const double> s,
                                         std::span<const Arrival> online,
                                         RandomStream& rng,
                                         const ReductionOptions& options = {});

// Number of thresholds copied from the sorted samples:
// max(1, k - floor(2 sqrt(k))).
int RehearsalDistinctSlots(int k);

// T_1 >= ... >= T_k with T_j = s^(j) for j <= q and T_j = s^(q) beyond, where
// s^(1) >= s^(2) >= ... are the sorted samples and q = RehearsalDistinctSlots.
// InputDomainError unless 1 <= k <= |s|.
std::vector<double> RehearsalThresholds(std::span<const double> s, int k);

// k slots with descending thresholds. An arriving value fills the
// lowest-index free slot whose threshold it strictly exceeds; its price is
// therefore the smallest threshold among free slots.
class RehearsalOnlineRun : public OnlineRun {
 public:
  RehearsalOnlineRun(const Environment& env, std::vector<double> thresholds);

  // Slot filled by e, or -1.
  int slot_of(int e) const { return slot_of_[e]; }
  const std::vector<double>& thresholds() const { return thresholds_; }

 protected:
  double RulePrice(int e) const override;
  void OnAccept(int e, double value) override;

 private:
  std::vector<double> thresholds_;
  std::set<int> free_slots_;
  std::vector<int> slot_of_;
};

struct RehearsalResult {
  FeasibleSet accepted;
  // (element, slot) pairs in acceptance order; slots are 0-based.
  std::vector<std::pair<int, int>> slots;
  double welfare = 0.0;
};

// Universe = indices seen in the stream (at least thresholds.size()).
RehearsalResult RehearsalRun(std::span<const double> thresholds,
                             std::span<const Arrival> stream);

struct PMatchingOptions {
  double coin_probability = 1.0 / 3.0;
  // One coin per edge, replacing the random draws.
  std::optional<std::vector<int>> forced_coins;
  // One sample profile per edge instead of one per edge index.
  bool per_edge_samples = false;
  // Price each edge by the greedy matching on its sample profile: the
  // heaviest edge adjacent to e in the greedy matching of G - e.
  bool greedy_pricing = false;
};

// Profiles needed: d^2, or the edge count with per_edge_samples.
int RequiredSampleProfiles(const BipartiteGraph& graph,
                           const PMatchingOptions& options);

// p_e for every edge. InputDomainError when fewer profiles than required.
std::vector<double> MatchingPrices(const BipartiteGraph& graph,
                                   std::span<const WeightVector> samples,
                                   const PMatchingOptions& options);

// Greedy-matching threshold of `edge` under `others`.
double GreedyEdgeThreshold(const BipartiteGraph& graph, int edge,
                           std::span<const double> others);

class PMatchingRun : public OnlineRun {
 public:
  PMatchingRun(const Environment& env, std::vector<double> prices,
               std::vector<int> coins);
  int Coin(int e) const override { return coins_[e]; }
  const std::vector<double>& prices() const { return prices_; }

 protected:
  double RulePrice(int e) const override {
    return coins_[e] ? prices_[e] : kNeverAccept;
  }

 private:
  std::vector<double> prices_;
  std::vector<int> coins_;
};

// Draws all coins up front so the price of an edge is fixed before it
// arrives.
std::unique_ptr<PMatchingRun> StartPMatching(
    const Environment& env, std::span<const WeightVector> samples,
    RandomStream& rng, const PMatchingOptions& options = {});

RunResult PMatching(const Environment& env,
                    std::span<const WeightVector> samples,
                    std::span<const Arrival> online, RandomStream& rng,
                    const PMatchingOptions& options = {});

// Prophet algorithm with a fixed sample budget.
class ProphetAlgorithm {
 public:
  virtual ~ProphetAlgorithm() = default;
  virtual std::string name() const = 0;
  virtual int SampleProfiles(const Environment& env) const = 0;
  virtual PreparedRun Prepare(const Environment& env,
                              std::span<const WeightVector> samples,
                              RandomStream& rng) const = 0;
};

// Rehearsal on k-uniform matroids; the first profile sets the thresholds.
class RehearsalAlgorithm : public ProphetAlgorithm {
 public:
  std::string name() const override { return "rehearsal"; }
  int SampleProfiles(const Environment&) const override { return 1; }
  PreparedRun Prepare(const Environment& env,
                      std::span<const WeightVector> samples,
                      RandomStream& rng) const override;
};

// A secretary algorithm behind the reduction.
class ReducedSecretaryAlgorithm : public ProphetAlgorithm {
 public:
  explicit ReducedSecretaryAlgorithm(
      std::unique_ptr<SecretaryAlgorithm> algorithm)
      : algorithm_(std::move(algorithm)) {}
  std::string name() const override { return std::string(algorithm_->name()); }
  int SampleProfiles(const Environment&) const override { return 1; }
  PreparedRun Prepare(const Environment& env,
                      std::span<const WeightVector> samples,
                      RandomStream& rng) const override;

 private:
  std::unique_ptr<SecretaryAlgorithm> algorithm_;
};

class PMatchingAlgorithm : public ProphetAlgorithm {
 public:
  explicit PMatchingAlgorithm(PMatchingOptions options = {})
      : options_(std::move(options)) {}
  std::string name() const override;
  int SampleProfiles(const Environment& env) const override;
  PreparedRun Prepare(const Environment& env,
                      std::span<const WeightVector> samples,
                      RandomStream& rng) const override;

 private:
  PMatchingOptions options_;
};

// Accepts every element that keeps the set feasible; reads no samples.
class GreedyAlgorithm : public ProphetAlgorithm {
 public:
  std::string name() const override { return "greedy"; }
  int SampleProfiles(const Environment&) const override { return 0; }
  PreparedRun Prepare(const Environment& env,
                      std::span<const WeightVector> samples,
                      RandomStream& rng) const override;
};

// Names: greedy, rehearsal, p-matching, p-matching-greedy, p-matching-per-edge, and
// every secretary name except free-order (run through the reduction).
std::vector<std::string> ProphetAlgorithmNames();
std::unique_ptr<ProphetAlgorithm> MakeProphetAlgorithm(std::string_view name);

// Claimed guarantee for an environment class.
struct ProphetBinding {
  std::string env_class;
  std::string algorithm;
  // Competitive ratio lower bound; for uniform-k it depends on k and is given
  // by `ratio_label` only (ratio = 0).
  double ratio = 0.0;
  std::string ratio_label;
  // The bound is not proven for this implementation.
  bool approximate = false;
};

// env_class in {uniform-k, partition, graphic, transversal, laminar-approx,
// general-iid, matching}; InputDomainError otherwise.
ProphetBinding ProphetFor(std::string_view env_class);
std::vector<std::string> ProphetEnvClasses();

}  // namespace pinq

#endif  // PINQ_PROPHET_H_
