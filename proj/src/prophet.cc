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

#include "pinq/prophet.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pinq/errors.h"

namespace pinq {
namespace {

int FloorSqrt(long long x) {
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return static_cast<int>(r);
}

void CheckPermutation(std::span<const int> perm, int n) {
  if (static_cast<int>(perm.size()) != n) {
    throw InputDomainError("permutation length differs from n");
  }
  std::vector<char> seen(n, 0);
  for (int x : perm) {
    if (x < 0 || x >= n || seen[x]) {
      throw InputDomainError("not a permutation of 0..n-1");
    }
    seen[x] = 1;
  }
}

const WeightVector& FirstProfile(std::span<const WeightVector> samples,
                                 int n) {
  if (samples.empty()) throw InputDomainError("no sample profile supplied");
  if (static_cast<int>(samples[0].size()) != n) {
    throw InputDomainError("sample profile length differs from n");
  }
  return samples[0];
}

}  // namespace

PreparedRun PrepareReduction(const Environment& env,
                             const SecretaryAlgorithm& algorithm,
                             std::span<const double> s, RandomStream& rng,
                             const ReductionOptions& options) {
  const int n = env.size();
  if (static_cast<int>(s.size()) != n) {
    throw InputDomainError("sample profile length differs from n");
  }
  std::vector<int> perm;
  if (options.permutation) {
    CheckPermutation(*options.permutation, n);
    perm = *options.permutation;
  } else {
    perm = rng.Permutation(n);
  }
  const int k = options.sample_phase_size
                    ? *options.sample_phase_size
                    : algorithm.DrawSamplePhaseSize(env, rng);
  if (k < 0 || k > n) {
    throw InputDomainError("sample phase size must lie in [0, n]");
  }
  PreparedRun out;
  out.consumed.assign(n, 0);
  SamplePhase sample;
  for (int i = 0; i < k; ++i) {
    sample.indices.push_back(perm[i]);
    sample.values.push_back(s[perm[i]]);
    out.consumed[perm[i]] = 1;
  }
  out.sample_phase = sample.indices;
  out.run = algorithm.Start(env, sample, rng);
  return out;
}

ReductionResult ReduceSecretaryToProphet(const Environment& env,
                                         const SecretaryAlgorithm& algorithm,
                                         std::span<const double> s,
                                         std::span<const Arrival> online,
                                         RandomStream& rng,
                                         const ReductionOptions& options) {
  PreparedRun prepared = PrepareReduction(env, algorithm, s, rng, options);
  RunResult run = RunOnline(*prepared.run, online);
  ReductionResult out;
  out.accepted = std::move(run.accepted);
  out.decisions = std::move(run.decisions);
  out.sample_phase = std::move(prepared.sample_phase);
  out.consumed = std::move(prepared.consumed);
  return out;
}

int RehearsalDistinctSlots(int k) {
  return std::max(1, k - FloorSqrt(4LL * k));
}

std::vector<double> RehearsalThresholds(std::span<const double> s, int k) {
  if (k < 1 || k > static_cast<int>(s.size())) {
    throw InputDomainError("rehearsal needs 1 <= k <= number of samples");
  }
  std::vector<double> sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const int q = RehearsalDistinctSlots(k);
  std::vector<double> t(k);
  for (int j = 0; j < k; ++j) t[j] = sorted[std::min(j, q - 1)];
  return t;
}

RehearsalOnlineRun::RehearsalOnlineRun(const Environment& env,
                                       std::vector<double> thresholds)
    : OnlineRun(env),
      thresholds_(std::move(thresholds)),
      slot_of_(env.size(), -1) {
  for (size_t j = 1; j < thresholds_.size(); ++j) {
    if (thresholds_[j] > thresholds_[j - 1]) {
      throw InputDomainError("rehearsal thresholds must be non-increasing");
    }
  }
  for (int j = 0; j < static_cast<int>(thresholds_.size()); ++j) {
    free_slots_.insert(free_slots_.end(), j);
  }
}

double RehearsalOnlineRun::RulePrice(int) const {
  if (free_slots_.empty()) return kNeverAccept;
  return thresholds_[*free_slots_.rbegin()];
}

void RehearsalOnlineRun::OnAccept(int e, double value) {
  // Slots with threshold < value form a suffix starting at `first`.
  const int first = static_cast<int>(
      std::partition_point(thresholds_.begin(), thresholds_.end(),
                           [value](double t) { return t >= value; }) -
      thresholds_.begin());
  const auto it = free_slots_.lower_bound(first);
  slot_of_[e] = *it;
  free_slots_.erase(it);
}

RehearsalResult RehearsalRun(std::span<const double> thresholds,
                             std::span<const Arrival> stream) {
  int n = static_cast<int>(thresholds.size());
  for (const auto& a : stream) n = std::max(n, a.index + 1);
  const Environment env =
      Environment::Uniform(n, static_cast<int>(thresholds.size()));
  RehearsalOnlineRun run(env, {thresholds.begin(), thresholds.end()});
  RehearsalResult out;
  for (const auto& a : stream) {
    if (run.Offer(a.index, a.value).accepted) {
      out.slots.emplace_back(a.index, run.slot_of(a.index));
      out.welfare += a.value;
    }
  }
  out.accepted = run.Accepted();
  return out;
}

int RequiredSampleProfiles(const BipartiteGraph& graph,
                           const PMatchingOptions& options) {
  if (options.per_edge_samples) return graph.num_edges();
  return graph.degree_bound() * graph.degree_bound();
}

double GreedyEdgeThreshold(const BipartiteGraph& graph, int edge,
                           std::span<const double> others) {
  const int m = graph.num_edges();
  if (edge < 0 || edge >= m) {
    throw InputDomainError("greedy threshold: edge outside the graph");
  }
  if (static_cast<int>(others.size()) != m) {
    throw InputDomainError("greedy threshold: weight vector length mismatch");
  }
  std::vector<int> order;
  for (int f = 0; f < m; ++f) {
    if (f != edge) order.push_back(f);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return others[a] > others[b]; });
  std::vector<char> lused(graph.num_left(), 0), rused(graph.num_right(), 0);
  const auto& target = graph.edge(edge);
  double threshold = 0.0;
  for (int f : order) {
    const auto& e = graph.edge(f);
    if (lused[e.left] || rused[e.right]) continue;
    lused[e.left] = rused[e.right] = 1;
    if (e.left == target.left || e.right == target.right) {
      threshold = std::max(threshold, others[f]);
    }
  }
  return threshold;
}

std::vector<double> MatchingPrices(const BipartiteGraph& graph,
                                   std::span<const WeightVector> samples,
                                   const PMatchingOptions& options) {
  const int m = graph.num_edges();
  const int needed = RequiredSampleProfiles(graph, options);
  if (static_cast<int>(samples.size()) < needed) {
    throw InputDomainError("matching prices need " + std::to_string(needed) +
                           " sample profiles, got " +
                           std::to_string(samples.size()));
  }
  std::vector<double> prices(m);
  for (int e = 0; e < m; ++e) {
    const int profile = options.per_edge_samples ? e : EdgeIndex(graph, e) - 1;
    const WeightVector& s = samples[profile];
    ValidateWeights(s, m);
    prices[e] = options.greedy_pricing ? GreedyEdgeThreshold(graph, e, s)
                                       : EdgeThreshold(graph, e, s);
  }
  return prices;
}

PMatchingRun::PMatchingRun(const Environment& env, std::vector<double> prices,
                           std::vector<int> coins)
    : OnlineRun(env), prices_(std::move(prices)), coins_(std::move(coins)) {
  if (static_cast<int>(prices_.size()) != env.size() ||
      static_cast<int>(coins_.size()) != env.size()) {
    throw InputDomainError("one price and one coin per edge required");
  }
}

std::unique_ptr<PMatchingRun> StartPMatching(
    const Environment& env, std::span<const WeightVector> samples,
    RandomStream& rng, const PMatchingOptions& options) {
  if (env.kind() != EnvKind::kBipartiteMatching) {
    throw InputDomainError("p-matching requires a bipartite-matching "
                           "environment");
  }
  const auto& graph = env.matching().graph;
  std::vector<double> prices = MatchingPrices(graph, samples, options);
  std::vector<int> coins(graph.num_edges());
  if (options.forced_coins) {
    if (options.forced_coins->size() != coins.size()) {
      throw InputDomainError("one forced coin per edge required");
    }
    coins = *options.forced_coins;
  } else {
    for (auto& c : coins) c = rng.Bernoulli(options.coin_probability) ? 1 : 0;
  }
  return std::make_unique<PMatchingRun>(env, std::move(prices),
                                        std::move(coins));
}

RunResult PMatching(const Environment& env,
                    std::span<const WeightVector> samples,
                    std::span<const Arrival> online, RandomStream& rng,
                    const PMatchingOptions& options) {
  auto run = StartPMatching(env, samples, rng, options);
  return RunOnline(*run, online);
}

PreparedRun RehearsalAlgorithm::Prepare(const Environment& env,
                                        std::span<const WeightVector> samples,
                                        RandomStream&) const {
  if (env.kind() != EnvKind::kUniform) {
    throw InputDomainError("rehearsal requires a uniform environment");
  }
  const WeightVector& s = FirstProfile(samples, env.size());
  PreparedRun out;
  out.run = std::make_unique<RehearsalOnlineRun>(
      env, RehearsalThresholds(s, env.uniform().k));
  out.consumed.assign(env.size(), 1);
  return out;
}

namespace {

class GreedyRun : public OnlineRun {
 public:
  using OnlineRun::OnlineRun;

 protected:
  double RulePrice(int) const override { return kAlwaysAccept; }
};

}  // namespace

PreparedRun GreedyAlgorithm::Prepare(const Environment& env,
                                     std::span<const WeightVector>,
                                     RandomStream&) const {
  PreparedRun out;
  out.run = std::make_unique<GreedyRun>(env);
  out.consumed.assign(env.size(), 0);
  return out;
}

PreparedRun ReducedSecretaryAlgorithm::Prepare(
    const Environment& env, std::span<const WeightVector> samples,
    RandomStream& rng) const {
  return PrepareReduction(env, *algorithm_, FirstProfile(samples, env.size()),
                          rng);
}

std::string PMatchingAlgorithm::name() const {
  if (options_.greedy_pricing) return "p-matching-greedy";
  if (options_.per_edge_samples) return "p-matching-per-edge";
  return "p-matching";
}

int PMatchingAlgorithm::SampleProfiles(const Environment& env) const {
  if (env.kind() != EnvKind::kBipartiteMatching) {
    throw InputDomainError("p-matching requires a bipartite-matching "
                           "environment");
  }
  return RequiredSampleProfiles(env.matching().graph, options_);
}

PreparedRun PMatchingAlgorithm::Prepare(const Environment& env,
                                        std::span<const WeightVector> samples,
                                        RandomStream& rng) const {
  PreparedRun out;
  out.run = StartPMatching(env, samples, rng, options_);
  out.consumed.assign(env.size(), 1);
  return out;
}

std::vector<std::string> ProphetAlgorithmNames() {
  std::vector<std::string> names = {"greedy", "rehearsal", "p-matching",
                                    "p-matching-greedy", "p-matching-per-edge"};
  for (const auto& s : SecretaryAlgorithmNames()) {
    if (s != "free-order") names.push_back(s);
  }
  return names;
}

std::unique_ptr<ProphetAlgorithm> MakeProphetAlgorithm(std::string_view name) {
  if (name == "greedy") return std::make_unique<GreedyAlgorithm>();
  if (name == "rehearsal") return std::make_unique<RehearsalAlgorithm>();
  if (name == "p-matching") return std::make_unique<PMatchingAlgorithm>();
  if (name == "p-matching-greedy") {
    PMatchingOptions o;
    o.greedy_pricing = true;
    return std::make_unique<PMatchingAlgorithm>(o);
  }
  if (name == "p-matching-per-edge") {
    PMatchingOptions o;
    o.per_edge_samples = true;
    return std::make_unique<PMatchingAlgorithm>(o);
  }
  return std::make_unique<ReducedSecretaryAlgorithm>(
      MakeSecretaryAlgorithm(name));
}

std::vector<std::string> ProphetEnvClasses() {
  return {"uniform-k",      "partition",   "graphic", "transversal",
          "laminar-approx", "general-iid", "matching"};
}

ProphetBinding ProphetFor(std::string_view env_class) {
  ProphetBinding b;
  b.env_class = std::string(env_class);
  if (env_class == "uniform-k") {
    b.algorithm = "rehearsal";
    b.ratio_label = "1 - O(1/sqrt(k))";
  } else if (env_class == "partition") {
    b.algorithm = "blockwise";
    b.ratio = 0.25;
    b.ratio_label = "1/4 per block";
  } else if (env_class == "graphic") {
    b.algorithm = "graphic-kp";
    b.ratio = 1.0 / 8.0;
    b.ratio_label = "1/8";
  } else if (env_class == "transversal") {
    b.algorithm = "transversal-dp";
    b.ratio = 1.0 / 16.0;
    b.ratio_label = "1/16";
  } else if (env_class == "laminar-approx") {
    b.algorithm = "blockwise";
    b.ratio = 1.0 / (12.0 * std::sqrt(3.0));
    b.ratio_label = "1/(12 sqrt 3)";
    b.approximate = true;
  } else if (env_class == "general-iid") {
    b.algorithm = "gv";
    b.ratio = (1.0 - std::exp(-1.0)) / 20.0;
    b.ratio_label = "(1 - 1/e)/20";
  } else if (env_class == "matching") {
    b.algorithm = "p-matching";
    b.ratio = 1.0 / 6.75;
    b.ratio_label = "1/6.75";
  } else {
    throw InputDomainError("unknown environment class '" +
                           std::string(env_class) + "'");
  }
  return b;
}

}  // namespace pinq
