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

#include "pinq/secretary.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "pinq/errors.h"

namespace pinq {
namespace {

void ValidateSamplePhase(const Environment& env, const SamplePhase& sample) {
  if (sample.indices.size() != sample.values.size()) {
    throw InputDomainError("sample phase indices and values differ in length");
  }
  std::vector<char> seen(env.size(), 0);
  for (int e : sample.indices) {
    if (e < 0 || e >= env.size()) {
      throw InputDomainError("sample phase element outside the universe");
    }
    if (seen[e]) throw InputDomainError("duplicate sample phase element");
    seen[e] = 1;
  }
}

// Block id per element, -1 for elements in no block.
std::vector<int> BlockLabels(int n, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> label(n, -1);
  for (size_t b = 0; b < blocks.size(); ++b) {
    for (int e : blocks[b]) {
      if (e < 0 || e >= n) {
        throw InputDomainError("block element " + std::to_string(e) +
                               " outside the universe");
      }
      if (label[e] != -1) {
        throw InputDomainError("blocks overlap at element " +
                               std::to_string(e));
      }
      label[e] = static_cast<int>(b);
    }
  }
  return label;
}

// Minimal members of a laminar family, each taken once, plus a singleton for
// every element outside all of them.
std::vector<std::vector<int>> LaminarBlocks(const Environment& env) {
  const auto& family = env.laminar().family;
  std::vector<std::vector<int>> sorted(family.size());
  for (size_t a = 0; a < family.size(); ++a) {
    sorted[a] = family[a];
    std::sort(sorted[a].begin(), sorted[a].end());
  }
  std::vector<std::vector<int>> blocks;
  std::vector<char> covered(env.size(), 0);
  for (size_t a = 0; a < sorted.size(); ++a) {
    if (sorted[a].empty()) continue;
    bool minimal = true;
    for (size_t b = 0; b < sorted.size() && minimal; ++b) {
      if (b == a || sorted[b].empty()) continue;
      const bool subset = std::includes(sorted[a].begin(), sorted[a].end(),
                                        sorted[b].begin(), sorted[b].end());
      // A strictly smaller member, or an identical earlier one, disqualifies.
      if (subset && (sorted[b].size() < sorted[a].size() || b < a)) {
        minimal = false;
      }
    }
    if (!minimal) continue;
    blocks.push_back(sorted[a]);
    for (int e : sorted[a]) covered[e] = 1;
  }
  for (int e = 0; e < env.size(); ++e) {
    if (!covered[e]) blocks.push_back({e});
  }
  return blocks;
}

std::vector<std::vector<int>> DefaultBlocks(const Environment& env) {
  switch (env.kind()) {
    case EnvKind::kPartition:
      return env.partition().blocks;
    case EnvKind::kLaminar:
      return LaminarBlocks(env);
    default: {
      std::vector<int> all(env.size());
      std::iota(all.begin(), all.end(), 0);
      return {all};
    }
  }
}

// Rank-1 rule inside each block: the price of an element is the largest
// sample value in its block until the block has accepted once.
class BlockwiseRun : public OnlineRun {
 public:
  BlockwiseRun(const Environment& env, const SamplePhase& sample,
               std::vector<int> block_of, int num_blocks)
      : OnlineRun(env),
        block_of_(std::move(block_of)),
        threshold_(num_blocks, kAlwaysAccept),
        used_(num_blocks, 0) {
    for (size_t i = 0; i < sample.indices.size(); ++i) {
      const int b = block_of_[sample.indices[i]];
      if (b >= 0) threshold_[b] = std::max(threshold_[b], sample.values[i]);
    }
    MarkIgnored(sample.indices);
  }

 protected:
  double RulePrice(int e) const override {
    const int b = block_of_[e];
    if (b < 0 || used_[b]) return kNeverAccept;
    return threshold_[b];
  }
  void OnAccept(int e, double) override { used_[block_of_[e]] = 1; }

 private:
  std::vector<int> block_of_;
  std::vector<double> threshold_;
  std::vector<char> used_;
};

std::unique_ptr<OnlineRun> StartBlockwise(
    const Environment& env, const SamplePhase& sample,
    const std::vector<std::vector<int>>& blocks) {
  ValidateSamplePhase(env, sample);
  return std::make_unique<BlockwiseRun>(env, sample,
                                        BlockLabels(env.size(), blocks),
                                        static_cast<int>(blocks.size()));
}

std::unique_ptr<OnlineRun> StartRank1(const Environment& env,
                                      const SamplePhase& sample) {
  ValidateSamplePhase(env, sample);
  return std::make_unique<BlockwiseRun>(env, sample,
                                        std::vector<int>(env.size(), 0), 1);
}

class TransversalDpRun : public OnlineRun {
 public:
  TransversalDpRun(const Environment& env, const SamplePhase& sample,
                   const TransversalDpOptions& options)
      : OnlineRun(env), graph_(&env.transversal().graph) {
    const int num_right = graph_->num_right();
    rank_pos_.assign(num_right, 0);
    if (options.right_ranking.empty()) {
      std::iota(rank_pos_.begin(), rank_pos_.end(), 0);
    } else {
      if (static_cast<int>(options.right_ranking.size()) != num_right) {
        throw InputDomainError("right ranking must list every right vertex");
      }
      std::vector<char> seen(num_right, 0);
      for (int pos = 0; pos < num_right; ++pos) {
        const int r = options.right_ranking[pos];
        if (r < 0 || r >= num_right || seen[r]) {
          throw InputDomainError("right ranking is not a permutation");
        }
        seen[r] = 1;
        rank_pos_[r] = pos;
      }
    }

    // M0 over the sample phase.
    std::vector<size_t> order(sample.indices.size());
    std::iota(order.begin(), order.end(), size_t{0});
    if (options.sample_order == SampleMatchingOrder::kDecreasingValue) {
      std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (sample.values[a] != sample.values[b]) {
          return sample.values[a] > sample.values[b];
        }
        return sample.indices[a] < sample.indices[b];
      });
    }
    in_m0_.assign(num_right, 0);
    sample_match_.assign(sample.indices.size(), -1);
    for (size_t i : order) {
      const int r = BestFreeNeighbour(sample.indices[i], in_m0_);
      if (r >= 0) {
        in_m0_[r] = 1;
        sample_match_[i] = r;
      }
    }
    m1_owner_.assign(num_right, -1);
    target_.assign(env.size(), -1);
    for (int l = 0; l < env.size(); ++l) {
      target_[l] = BestFreeNeighbour(l, in_m0_);
    }
    MarkIgnored(sample.indices);
  }

  const std::vector<int>& sample_match() const { return sample_match_; }
  int target(int l) const { return target_[l]; }

 protected:
  double RulePrice(int l) const override {
    const int r = target_[l];
    if (r < 0 || m1_owner_[r] != -1) return kNeverAccept;
    return kAlwaysAccept;
  }
  void OnAccept(int l, double) override { m1_owner_[target_[l]] = l; }

 private:
  int BestFreeNeighbour(int l, const std::vector<char>& taken) const {
    int best = -1;
    for (int e : graph_->left_incidence(l)) {
      const int r = graph_->edge(e).right;
      if (taken[r]) continue;
      if (best == -1 || rank_pos_[r] < rank_pos_[best]) best = r;
    }
    return best;
  }

  const BipartiteGraph* graph_;
  std::vector<int> rank_pos_;
  std::vector<char> in_m0_;
  std::vector<int> sample_match_;
  std::vector<int> m1_owner_;
  std::vector<int> target_;
};

// Single price for every element: the (floor(r/4)+1)-th largest sample value.
class GvRun : public OnlineRun {
 public:
  GvRun(const Environment& env, const SamplePhase& sample, int rank)
      : OnlineRun(env) {
    std::vector<double> sorted = sample.values;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const size_t pos = static_cast<size_t>(rank / 4);
    threshold_ = pos < sorted.size() ? sorted[pos] : kAlwaysAccept;
    MarkIgnored(sample.indices);
  }

 protected:
  double RulePrice(int) const override { return threshold_; }

 private:
  double threshold_;
};

int FullRank(const Environment& env) {
  std::vector<int> all(env.size());
  std::iota(all.begin(), all.end(), 0);
  return Rank(env, all);
}

constexpr int kGvMinRank = 12;

}  // namespace

int SecretaryAlgorithm::DrawSamplePhaseSize(const Environment& env,
                                            RandomStream& rng) const {
  return rng.BinomialHalf(env.size());
}

std::unique_ptr<OnlineRun> Rank1Algorithm::Start(const Environment& env,
                                                 const SamplePhase& sample,
                                                 RandomStream&) const {
  return StartRank1(env, sample);
}

BlockwiseAlgorithm::BlockwiseAlgorithm(std::vector<std::vector<int>> blocks)
    : blocks_(std::move(blocks)) {}

std::unique_ptr<OnlineRun> BlockwiseAlgorithm::Start(const Environment& env,
                                                     const SamplePhase& sample,
                                                     RandomStream&) const {
  return StartBlockwise(env, sample, blocks_ ? *blocks_ : DefaultBlocks(env));
}

std::vector<std::vector<int>> GraphicKpBlocks(const Environment& env,
                                              int coin) {
  if (env.kind() != EnvKind::kGraphic) {
    throw InputDomainError("graphic-kp requires a graphic environment");
  }
  const auto& g = env.graphic();
  std::vector<std::vector<int>> blocks(g.num_vertices);
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    const auto [u, v] = g.edges[e];
    if (u == v) continue;
    const int leaves = coin == 0 ? std::min(u, v) : std::max(u, v);
    blocks[leaves].push_back(e);
  }
  return blocks;
}

std::unique_ptr<OnlineRun> GraphicKpAlgorithm::Start(const Environment& env,
                                                     const SamplePhase& sample,
                                                     RandomStream& rng) const {
  const int coin =
      forced_coin_ ? *forced_coin_ : static_cast<int>(rng.UniformInt(2));
  return StartBlockwise(env, sample, GraphicKpBlocks(env, coin));
}

std::unique_ptr<OnlineRun> TransversalDpAlgorithm::Start(
    const Environment& env, const SamplePhase& sample, RandomStream&) const {
  if (env.kind() != EnvKind::kTransversal) {
    throw InputDomainError("transversal-dp requires a transversal environment");
  }
  ValidateSamplePhase(env, sample);
  return std::make_unique<TransversalDpRun>(env, sample, options_);
}

int GvAlgorithm::DrawSamplePhaseSize(const Environment& env,
                                     RandomStream& rng) const {
  if (FullRank(env) < kGvMinRank) return rng.BinomialHalf(env.size());
  return env.size() / 2;
}

std::unique_ptr<OnlineRun> GvAlgorithm::Start(const Environment& env,
                                              const SamplePhase& sample,
                                              RandomStream&) const {
  const int rank = FullRank(env);
  if (rank < kGvMinRank) return StartRank1(env, sample);
  ValidateSamplePhase(env, sample);
  return std::make_unique<GvRun>(env, sample, rank);
}

std::vector<std::string> SecretaryAlgorithmNames() {
  return {"rank1", "blockwise", "graphic-kp", "transversal-dp", "gv",
          "free-order"};
}

std::unique_ptr<SecretaryAlgorithm> MakeSecretaryAlgorithm(
    std::string_view name) {
  if (name == "rank1") return std::make_unique<Rank1Algorithm>();
  if (name == "blockwise") return std::make_unique<BlockwiseAlgorithm>();
  if (name == "graphic-kp") return std::make_unique<GraphicKpAlgorithm>();
  if (name == "transversal-dp") {
    return std::make_unique<TransversalDpAlgorithm>();
  }
  if (name == "gv") return std::make_unique<GvAlgorithm>();
  if (name == "free-order") {
    throw InputDomainError(
        "free-order chooses its own order; use FreeOrderJsz directly");
  }
  throw InputDomainError("unknown secretary algorithm '" + std::string(name) +
                         "'");
}

std::optional<int> Rank1Secretary(std::span<const double> sample_values,
                                  std::span<const Arrival> online) {
  double threshold = kAlwaysAccept;
  for (double s : sample_values) threshold = std::max(threshold, s);
  for (const auto& a : online) {
    if (a.value > threshold) return a.index;
  }
  return std::nullopt;
}

FeasibleSet BlockwiseRank1(const Environment& env,
                           const std::vector<std::vector<int>>& blocks,
                           const SamplePhase& sample,
                           std::span<const Arrival> online) {
  RandomStream unused(0);
  auto run = BlockwiseAlgorithm(blocks).Start(env, sample, unused);
  return RunOnline(*run, online).accepted;
}

FeasibleSet GraphicKp(const Environment& env, const SamplePhase& sample,
                      std::span<const Arrival> online, RandomStream& rng) {
  auto run = GraphicKpAlgorithm().Start(env, sample, rng);
  return RunOnline(*run, online).accepted;
}

TransversalDpResult TransversalDp(const Environment& env,
                                  const SamplePhase& sample,
                                  std::span<const Arrival> online,
                                  const TransversalDpOptions& options) {
  if (env.kind() != EnvKind::kTransversal) {
    throw InputDomainError("transversal-dp requires a transversal environment");
  }
  ValidateSamplePhase(env, sample);
  TransversalDpRun run(env, sample, options);
  TransversalDpResult out;
  out.accepted = RunOnline(run, online).accepted;
  out.sample_matching = run.sample_match();
  for (int l : out.accepted) out.accepted_matching.push_back(run.target(l));
  return out;
}

FeasibleSet GvRandomAssignment(const Environment& env,
                               const SamplePhase& sample,
                               std::span<const Arrival> online) {
  RandomStream unused(0);
  auto run = GvAlgorithm().Start(env, sample, unused);
  return RunOnline(*run, online).accepted;
}

FreeOrderResult FreeOrderJsz(const Environment& env,
                             std::span<const char> in_sample,
                             std::span<const double> sample_values,
                             std::span<const double> online_values) {
  if (!env.is_matroid()) {
    throw UnsupportedOperationError("free-order requires a matroid");
  }
  const int n = env.size();
  if (static_cast<int>(in_sample.size()) != n ||
      static_cast<int>(sample_values.size()) != n ||
      static_cast<int>(online_values.size()) != n) {
    throw InputDomainError("free-order inputs must all have length n");
  }
  FreeOrderResult out;

  std::vector<int> sample_set;
  for (int e = 0; e < n; ++e) {
    if (in_sample[e]) sample_set.push_back(e);
  }
  std::stable_sort(sample_set.begin(), sample_set.end(), [&](int a, int b) {
    return sample_values[a] > sample_values[b];
  });
  {
    IndependenceState basis(env);
    for (int e : sample_set) {
      if (basis.TryAdd(e)) out.basis.push_back(e);
    }
  }

  // group[y] = first prefix length spanning y, or 0 for "never spanned".
  // Loops are spanned by the empty prefix and can never be accepted; they go
  // with the leftovers.
  std::vector<int> group(n, 0);
  std::vector<int> pending;
  const IndependenceState empty(env);
  for (int e = 0; e < n; ++e) {
    if (!in_sample[e] && empty.CanAdd(e)) pending.push_back(e);
  }
  IndependenceState prefix(env);
  for (size_t i = 0; i < out.basis.size(); ++i) {
    prefix.TryAdd(out.basis[i]);
    std::vector<int> still;
    for (int y : pending) {
      if (!prefix.CanAdd(y)) {
        group[y] = static_cast<int>(i) + 1;
      } else {
        still.push_back(y);
      }
    }
    pending.swap(still);
  }

  std::vector<std::vector<int>> by_group(out.basis.size() + 1);
  for (int y = 0; y < n; ++y) {
    if (!in_sample[y]) by_group[group[y]].push_back(y);
  }

  IndependenceState accepted(env);
  auto offer = [&](int y, double rule_price) {
    Decision d;
    d.index = y;
    d.value = online_values[y];
    d.price = accepted.CanAdd(y) ? rule_price : kNeverAccept;
    d.accepted = d.value > d.price;
    if (d.accepted) accepted.TryAdd(y);
    out.decisions.push_back(d);
  };
  for (size_t i = 1; i <= out.basis.size(); ++i) {
    for (int y : by_group[i]) offer(y, sample_values[out.basis[i - 1]]);
  }
  for (int y : by_group[0]) offer(y, kAlwaysAccept);
  out.accepted = accepted.SortedMembers();
  return out;
}

FreeOrderResult FreeOrderJsz(const Environment& env, std::span<const double> w,
                             RandomStream& rng) {
  std::vector<char> in_sample(env.size());
  for (auto& c : in_sample) c = static_cast<char>(rng.UniformInt(2));
  return FreeOrderJsz(env, in_sample, w, w);
}

double SpanCost(const Environment& env, int y, std::span<const int> set,
                std::span<const double> w) {
  if (!env.is_matroid()) {
    throw UnsupportedOperationError("span cost requires a matroid");
  }
  if (y < 0 || y >= env.size()) {
    throw InputDomainError("span cost element outside the universe");
  }
  std::vector<int> z(set.begin(), set.end());
  std::stable_sort(z.begin(), z.end(), [&](int a, int b) {
    if (w[a] != w[b]) return w[a] > w[b];
    return a < b;
  });
  IndependenceState prefix(env);
  for (int e : z) {
    if (e == y) return w[e];
    prefix.TryAdd(e);
    if (!prefix.CanAdd(y)) return w[e];
  }
  return 0.0;
}

}  // namespace pinq
