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

#include <algorithm>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "pinq/env.h"
#include "pinq/errors.h"
#include "pinq/online.h"
#include "pinq/random.h"
#include "pinq/secretary.h"
#include "pinq/verify.h"

namespace pinq {
namespace {

std::vector<Arrival> Stream(std::vector<std::pair<int, double>> xs) {
  std::vector<Arrival> out;
  for (auto [i, v] : xs) out.push_back({i, v});
  return out;
}

TEST(Rank1Secretary, FirstAboveSampleMaximum) {
  EXPECT_EQ(Rank1Secretary(std::vector<double>{0.5, 0.9},
                           Stream({{2, 0.7}, {3, 0.95}, {4, 0.99}})),
            3);
  EXPECT_EQ(Rank1Secretary(std::vector<double>{}, Stream({{1, 0.1}})), 1);
  EXPECT_FALSE(Rank1Secretary(std::vector<double>{1.0}, Stream({{0, 1.0}})));
}

TEST(Blockwise, OneWinnerPerBlock) {
  const Environment env =
      Environment::Partition(4, {{0, 1}, {2, 3}}, {1, 1});
  SamplePhase sample{{0, 2}, {0.5, 0.2}};
  const FeasibleSet got = BlockwiseRank1(
      env, {{0, 1}, {2, 3}}, sample, Stream({{1, 0.6}, {3, 0.1}}));
  EXPECT_EQ(got, (FeasibleSet{1}));
}

TEST(Blockwise, OverlappingBlocksRejected) {
  const Environment env = Environment::Uniform(3, 3);
  EXPECT_THROW(BlockwiseRank1(env, {{0, 1}, {1, 2}}, {}, {}), InputDomainError);
}

TEST(GraphicKp, ForcedCoinGroupsByVertex) {
  // Path 0-1-2; coin 0 groups edges by their lower endpoint.
  const Environment env = Environment::Graphic(3, {{0, 1}, {1, 2}});
  const auto blocks0 = GraphicKpBlocks(env, 0);
  EXPECT_EQ(blocks0[0], (std::vector<int>{0}));
  EXPECT_EQ(blocks0[1], (std::vector<int>{1}));
  const auto blocks1 = GraphicKpBlocks(env, 1);
  EXPECT_EQ(blocks1[1], (std::vector<int>{0}));
  EXPECT_EQ(blocks1[2], (std::vector<int>{1}));
}

TEST(GraphicKp, AcceptedSetsAreForests) {
  RandomStream rng(21);
  for (int t = 0; t < 200; ++t) {
    const Environment env = RandomEnvironment(EnvKind::kGraphic, 12, rng);
    std::vector<double> v(env.size());
    for (double& x : v) x = rng.Uniform01();
    std::vector<Arrival> online;
    for (int e : rng.Permutation(env.size())) online.push_back({e, v[e]});
    EXPECT_TRUE(IsFeasible(env, GraphicKp(env, {}, online, rng)));
  }
}

TEST(TransversalDp, ValueObliviousAssignment) {
  // Left 0 (sample) and 1, 2 (online); rights 0 > 1 by rank.
  const Environment env = Environment::Transversal(BipartiteGraph::FromPairs(
      3, 2, std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {1, 1}, {2, 1}}));
  SamplePhase sample{{0}, {1.0}};
  const TransversalDpResult r = TransversalDp(
      env, sample, Stream({{1, 0.01}, {2, 100.0}}), TransversalDpOptions{});
  // M0 uses right 0; left 1 targets right 1 and takes it; left 2 is blocked.
  EXPECT_EQ(r.accepted, (FeasibleSet{1}));
}

TEST(Gv, SmallRankFallsBackToRank1) {
  const Environment env = Environment::Uniform(8, 3);
  RandomStream rng(5);
  const GvAlgorithm gv;
  SamplePhase sample{{0}, {0.5}};
  auto run = gv.Start(env, sample, rng);
  const RunResult r = RunOnline(*run, Stream({{1, 0.6}, {2, 0.7}}));
  EXPECT_EQ(r.accepted, (FeasibleSet{1}));
}

TEST(Gv, LargeRankUsesOrderStatisticThreshold) {
  const Environment env = Environment::Uniform(40, 12);
  RandomStream rng(5);
  const GvAlgorithm gv;
  EXPECT_EQ(gv.DrawSamplePhaseSize(env, rng), 20);
  SamplePhase sample;
  for (int i = 0; i < 20; ++i) {
    sample.indices.push_back(i);
    sample.values.push_back(i);  // 0..19
  }
  auto run = gv.Start(env, sample, rng);
  // floor(12/4)+1 = 4th largest sample value = 16.
  EXPECT_EQ(run->Price(25), 16.0);
}

TEST(FreeOrder, HandTrace) {
  const Environment env = Environment::Uniform(4, 1);
  // S = {0}, sample value 5; P = {1, 2, 3}.
  const std::vector<char> in_sample = {1, 0, 0, 0};
  const std::vector<double> s = {5, 0, 0, 0};
  const std::vector<double> v = {0, 4, 6, 7};
  const FreeOrderResult r = FreeOrderJsz(env, in_sample, s, v);
  EXPECT_EQ(r.basis, (std::vector<int>{0}));
  EXPECT_EQ(r.accepted, (FeasibleSet{2}));
}

TEST(FreeOrder, EmptySampleAcceptsGreedilyByIndex) {
  const Environment env = Environment::Uniform(3, 2);
  const std::vector<char> in_sample(3, 0);
  const std::vector<double> zero(3, 0.0), v = {1, 2, 3};
  EXPECT_EQ(FreeOrderJsz(env, in_sample, zero, v).accepted, (FeasibleSet{0, 1}));
}

TEST(FreeOrder, AlwaysFeasibleOnRandomMatroids) {
  RandomStream rng(22);
  for (EnvKind kind : {EnvKind::kUniform, EnvKind::kPartition,
                       EnvKind::kLaminar, EnvKind::kGraphic,
                       EnvKind::kTransversal}) {
    for (int t = 0; t < 100; ++t) {
      const Environment env = RandomEnvironment(kind, 10, rng);
      std::vector<double> w(env.size());
      for (double& x : w) x = rng.Uniform01();
      EXPECT_TRUE(IsFeasible(env, FreeOrderJsz(env, w, rng).accepted));
    }
  }
}

TEST(SpanCost, FirstSpanningPrefixWeight) {
  const Environment env = Environment::Uniform(4, 2);
  const std::vector<double> w = {4, 3, 2, 1};
  const std::vector<int> set = {0, 1, 2};
  EXPECT_EQ(SpanCost(env, 3, set, w), 3.0);  // spanned once rank 2 reached
  EXPECT_EQ(SpanCost(env, 1, set, w), 3.0);  // y itself in the prefix
  EXPECT_EQ(SpanCost(env, 3, std::vector<int>{0}, w), 0.0);
}

TEST(Factory, NamesAndErrors) {
  for (const auto& name : SecretaryAlgorithmNames()) {
    if (name == "free-order") {
      EXPECT_THROW(MakeSecretaryAlgorithm(name), InputDomainError);
    } else {
      EXPECT_EQ(MakeSecretaryAlgorithm(name)->name(), name);
    }
  }
  EXPECT_THROW(MakeSecretaryAlgorithm("nope"), InputDomainError);
}

TEST(OnlineRun, OfferRejectsRepeatsAndOutOfRange) {
  const Environment env = Environment::Uniform(2, 1);
  RandomStream rng(1);
  auto run = Rank1Algorithm().Start(env, {}, rng);
  run->Offer(0, 1.0);
  EXPECT_THROW(run->Offer(0, 1.0), InputDomainError);
  EXPECT_THROW(run->Offer(2, 1.0), InputDomainError);
  EXPECT_EQ(run->Price(1), kNeverAccept);  // already full
}

TEST(OnlineRun, TraceJsonlFields) {
  const Environment env = Environment::Uniform(2, 1);
  RandomStream rng(1);
  SamplePhase sample{{0}, {0.5}};
  auto run = Rank1Algorithm().Start(env, sample, rng);
  const RunResult r = RunOnline(*run, Stream({{0, 0.9}, {1, 0.7}}));
  const std::string trace = DecisionTraceJsonl(r.decisions);
  const auto first = nlohmann::json::parse(trace.substr(0, trace.find('\n')));
  EXPECT_EQ(first["decision"], "ignored");
  EXPECT_EQ(first["price"], "+inf");
  const auto second = nlohmann::json::parse(
      trace.substr(trace.find('\n') + 1, trace.rfind('\n') - trace.find('\n') - 1));
  EXPECT_EQ(second["decision"], "accept");
  EXPECT_EQ(second["price"], 0.5);
}

}  // namespace
}  // namespace pinq
