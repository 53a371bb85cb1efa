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
#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "pinq/env.h"
#include "pinq/env_io.h"
#include "pinq/errors.h"
#include "pinq/random.h"
#include "pinq/verify.h"

namespace pinq {
namespace {

// Brute force over all subsets.
struct BruteOpt {
  double weight = 0.0;
  int rank = 0;
};

BruteOpt BruteForce(const Environment& env, const std::vector<double>& w,
                    const std::vector<int>* restrict_to = nullptr) {
  BruteOpt out;
  const int n = env.size();
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    FeasibleSet set;
    double sum = 0.0;
    bool allowed = true;
    for (int e = 0; e < n; ++e) {
      if (!(mask >> e & 1)) continue;
      set.push_back(e);
      sum += w.empty() ? 0.0 : w[e];
      if (restrict_to != nullptr &&
          std::find(restrict_to->begin(), restrict_to->end(), e) ==
              restrict_to->end()) {
        allowed = false;
      }
    }
    if (!allowed || !IsFeasible(env, set)) continue;
    out.weight = std::max(out.weight, sum);
    out.rank = std::max(out.rank, static_cast<int>(set.size()));
  }
  return out;
}

// Maximum-weight matching by enumeration; `forced` edge must be used when
// >= 0, `banned` edge never.
double BruteMatching(const BipartiteGraph& g, const std::vector<double>& w,
                     int forced, int banned) {
  double best = -1.0;
  const int m = g.num_edges();
  for (uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (forced >= 0 && !(mask >> forced & 1)) continue;
    if (banned >= 0 && (mask >> banned & 1)) continue;
    std::vector<char> lu(g.num_left(), 0), ru(g.num_right(), 0);
    double sum = 0.0;
    bool ok = true;
    for (int e = 0; e < m && ok; ++e) {
      if (!(mask >> e & 1)) continue;
      const auto& ed = g.edge(e);
      ok = !lu[ed.left] && !ru[ed.right];
      lu[ed.left] = ru[ed.right] = 1;
      sum += w[e];
    }
    if (ok) best = std::max(best, sum);
  }
  return best;
}

TEST(Uniform, FeasibleUpToK) {
  const Environment env = Environment::Uniform(5, 2);
  EXPECT_TRUE(IsFeasible(env, std::vector<int>{}));
  EXPECT_TRUE(IsFeasible(env, std::vector<int>{0, 4}));
  EXPECT_FALSE(IsFeasible(env, std::vector<int>{0, 1, 2}));
  EXPECT_EQ(Rank(env, std::vector<int>{0, 1, 2, 3}), 2);
}

TEST(Uniform, RejectsDuplicatesAndOutOfRange) {
  const Environment env = Environment::Uniform(3, 2);
  EXPECT_THROW(IsFeasible(env, std::vector<int>{1, 1}), InputDomainError);
  EXPECT_THROW(IsFeasible(env, std::vector<int>{3}), InputDomainError);
}

TEST(Partition, CapacityPerBlock) {
  const Environment env =
      Environment::Partition(4, {{0, 1}, {2, 3}}, {1, 2});
  EXPECT_TRUE(IsFeasible(env, std::vector<int>{0, 2, 3}));
  EXPECT_FALSE(IsFeasible(env, std::vector<int>{0, 1}));
  EXPECT_EQ(env.partition_block_of(3), 1);
  EXPECT_THROW(Environment::Partition(3, {{0, 1}}, {1}), InputDomainError);
  EXPECT_THROW(Environment::Partition(2, {{0}, {0, 1}}, {1, 1}),
               InputDomainError);
}

TEST(Laminar, NestedCapacities) {
  const Environment env =
      Environment::Laminar(4, {{0, 1, 2}, {0, 1}}, {2, 1});
  EXPECT_TRUE(IsFeasible(env, std::vector<int>{0, 2, 3}));
  EXPECT_FALSE(IsFeasible(env, std::vector<int>{0, 1}));
  EXPECT_EQ(Rank(env, std::vector<int>{0, 1, 2, 3}), 3);
  EXPECT_THROW(Environment::Laminar(3, {{0, 1}, {1, 2}}, {1, 1}),
               InputDomainError);
}

TEST(Graphic, CyclesAreDependent) {
  const Environment env =
      Environment::Graphic(3, {{0, 1}, {1, 2}, {0, 2}, {1, 1}});
  EXPECT_TRUE(IsFeasible(env, std::vector<int>{0, 1}));
  EXPECT_FALSE(IsFeasible(env, std::vector<int>{0, 1, 2}));
  EXPECT_FALSE(IsFeasible(env, std::vector<int>{3}));  // self-loop
  const RankSpan rs = RankAndSpan(env, std::vector<int>{0, 1}, 2);
  EXPECT_EQ(rs.rank, 2);
  EXPECT_TRUE(rs.spans);
}

TEST(Transversal, MatchableLeftSets) {
  // Left 0 and 1 share right 0; left 2 has right 1.
  const Environment env = Environment::Transversal(
      BipartiteGraph::FromPairs(3, 2, std::vector<std::pair<int, int>>{
                                          {0, 0}, {1, 0}, {2, 1}}));
  EXPECT_TRUE(IsFeasible(env, std::vector<int>{0, 2}));
  EXPECT_FALSE(IsFeasible(env, std::vector<int>{0, 1}));
}

TEST(Matching, SharedEndpointInfeasible) {
  const Environment env = Environment::BipartiteMatching(
      BipartiteGraph::FromPairs(2, 2, std::vector<std::pair<int, int>>{
                                          {0, 0}, {0, 1}, {1, 1}}));
  EXPECT_TRUE(IsFeasible(env, std::vector<int>{0, 2}));
  EXPECT_FALSE(IsFeasible(env, std::vector<int>{0, 1}));
  EXPECT_THROW(Rank(env, std::vector<int>{0}), UnsupportedOperationError);
}

TEST(OfflineOpt, ZeroWeightsNeverSelected) {
  const Environment env = Environment::Uniform(3, 3);
  const OptResult r = OfflineOpt(env, std::vector<double>{0.0, 2.0, 0.0});
  EXPECT_EQ(r.set, (FeasibleSet{1}));
  EXPECT_DOUBLE_EQ(r.weight, 2.0);
}

TEST(OfflineOpt, LexicographicallySmallestAmongTies) {
  const Environment env = Environment::Uniform(3, 1);
  EXPECT_EQ(OfflineOpt(env, std::vector<double>{1, 1, 1}).set, (FeasibleSet{0}));
}

TEST(OfflineOpt, MatchesBruteForceOnRandomInstances) {
  RandomStream rng(11);
  for (EnvKind kind :
       {EnvKind::kUniform, EnvKind::kPartition, EnvKind::kLaminar,
        EnvKind::kGraphic, EnvKind::kTransversal, EnvKind::kBipartiteMatching}) {
    for (int trial = 0; trial < 60; ++trial) {
      const Environment env =
          RandomEnvironment(kind, 1 + static_cast<int>(rng.UniformInt(9)), rng);
      std::vector<double> w(env.size());
      for (double& x : w) x = rng.Uniform01();
      const OptResult r = OfflineOpt(env, w);
      EXPECT_TRUE(IsFeasible(env, r.set));
      EXPECT_NEAR(r.weight, BruteForce(env, w).weight, 1e-9)
          << EnvKindName(kind);
    }
  }
}

TEST(Rank, MatchesBruteForceOnRandomMatroids) {
  RandomStream rng(12);
  for (EnvKind kind : {EnvKind::kUniform, EnvKind::kPartition,
                       EnvKind::kLaminar, EnvKind::kGraphic,
                       EnvKind::kTransversal}) {
    for (int trial = 0; trial < 40; ++trial) {
      const Environment env =
          RandomEnvironment(kind, 1 + static_cast<int>(rng.UniformInt(8)), rng);
      std::vector<int> subset;
      for (int e = 0; e < env.size(); ++e) {
        if (rng.Bernoulli(0.6)) subset.push_back(e);
      }
      EXPECT_EQ(Rank(env, subset), BruteForce(env, {}, &subset).rank);
    }
  }
}

TEST(IndependenceState, TryAddKeepsFeasibility) {
  RandomStream rng(13);
  const Environment env = RandomEnvironment(EnvKind::kGraphic, 9, rng);
  IndependenceState st(env);
  for (int e : rng.Permutation(env.size())) {
    const bool could = st.CanAdd(e);
    EXPECT_EQ(st.TryAdd(e), could);
    EXPECT_TRUE(IsFeasible(env, st.SortedMembers()));
  }
}

TEST(EdgeIndex, FollowsIncidenceOrdinals) {
  // Degree bound 2; edge (l=1, r=0) is second at left 1 and second at right 0.
  const BipartiteGraph g = BipartiteGraph::FromPairs(
      2, 2, std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {1, 1}});
  EXPECT_EQ(g.degree_bound(), 2);
  EXPECT_EQ(EdgeIndex(g, 0), 1);
  EXPECT_EQ(EdgeIndex(g, 1), 1 + 0 + 2 * 1);
  EXPECT_EQ(EdgeIndex(g, 2), 1 + 1 + 2 * 0);
}

TEST(EdgeThreshold, MatchesBisectionOracle) {
  RandomStream rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const Environment env = RandomEnvironment(EnvKind::kBipartiteMatching, 7, rng);
    const BipartiteGraph& g = env.bipartite_graph();
    std::vector<double> w(g.num_edges());
    for (double& x : w) x = rng.Uniform01();
    const int e = static_cast<int>(rng.UniformInt(g.num_edges()));
    // Smallest x at which the best matching through e beats the best without.
    const double without = BruteMatching(g, w, -1, e);
    double lo = 0.0, hi = 10.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      std::vector<double> wx = w;
      wx[e] = mid;
      (BruteMatching(g, wx, e, -1) > without ? hi : lo) = mid;
    }
    EXPECT_NEAR(EdgeThreshold(g, e, w), hi, 1e-9);
  }
}

TEST(ValidateWeights, RejectsBadVectors) {
  EXPECT_NO_THROW(ValidateWeights(std::vector<double>{0.0, 1.0}, 2));
  EXPECT_THROW(ValidateWeights(std::vector<double>{1.0}, 2), InputDomainError);
  EXPECT_THROW(ValidateWeights(std::vector<double>{-1.0, 1.0}, 2),
               InputDomainError);
  EXPECT_THROW(
      ValidateWeights(
          std::vector<double>{std::numeric_limits<double>::quiet_NaN(), 1.0}, 2),
      InputDomainError);
}

TEST(EnvironmentJson, CanonicalRoundTrip) {
  RandomStream rng(15);
  for (EnvKind kind :
       {EnvKind::kUniform, EnvKind::kPartition, EnvKind::kLaminar,
        EnvKind::kGraphic, EnvKind::kTransversal, EnvKind::kBipartiteMatching}) {
    const Environment env = RandomEnvironment(kind, 6, rng);
    const std::string text = DumpEnvironment(env);
    const Environment back = ParseEnvironment(text);
    EXPECT_TRUE(back == env);
    EXPECT_EQ(DumpEnvironment(back), text);
  }
}

TEST(EnvironmentJson, SizeMismatchRejected) {
  EXPECT_EQ(ParseEnvironment(R"({"kind":"uniform","n":3,"k":1})").size(), 3);
  EXPECT_THROW(ParseEnvironment(
                   R"({"kind":"graphic","n":5,"vertices":2,"edges":[[0,1]]})"),
               InputDomainError);
  EXPECT_THROW(ParseEnvironment("{not json"), InputDomainError);
}

TEST(EnvironmentJson, EdgeKindsDeriveSizeAndOrdinals) {
  EXPECT_EQ(ParseEnvironment(R"({"kind":"graphic","vertices":3,"edges":[[0,1],[1,2]]})")
                .size(),
            2);
  const Environment m = ParseEnvironment(
      R"({"kind":"bipartite-matching","left":2,"right":1,)"
      R"("edges":[{"left":0,"right":0},{"left":1,"right":0}]})");
  EXPECT_EQ(m.size(), 2);
  EXPECT_EQ(m.bipartite_graph().degree_bound(), 2);
  EXPECT_EQ(m.bipartite_graph().edge(1).right_ordinal, 1);
}

}  // namespace
}  // namespace pinq
