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
#include <map>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "pinq/errors.h"
#include "pinq/random.h"
#include "pinq/walk.h"

namespace pinq {
namespace {

FlipAssignment Labels(std::vector<Label> labels, int k) {
  FlipAssignment f;
  f.labels = std::move(labels);
  f.k = k;
  return f;
}

constexpr Label V = Label::kValue;
constexpr Label S = Label::kSample;

// Walk from the rules, counting samples directly.
std::vector<int> OracleWalk(const std::vector<Label>& labels, int k) {
  const int q = std::max(1, k - static_cast<int>(std::floor(2 * std::sqrt(k) + 1e-12)));
  std::vector<int> pos = {0};
  int samples = 0;
  for (Label l : labels) {
    int step = 0;
    if (l == V) {
      step = -1;
    } else {
      ++samples;
      if (samples < q) step = 1;
      else if (samples == q) step = k - q + 1;
    }
    pos.push_back(pos.back() + step);
  }
  return pos;
}

// Distribution of (max, end) for n independent +-1 steps, by dynamic
// programming over (position, running max).
std::map<std::pair<int, int>, int64_t> MaxEndCounts(int n) {
  std::map<std::pair<int, int>, int64_t> cur = {{{0, 0}, 1}};
  for (int i = 0; i < n; ++i) {
    std::map<std::pair<int, int>, int64_t> next;
    for (const auto& [key, c] : cur) {
      for (int d : {-1, 1}) {
        const int p = key.first + d;
        next[{p, std::max(key.second, p)}] += c;
      }
    }
    cur = std::move(next);
  }
  return cur;
}

TEST(BuildRw, NineSlotExample) {
  const WalkTrace t = BuildRw(Labels({S, S, S, V}, 9));
  EXPECT_EQ(t.positions, (std::vector<int>{0, 1, 2, 9, 8}));
  EXPECT_EQ(t.steps[2], StepKind::kJump);
  EXPECT_EQ(t.jump_width, 7);
}

TEST(BuildRw, AllValuesDescend) {
  const WalkTrace t = BuildRw(Labels({V, V, V}, 4));
  EXPECT_EQ(t.positions, (std::vector<int>{0, -1, -2, -3}));
}

TEST(BuildRw, MatchesRuleOracleAndJumpsOnce) {
  for (int k : {1, 2, 4, 5, 9, 16}) {
    for (int len = 0; len <= 12; ++len) {
      for (uint32_t mask = 0; mask < (1u << len); ++mask) {
        std::vector<Label> labels;
        for (int j = 0; j < len; ++j) labels.push_back(mask >> j & 1 ? S : V);
        const WalkTrace t = BuildRw(Labels(labels, k));
        ASSERT_EQ(t.positions, OracleWalk(labels, k));
        const int jumps = static_cast<int>(
            std::count(t.steps.begin(), t.steps.end(), StepKind::kJump));
        const int samples = std::popcount(mask);
        const int q = std::max(1, k - static_cast<int>(std::floor(2 * std::sqrt(k) + 1e-12)));
        EXPECT_EQ(jumps, samples >= q ? 1 : 0);
      }
    }
  }
}

TEST(Heights, Example) {
  WalkTrace t;
  t.positions = {0, -1, 0, 1, 0};
  const Heights h = HeightsAt(t, 4);
  EXPECT_EQ(h.left, 1);
  EXPECT_EQ(h.right, 0);
}

TEST(Heights, LinearMatchesQuadratic) {
  RandomStream rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Label> labels;
    const int len = 1 + static_cast<int>(rng.UniformInt(30));
    for (int j = 0; j < len; ++j) labels.push_back(rng.Bernoulli(0.5) ? S : V);
    const WalkTrace t = BuildRw(Labels(labels, 1 + static_cast<int>(rng.UniformInt(20))));
    const auto all = AllHeights(t);
    for (int j = 0; j <= len; ++j) {
      int left = 0, right = 0;
      for (int i = 0; i <= j; ++i) left = std::max(left, t.positions[i] - t.positions[j]);
      for (int i = j; i <= len; ++i) right = std::max(right, t.positions[i] - t.positions[j]);
      EXPECT_EQ(all[j].left, left);
      EXPECT_EQ(all[j].right, right);
    }
  }
}

TEST(WalkFacts, NineSlotExampleRejectsLastValue) {
  const WalkFactsReport r = WalkFactsCheck(Labels({S, S, S, V}, 9));
  EXPECT_TRUE(r.ok) << r.message;
  EXPECT_EQ(r.selected.size(), 4u);
}

TEST(WalkFacts, AllSamplesNothingMissing) {
  const WalkFactsReport r = WalkFactsCheck(Labels({S, S, S, S}, 4));
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(std::all_of(r.missing.begin(), r.missing.end(),
                          [](int m) { return m == 0; }));
}

TEST(WalkFacts, ExhaustiveSmall) {
  for (int k : {1, 2, 3, 4, 9}) {
    const WalkSuiteResult r = WalkFactsExhaustive(7, k);
    EXPECT_EQ(r.failures, 0) << "k=" << k << " " << r.first_failure;
    EXPECT_GT(r.assignments, 0);
  }
}

TEST(CheckFlips, RejectsUnbalancedCouples) {
  FlipAssignment f = Labels({V, V}, 1);
  f.partner = {1, 0};
  EXPECT_THROW(BuildRw(f), InputDomainError);
}

TEST(TwoSampleBound, SingleCoupleIsTight) {
  const std::vector<std::pair<int64_t, int64_t>> c = {{5, 2}};
  const TwoSampleBound b = ProphetTwoSampleBound(c, 1);
  EXPECT_TRUE(b.exact);
  EXPECT_TRUE(b.holds);
  EXPECT_TRUE(b.lhs_num == b.rhs_num);
  EXPECT_DOUBLE_EQ(b.lhs, 3.5);
}

TEST(TwoSampleBound, EqualValuesGiveEquality) {
  const std::vector<std::pair<int64_t, int64_t>> c(5, {3, 3});
  const TwoSampleBound b = ProphetTwoSampleBound(c, 2);
  EXPECT_TRUE(b.lhs_num == b.rhs_num);
}

TEST(TwoSampleBound, MatchesDirectEnumeration) {
  RandomStream rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.UniformInt(10));
    const int k = 1 + static_cast<int>(rng.UniformInt(n));
    std::vector<std::pair<int64_t, int64_t>> c(n);
    for (auto& [a, b] : c) {
      a = static_cast<int64_t>(rng.UniformInt(100));
      b = static_cast<int64_t>(rng.UniformInt(100));
    }
    // Oracle: average over orientations of the top-k value sum.
    int64_t total = 0;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<int64_t> vals;
      for (int i = 0; i < n; ++i) vals.push_back(mask >> i & 1 ? c[i].second : c[i].first);
      std::sort(vals.rbegin(), vals.rend());
      total += std::accumulate(vals.begin(), vals.begin() + k, int64_t{0});
    }
    std::vector<int64_t> all;
    for (auto [a, b] : c) {
      all.push_back(a);
      all.push_back(b);
    }
    std::sort(all.rbegin(), all.rend());
    const int64_t top2k = std::accumulate(all.begin(), all.begin() + 2 * k, int64_t{0});
    const TwoSampleBound b = ProphetTwoSampleBound(c, k);
    EXPECT_NEAR(b.lhs, static_cast<double>(total) / (1u << n), 1e-9);
    EXPECT_NEAR(b.rhs, 0.5 * static_cast<double>(top2k), 1e-9);
    EXPECT_TRUE(b.holds);
  }
}

TEST(Reflection, MatchesDynamicProgramming) {
  for (int n = 0; n <= 14; ++n) {
    const auto dist = MaxEndCounts(n);
    for (int m = 0; m <= n + 2; ++m) {
      int64_t a = 0, b = 0;
      for (const auto& [key, c] : dist) {
        if (key.second > 0 && key.first <= -m) a += c;
        if (key.first >= m + 2) b += c;
      }
      const ReflectionCounts r = ReflectionIdentity(n, m);
      EXPECT_EQ(r.hit_and_low, a);
      EXPECT_EQ(r.high_end, b);
      EXPECT_TRUE(r.equal());
    }
  }
}

TEST(Reflection, SpotValues) {
  const ReflectionCounts r = ReflectionIdentity(4, 2);
  EXPECT_EQ(r.hit_and_low, 1);
  EXPECT_EQ(r.high_end, 1);
  EXPECT_EQ(r.total, 16);
  const ReflectionCounts z = ReflectionIdentity(3, 5);
  EXPECT_EQ(z.hit_and_low, 0);
  EXPECT_EQ(z.high_end, 0);
  EXPECT_THROW(ReflectionIdentity(25, 0), InputDomainError);
}

TEST(Decorrelation, TwoStepSpotValue) {
  const DecorrelationResult d = DecorrelationExperiment(WalkSpec{2, {{0, 1}}, {}});
  EXPECT_DOUBLE_EQ(d.correlated.value(), 0.5);
  EXPECT_DOUBLE_EQ(d.decorrelated.value(), 0.75);
  EXPECT_TRUE(d.monotone());
}

TEST(Deletion, MatchesBruteForce) {
  // Steps 1 and 2 are anti-correlated; deleting them makes both flat.
  const int m = 1;
  int64_t kept = 0, deleted = 0;
  for (uint32_t mask = 0; mask < 8; ++mask) {
    const int a = mask & 1 ? 1 : -1, b = mask & 2 ? 1 : -1, c = mask & 4 ? 1 : -1;
    auto flat_and_low = [&](std::vector<int> steps) {
      int pos = 0, top = 0;
      for (int s : steps) {
        pos += s;
        top = std::max(top, pos);
      }
      return top == 0 && pos <= -m;
    };
    kept += flat_and_low({a, b, -b, c}) ? 1 : 0;
    deleted += flat_and_low({a, 0, 0, c}) ? 1 : 0;
  }
  const DeletionResult d = DeletionExperiment(WalkSpec{4, {{1, 2}}, {}}, m);
  EXPECT_NEAR(d.kept.value(), kept / 8.0, 1e-12);
  EXPECT_NEAR(d.deleted.value(), deleted / 8.0, 1e-12);
  EXPECT_TRUE(d.monotone());
}

TEST(Decorrelation, ExpectedHeightMatchesSimulation) {
  // Pair (1, 3) in a 5-step walk, Monte Carlo against the exact value.
  const WalkSpec spec{5, {{1, 3}}, {}};
  RandomStream rng(44);
  double sum = 0.0;
  const int trials = 200000;
  for (int t = 0; t < trials; ++t) {
    int pos = 0, top = 0, paired = 0;
    for (int i = 0; i < 5; ++i) {
      int d = rng.Bernoulli(0.5) ? 1 : -1;
      if (i == 1) paired = d;
      if (i == 3) d = -paired;
      pos += d;
      top = std::max(top, pos);
    }
    sum += top;
  }
  EXPECT_NEAR(sum / trials, ExpectedHeight(spec).value(), 0.01);
}

TEST(RwPrime, FixedJump) {
  std::vector<Label> labels(40, S);
  const WalkTrace t = BuildRwPrime(Labels(labels, 16));
  // J = floor(32 - 16 + 2 * 16^(2/3)) = 28; jump floor(sqrt 16) = 4.
  EXPECT_EQ(t.jump_width, 4);
  EXPECT_EQ(t.positions[28] - t.positions[27], 4);
  EXPECT_EQ(t.positions[27], 27);
  EXPECT_EQ(t.positions[40], t.positions[28]);
}

TEST(MissingScaling, FiniteAndShrinking) {
  RandomStream rng(45);
  const MissingScaling a = EstimateMissingCount(16, 64, 16, 2000, rng);
  const MissingScaling b = EstimateMissingCount(64, 256, 64, 500, rng);
  EXPECT_TRUE(std::isfinite(a.fitted_constant));
  EXPECT_TRUE(std::isfinite(b.fitted_constant));
  EXPECT_GE(a.mean_missing, 0.0);
}

}  // namespace
}  // namespace pinq
