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

// The correlated random walk behind the rehearsal algorithm, and exact
// enumeration oracles for the identities about it.
//
// Setting: n couples (y_i, y_i') are drawn; a fair coin per couple decides
// which member is the value and which is the sample. Y_1 > Y_2 > ... > Y_2n is
// the merged list. The walk reads the labels of Y_1, Y_2, ...: a value steps
// down by one; a sample that would set one rehearsal threshold steps up by
// one; the sample setting the repeated threshold jumps by the number of slots
// it covers; later samples are flat.

#ifndef PINQ_WALK_H_
#define PINQ_WALK_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pinq/random.h"

namespace pinq {

enum class Label : char { kValue, kSample };

// Labels of Y_1, ..., Y_2n plus the couple structure.
struct FlipAssignment {
  std::vector<Label> labels;
  // partner[j] is the position of the other member of j's couple, or -1 when
  // the couple structure is unknown.
  std::vector<int> partner;
  int k = 1;
};

// Couples partnered by `partner`, oriented by bit i of `mask` for the couple
// whose smaller position is the i-th smallest (bit set: that member is the
// sample).
FlipAssignment OrientCouples(std::span<const int> partner, uint64_t mask,
                             int k);

enum class StepKind : char { kDown, kUp, kJump, kFlat };

struct WalkTrace {
  std::vector<int> positions;  // RW(0..2n), RW(0) = 0
  std::vector<StepKind> steps;  // steps[j-1] moves RW(j-1) to RW(j)
  int jump_width = 0;
};

// The number of samples that set their own threshold is
// q = max(1, k - floor(2 sqrt(k))); the q-th sample covers the remaining
// k - q + 1 slots.
WalkTrace BuildRw(const FlipAssignment& flips);

struct Heights {
  int left = 0;   // max_{i <= j} RW(i) - RW(j)
  int right = 0;  // max_{i >= j} RW(i) - RW(j)
};

Heights HeightsAt(const WalkTrace& trace, int j);
// Heights at every position 0..2n in linear time.
std::vector<Heights> AllHeights(const WalkTrace& trace);

struct WalkFactsReport {
  bool ok = true;
  // Position (1-based) of the first disagreement, or 0.
  int first_failure = 0;
  std::string message;
  // Direct simulation results.
  std::vector<char> selected;  // per position 1..2n (index j-1)
  std::vector<int> missing;    // per prefix length 0..2n
};

// Runs rehearsal on values revealed in increasing order (thresholds from the
// samples) and compares with the walk: position j is selected iff it is a
// value with right height > 0, and the number of unselected values among
// Y_1..Y_i equals max(left height - right height, 0) at i.
WalkFactsReport WalkFactsCheck(const FlipAssignment& flips);

struct WalkSuiteResult {
  long long assignments = 0;
  long long failures = 0;
  std::string first_failure;
};

// Every label sequence with n values and n samples, for 1 <= n <= max_couples.
WalkSuiteResult WalkFactsExhaustive(int max_couples, int k);

struct TwoSampleBound {
  // Exact mode: lhs = lhs_num / denom and rhs = rhs_num / denom.
  bool exact = true;
  __int128 lhs_num = 0;
  __int128 rhs_num = 0;
  __int128 denom = 1;
  double lhs = 0.0;
  double rhs = 0.0;
  // Statistical mode only: standard error of lhs.
  double lhs_stderr = 0.0;
  // Exact: lhs <= rhs. Statistical: lhs <= rhs + 3 * lhs_stderr.
  bool holds = false;
  // Probability that each sorted position Y_j is taken by the prophet.
  std::vector<double> p;
};

// couples[i] = (y_i, y_i'). The prophet takes the k largest values. Ties in
// Y are broken by couple index, then member. Exact over all 2^n
// orientations for n <= 20; otherwise `trials` random orientations.
TwoSampleBound ProphetTwoSampleBound(
    std::span<const std::pair<int64_t, int64_t>> couples, int k,
    RandomStream* rng = nullptr, int trials = 100000);

struct ReflectionCounts {
  int64_t hit_and_low = 0;  // #{H > 0 and end <= -m}
  int64_t high_end = 0;     // #{end >= m + 2}
  int64_t total = 0;        // 2^n
  bool equal() const { return hit_and_low == high_end; }
};

// All 2^n walks with independent +-1 steps; H is the maximum over positions
// 0..n. InputDomainError for n > 24 or m < 0.
ReflectionCounts ReflectionIdentity(int n, int m);

// Walk with n steps: steps in `flat` never move, each pair (x, y) has step y
// equal to minus step x, every other step is an independent fair +-1.
struct WalkSpec {
  int n = 0;
  std::vector<std::pair<int, int>> pairs;  // 0-based step indices, x < y
  std::vector<int> flat;
};

struct ExactExpectation {
  int64_t numerator = 0;
  int64_t denominator = 1;
  double value() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
};

bool operator<=(const ExactExpectation& a, const ExactExpectation& b);

// E[max over positions of RW].
ExactExpectation ExpectedHeight(const WalkSpec& spec);
// Pr[max over positions of RW == 0 and RW(n) <= -m].
ExactExpectation FlatAndLowProbability(const WalkSpec& spec, int m);

struct DecorrelationResult {
  ExactExpectation correlated;
  ExactExpectation decorrelated;
  bool monotone() const { return correlated <= decorrelated; }
};

// Replaces pair `pair_index` by two independent steps.
DecorrelationResult DecorrelationExperiment(const WalkSpec& spec,
                                            int pair_index = 0);

struct DeletionResult {
  ExactExpectation kept;
  ExactExpectation deleted;
  bool monotone() const { return kept <= deleted; }
};

// Makes both steps of the pair with the smallest second index flat and
// compares Pr[H == 0 and RW(n) <= -m].
DeletionResult DeletionExperiment(const WalkSpec& spec, int m);

// Fixed-jump walk: +-1 before J = floor(2k - 4 sqrt(k) + 2 k^(2/3)), a jump
// of floor(sqrt(k)) at step J, flat afterwards.
WalkTrace BuildRwPrime(const FlipAssignment& flips);

struct MissingScaling {
  int k = 0;
  int position = 0;
  double mean_missing = 0.0;
  double stderr_missing = 0.0;
  // mean_missing / (position / sqrt(k)).
  double fitted_constant = 0.0;
};

// Monte-Carlo estimate of E[max(H^L_i - H^R_i, 0)] at i = position, with
// 2 * couples iid uniform draws per trial.
MissingScaling EstimateMissingCount(int k, int couples, int position,
                                    int trials, RandomStream& rng);

}  // namespace pinq

#endif  // PINQ_WALK_H_
