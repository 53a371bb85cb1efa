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

// Verification batteries: exact enumerations, randomized property checks and
// Monte-Carlo ratio tables, plus the random instance generators they share
// with the tests.

#ifndef PINQ_VERIFY_H_
#define PINQ_VERIFY_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pinq/dist.h"
#include "pinq/env.h"
#include "pinq/random.h"

namespace pinq {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed() const;
};

// walk-exact, worst-order, secretary-exhaustive, mech-ir, invariants, ratios.
std::vector<std::string> VerifySuiteNames();
// ConfigError for unknown names. `scale` in (0, 1] shrinks trial counts of
// the randomized checks (exhaustive checks are never shrunk).
SuiteResult RunVerifySuite(std::string_view name, uint64_t seed = 1,
                           double scale = 1.0);

// Random instance of the given kind with n elements (n edges for graphic
// and matching kinds). Uniform rank, partition blocks, laminar families and
// graphs are drawn from `rng`.
Environment RandomEnvironment(EnvKind kind, int n, RandomStream& rng);

// Prophet algorithm names that accept environments of this kind.
std::vector<std::string> CompatibleAlgorithms(EnvKind kind);

struct WorstOrderReport {
  int instances = 0;
  long long orders = 0;
  int failures = 0;
  std::string first_failure;
};

// Random values and thresholds (sorted U(0,1) samples, random k) with
// n = 1 + i % max_n for instance i; rehearsal reward under every order
// compared with the increasing order.
WorstOrderReport WorstOrderCheck(int instances, int max_n, RandomStream& rng);

struct ElementFrequency {
  int element = 0;
  double frequency = 0.0;
  double stderr_frequency = 0.0;
};

// Acceptance frequency of each element of the max-weight basis under the
// free-order rule, over `trials` independent sample/online coin splits.
std::vector<ElementFrequency> FreeOrderBasisFrequencies(
    const Environment& env, std::span<const double> w, int trials,
    RandomStream& rng);

// Same, exact over all 2^n splits (n <= 20).
std::vector<ElementFrequency> FreeOrderBasisFrequenciesExact(
    const Environment& env, std::span<const double> w);

struct RatioRow {
  std::string env_class;
  std::string algorithm;
  double claimed = 0.0;
  double empirical = 0.0;
  double stderr_ratio = 0.0;
  // Approximate bindings are reported only.
  bool asserted = true;
  bool passed = true;
};

// One Monte-Carlo row per environment class. The instances are fixed,
// moderately sized, with iid U(0,1) values and random arrival order.
std::vector<RatioRow> RatioTable(int trials, uint64_t seed);

}  // namespace pinq

#endif  // PINQ_VERIFY_H_
