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

#include "pinq/walk.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pinq/env.h"
#include "pinq/errors.h"
#include "pinq/prophet.h"

namespace pinq {
namespace {

void CheckFlips(const FlipAssignment& flips) {
  if (flips.k < 1) throw InputDomainError("walk requires k >= 1");
  const int len = static_cast<int>(flips.labels.size());
  if (flips.partner.empty()) return;
  if (static_cast<int>(flips.partner.size()) != len) {
    throw InputDomainError("partner map must cover every position");
  }
  for (int j = 0; j < len; ++j) {
    const int p = flips.partner[j];
    if (p < 0 || p >= len || p == j || flips.partner[p] != j) {
      throw InputDomainError("partner map is not a perfect pairing");
    }
    if (flips.labels[j] == flips.labels[p]) {
      throw InputDomainError("a couple must hold one value and one sample");
    }
  }
}

// Enumerates 2^free assignments of the free steps of a WalkSpec and calls
// visit(steps) with the full step vector.
template <typename Visit>
void ForEachWalk(const WalkSpec& spec, Visit visit) {
  const int n = spec.n;
  if (n < 0 || n > 24) throw InputDomainError("walk spec needs 0 <= n <= 24");
  std::vector<int> role(n, 0);  // 0 free, 1 flat, 2 pair head, 3 pair tail
  std::vector<int> mate(n, -1);
  for (int f : spec.flat) {
    if (f < 0 || f >= n || role[f] != 0) {
      throw InputDomainError("invalid flat step");
    }
    role[f] = 1;
  }
  for (const auto& [x, y] : spec.pairs) {
    if (x < 0 || y >= n || !(x < y) || role[x] != 0 || role[y] != 0) {
      throw InputDomainError("pairs must be disjoint steps x < y");
    }
    role[x] = 2;
    role[y] = 3;
    mate[y] = x;
  }
  std::vector<int> free_steps;
  for (int i = 0; i < n; ++i) {
    if (role[i] == 0 || role[i] == 2) free_steps.push_back(i);
  }
  const uint64_t count = uint64_t{1} << free_steps.size();
  std::vector<int> steps(n, 0);
  for (uint64_t mask = 0; mask < count; ++mask) {
    for (size_t b = 0; b < free_steps.size(); ++b) {
      steps[free_steps[b]] = (mask >> b) & 1 ? 1 : -1;
    }
    for (int i = 0; i < n; ++i) {
      if (role[i] == 3) steps[i] = -steps[mate[i]];
    }
    visit(steps);
  }
}

}  // namespace

FlipAssignment OrientCouples(std::span<const int> partner, uint64_t mask,
                             int k) {
  FlipAssignment f;
  f.k = k;
  f.partner.assign(partner.begin(), partner.end());
  f.labels.assign(partner.size(), Label::kValue);
  int couple = 0;
  for (int j = 0; j < static_cast<int>(partner.size()); ++j) {
    const int p = partner[j];
    if (p < 0 || p >= static_cast<int>(partner.size())) {
      throw InputDomainError("partner map is not a perfect pairing");
    }
    if (p < j) continue;
    const bool first_is_sample = (mask >> couple) & 1;
    f.labels[j] = first_is_sample ? Label::kSample : Label::kValue;
    f.labels[p] = first_is_sample ? Label::kValue : Label::kSample;
    ++couple;
  }
  CheckFlips(f);
  return f;
}

WalkTrace BuildRw(const FlipAssignment& flips) {
  CheckFlips(flips);
  const int k = flips.k;
  const int q = RehearsalDistinctSlots(k);
  WalkTrace t;
  t.jump_width = k - q + 1;
  t.positions.push_back(0);
  int prior_samples = 0;
  for (Label label : flips.labels) {
    int step = 0;
    StepKind kind;
    if (label == Label::kValue) {
      step = -1;
      kind = StepKind::kDown;
    } else {
      if (prior_samples <= q - 2) {
        step = 1;
        kind = StepKind::kUp;
      } else if (prior_samples == q - 1) {
        step = t.jump_width;
        kind = StepKind::kJump;
      } else {
        kind = StepKind::kFlat;
      }
      ++prior_samples;
    }
    t.steps.push_back(kind);
    t.positions.push_back(t.positions.back() + step);
  }
  return t;
}

Heights HeightsAt(const WalkTrace& trace, int j) {
  const int len = static_cast<int>(trace.positions.size());
  if (j < 0 || j >= len) throw InputDomainError("height index out of range");
  Heights h;
  for (int i = 0; i <= j; ++i) {
    h.left = std::max(h.left, trace.positions[i] - trace.positions[j]);
  }
  for (int i = j; i < len; ++i) {
    h.right = std::max(h.right, trace.positions[i] - trace.positions[j]);
  }
  return h;
}

std::vector<Heights> AllHeights(const WalkTrace& trace) {
  const auto& rw = trace.positions;
  const int len = static_cast<int>(rw.size());
  std::vector<Heights> out(len);
  int best = rw.empty() ? 0 : rw[0];
  for (int j = 0; j < len; ++j) {
    best = std::max(best, rw[j]);
    out[j].left = best - rw[j];
  }
  best = rw.empty() ? 0 : rw[len - 1];
  for (int j = len - 1; j >= 0; --j) {
    best = std::max(best, rw[j]);
    out[j].right = best - rw[j];
  }
  return out;
}

WalkFactsReport WalkFactsCheck(const FlipAssignment& flips) {
  const WalkTrace trace = BuildRw(flips);
  const std::vector<Heights> h = AllHeights(trace);
  const int len = static_cast<int>(flips.labels.size());
  const int k = flips.k;
  const int q = RehearsalDistinctSlots(k);

  // Position p (0-based) carries Y = len - p, so values and samples are
  // distinct and decrease along the list.
  std::vector<double> samples;
  for (int p = 0; p < len; ++p) {
    if (flips.labels[p] == Label::kSample) samples.push_back(len - p);
  }
  // Slots whose threshold would need a missing sample can never be filled,
  // so they are left out.
  std::vector<double> thresholds;
  const int num_samples = static_cast<int>(samples.size());
  if (num_samples >= q) {
    for (int j = 0; j < k; ++j) thresholds.push_back(samples[std::min(j, q - 1)]);
  } else {
    thresholds = samples;
  }

  const Environment env =
      Environment::Uniform(len, static_cast<int>(thresholds.size()));
  RehearsalOnlineRun run(env, thresholds);
  WalkFactsReport report;
  report.selected.assign(len, 0);
  for (int p = len - 1; p >= 0; --p) {
    if (flips.labels[p] != Label::kValue) continue;
    if (run.Offer(p, len - p).accepted) report.selected[p] = 1;
  }

  report.missing.assign(len + 1, 0);
  for (int i = 1; i <= len; ++i) {
    const bool unselected_value =
        flips.labels[i - 1] == Label::kValue && !report.selected[i - 1];
    report.missing[i] = report.missing[i - 1] + (unselected_value ? 1 : 0);
  }

  for (int j = 1; j <= len && report.ok; ++j) {
    const bool predicted =
        flips.labels[j - 1] == Label::kValue && h[j].right > 0;
    if (predicted != (report.selected[j - 1] != 0)) {
      report.ok = false;
      report.first_failure = j;
      report.message = "selection of Y_" + std::to_string(j) +
                       " disagrees with the right height";
    }
  }
  for (int i = 0; i <= len && report.ok; ++i) {
    const int predicted = std::max(h[i].left - h[i].right, 0);
    if (predicted != report.missing[i]) {
      report.ok = false;
      report.first_failure = std::max(i, 1);
      report.message = "missing count at prefix " + std::to_string(i) +
                       " is " + std::to_string(report.missing[i]) +
                       ", heights give " + std::to_string(predicted);
    }
  }
  return report;
}

WalkSuiteResult WalkFactsExhaustive(int max_couples, int k) {
  if (max_couples < 1 || max_couples > 15) {
    throw InputDomainError("exhaustive walk suite supports 1..15 couples");
  }
  WalkSuiteResult out;
  for (int n = 1; n <= max_couples; ++n) {
    const int len = 2 * n;
    FlipAssignment flips;
    flips.k = k;
    flips.labels.resize(len);
    // Gosper's hack over all len-bit masks with n set bits.
    uint64_t mask = (uint64_t{1} << n) - 1;
    const uint64_t limit = uint64_t{1} << len;
    while (mask < limit) {
      for (int p = 0; p < len; ++p) {
        flips.labels[p] = (mask >> p) & 1 ? Label::kSample : Label::kValue;
      }
      const WalkFactsReport r = WalkFactsCheck(flips);
      ++out.assignments;
      if (!r.ok) {
        if (out.failures == 0) {
          std::string labels;
          for (Label l : flips.labels) labels += l == Label::kValue ? 'v' : 's';
          out.first_failure = "k=" + std::to_string(k) + " labels=" + labels +
                              ": " + r.message;
        }
        ++out.failures;
      }
      const uint64_t c = mask & (~mask + 1);
      const uint64_t r2 = mask + c;
      mask = (((r2 ^ mask) >> 2) / c) | r2;
    }
  }
  return out;
}

TwoSampleBound ProphetTwoSampleBound(
    std::span<const std::pair<int64_t, int64_t>> couples, int k,
    RandomStream* rng, int trials) {
  const int n = static_cast<int>(couples.size());
  if (n < 1 || k < 1) throw InputDomainError("need n >= 1 couples and k >= 1");
  const int len = 2 * n;
  // order[pos] = (couple, member) of the pos-th largest draw.
  std::vector<std::pair<int, int>> order;
  for (int i = 0; i < n; ++i) {
    order.emplace_back(i, 0);
    order.emplace_back(i, 1);
  }
  auto value_of = [&](const std::pair<int, int>& cm) {
    return cm.second == 0 ? couples[cm.first].first : couples[cm.first].second;
  };
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return value_of(a) > value_of(b);
  });
  std::vector<int64_t> y(len);
  for (int p = 0; p < len; ++p) y[p] = value_of(order[p]);

  TwoSampleBound out;
  out.p.assign(len, 0.0);
  // Member 0 of couple i is the value iff bit i of the orientation is clear.
  auto take_top = [&](uint64_t mask, std::vector<int64_t>& counts) {
    int taken = 0;
    for (int p = 0; p < len && taken < k; ++p) {
      const auto [c, member] = order[p];
      const int value_member = (mask >> c) & 1 ? 1 : 0;
      if (member == value_member) {
        ++counts[p];
        ++taken;
      }
    }
  };
  __int128 top_sum = 0;
  for (int p = 0; p < std::min(2 * k, len); ++p) top_sum += y[p];

  std::vector<int64_t> counts(len, 0);
  if (n <= 20) {
    const uint64_t total = uint64_t{1} << n;
    for (uint64_t mask = 0; mask < total; ++mask) take_top(mask, counts);
    out.exact = true;
    out.denom = static_cast<__int128>(total);
    for (int p = 0; p < len; ++p) {
      out.lhs_num += static_cast<__int128>(counts[p]) * y[p];
    }
    out.rhs_num = top_sum * static_cast<__int128>(total / 2);
    if (n == 0) out.rhs_num = 0;
    out.lhs = static_cast<double>(out.lhs_num) / static_cast<double>(out.denom);
    out.rhs = static_cast<double>(out.rhs_num) / static_cast<double>(out.denom);
    out.holds = out.lhs_num <= out.rhs_num;
    for (int p = 0; p < len; ++p) {
      out.p[p] = static_cast<double>(counts[p]) / static_cast<double>(total);
    }
    return out;
  }

  if (rng == nullptr) {
    throw InputDomainError("statistical mode needs a random stream");
  }
  out.exact = false;
  double sum = 0, sum_sq = 0;
  std::vector<int64_t> trial_counts(len);
  for (int t = 0; t < trials; ++t) {
    std::fill(trial_counts.begin(), trial_counts.end(), 0);
    uint64_t mask = 0;
    for (int i = 0; i < n; ++i) mask |= (rng->UniformInt(2) << i);
    take_top(mask, trial_counts);
    double reward = 0;
    for (int p = 0; p < len; ++p) {
      reward += static_cast<double>(trial_counts[p] * y[p]);
      counts[p] += trial_counts[p];
    }
    sum += reward;
    sum_sq += reward * reward;
  }
  out.lhs = sum / trials;
  const double var =
      trials > 1 ? (sum_sq - sum * sum / trials) / (trials - 1) : 0.0;
  out.lhs_stderr = std::sqrt(std::max(var, 0.0) / trials);
  out.rhs = 0.5 * static_cast<double>(top_sum);
  out.holds = out.lhs <= out.rhs + 3.0 * out.lhs_stderr;
  for (int p = 0; p < len; ++p) {
    out.p[p] = static_cast<double>(counts[p]) / trials;
  }
  return out;
}

ReflectionCounts ReflectionIdentity(int n, int m) {
  if (n < 0 || n > 24) throw InputDomainError("reflection needs 0 <= n <= 24");
  if (m < 0) throw InputDomainError("reflection needs m >= 0");
  ReflectionCounts out;
  out.total = int64_t{1} << n;
  for (int64_t mask = 0; mask < out.total; ++mask) {
    int pos = 0, high = 0;
    for (int i = 0; i < n; ++i) {
      pos += (mask >> i) & 1 ? 1 : -1;
      high = std::max(high, pos);
    }
    if (high > 0 && pos <= -m) ++out.hit_and_low;
    if (pos >= m + 2) ++out.high_end;
  }
  return out;
}

bool operator<=(const ExactExpectation& a, const ExactExpectation& b) {
  return static_cast<__int128>(a.numerator) * b.denominator <=
         static_cast<__int128>(b.numerator) * a.denominator;
}

ExactExpectation ExpectedHeight(const WalkSpec& spec) {
  ExactExpectation out;
  out.denominator = 0;
  ForEachWalk(spec, [&](const std::vector<int>& steps) {
    int pos = 0, high = 0;
    for (int s : steps) {
      pos += s;
      high = std::max(high, pos);
    }
    out.numerator += high;
    ++out.denominator;
  });
  return out;
}

ExactExpectation FlatAndLowProbability(const WalkSpec& spec, int m) {
  ExactExpectation out;
  out.denominator = 0;
  ForEachWalk(spec, [&](const std::vector<int>& steps) {
    int pos = 0, high = 0;
    for (int s : steps) {
      pos += s;
      high = std::max(high, pos);
    }
    if (high == 0 && pos <= -m) ++out.numerator;
    ++out.denominator;
  });
  return out;
}

DecorrelationResult DecorrelationExperiment(const WalkSpec& spec,
                                            int pair_index) {
  if (pair_index < 0 || pair_index >= static_cast<int>(spec.pairs.size())) {
    throw InputDomainError("no such correlated pair");
  }
  WalkSpec independent = spec;
  independent.pairs.erase(independent.pairs.begin() + pair_index);
  return {ExpectedHeight(spec), ExpectedHeight(independent)};
}

DeletionResult DeletionExperiment(const WalkSpec& spec, int m) {
  if (spec.pairs.empty()) throw InputDomainError("no correlated pair");
  const auto earliest = std::min_element(
      spec.pairs.begin(), spec.pairs.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  WalkSpec removed = spec;
  const auto [x, y] = *earliest;
  removed.pairs.erase(removed.pairs.begin() + (earliest - spec.pairs.begin()));
  removed.flat.push_back(x);
  removed.flat.push_back(y);
  return {FlatAndLowProbability(spec, m), FlatAndLowProbability(removed, m)};
}

WalkTrace BuildRwPrime(const FlipAssignment& flips) {
  CheckFlips(flips);
  const double k = flips.k;
  const int jump_at = static_cast<int>(
      std::floor(2 * k - 4 * std::sqrt(k) + 2 * std::cbrt(k * k)));
  WalkTrace t;
  t.jump_width = static_cast<int>(std::floor(std::sqrt(k)));
  t.positions.push_back(0);
  for (int j = 1; j <= static_cast<int>(flips.labels.size()); ++j) {
    int step = 0;
    StepKind kind = StepKind::kFlat;
    if (j < jump_at) {
      const bool value = flips.labels[j - 1] == Label::kValue;
      step = value ? -1 : 1;
      kind = value ? StepKind::kDown : StepKind::kUp;
    } else if (j == jump_at) {
      step = t.jump_width;
      kind = StepKind::kJump;
    }
    t.steps.push_back(kind);
    t.positions.push_back(t.positions.back() + step);
  }
  return t;
}

MissingScaling EstimateMissingCount(int k, int couples, int position,
                                    int trials, RandomStream& rng) {
  if (position < 0 || position > 2 * couples || trials < 2) {
    throw InputDomainError("invalid missing-count experiment");
  }
  MissingScaling out;
  out.k = k;
  out.position = position;
  const int len = 2 * couples;
  std::vector<std::pair<double, int>> draws(len);
  FlipAssignment flips;
  flips.k = k;
  flips.labels.resize(len);
  double sum = 0, sum_sq = 0;
  for (int t = 0; t < trials; ++t) {
    for (int i = 0; i < couples; ++i) {
      const bool first_is_sample = rng.UniformInt(2) == 1;
      draws[2 * i] = {rng.Uniform01(), first_is_sample ? 1 : 0};
      draws[2 * i + 1] = {rng.Uniform01(), first_is_sample ? 0 : 1};
    }
    std::sort(draws.begin(), draws.end(), std::greater<>());
    for (int p = 0; p < len; ++p) {
      flips.labels[p] = draws[p].second ? Label::kSample : Label::kValue;
    }
    const Heights h = HeightsAt(BuildRw(flips), position);
    const double missing = std::max(h.left - h.right, 0);
    sum += missing;
    sum_sq += missing * missing;
  }
  out.mean_missing = sum / trials;
  const double var = (sum_sq - sum * sum / trials) / (trials - 1);
  out.stderr_missing = std::sqrt(std::max(var, 0.0) / trials);
  out.fitted_constant =
      position == 0 ? 0.0 : out.mean_missing / (position / std::sqrt(k));
  return out;
}

}  // namespace pinq
