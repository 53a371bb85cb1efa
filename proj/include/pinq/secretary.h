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

// Order-oblivious secretary algorithms.
//
// Each algorithm observes a sample phase of k elements with their values and
// never accepts them; afterwards the remaining elements may arrive in any
// order. Start() turns a sample phase into an OnlineRun for the online phase.
// The free-order algorithm chooses its own processing order and is exposed as
// a plain function instead.

#ifndef PINQ_SECRETARY_H_
#define PINQ_SECRETARY_H_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pinq/env.h"
#include "pinq/online.h"
#include "pinq/random.h"

namespace pinq {

// Elements observed before the online phase, with the values seen for them.
struct SamplePhase {
  std::vector<int> indices;
  std::vector<double> values;  // parallel to indices
};

class SecretaryAlgorithm {
 public:
  virtual ~SecretaryAlgorithm() = default;
  virtual std::string_view name() const = 0;
  // Number of sample-phase elements; Binomial(n, 1/2) unless overridden.
  virtual int DrawSamplePhaseSize(const Environment& env,
                                  RandomStream& rng) const;
  // Sample-phase elements are marked ignored in the returned run.
  virtual std::unique_ptr<OnlineRun> Start(const Environment& env,
                                           const SamplePhase& sample,
                                           RandomStream& rng) const = 0;
};

// Accepts the first element strictly above the largest sample-phase value,
// or the first element at all when the sample phase is empty.
class Rank1Algorithm : public SecretaryAlgorithm {
 public:
  std::string_view name() const override { return "rank1"; }
  std::unique_ptr<OnlineRun> Start(const Environment& env,
                                   const SamplePhase& sample,
                                   RandomStream& rng) const override;
};

// One independent rank-1 run per block; elements outside every block are
// never accepted. Without explicit blocks, the blocks come from the
// environment: partition blocks, the minimal sets of a laminar family plus a
// singleton for every element outside them, or the whole universe otherwise.
class BlockwiseAlgorithm : public SecretaryAlgorithm {
 public:
  BlockwiseAlgorithm() = default;
  explicit BlockwiseAlgorithm(std::vector<std::vector<int>> blocks);
  std::string_view name() const override { return "blockwise"; }
  std::unique_ptr<OnlineRun> Start(const Environment& env,
                                   const SamplePhase& sample,
                                   RandomStream& rng) const override;

 private:
  std::optional<std::vector<std::vector<int>>> blocks_;
};

// Graphic matroids: a fair coin picks the low-to-high (0) or high-to-low (1)
// orientation by vertex id, edges are grouped by the vertex they leave, and
// each group runs rank-1. Self-loops are never accepted.
class GraphicKpAlgorithm : public SecretaryAlgorithm {
 public:
  GraphicKpAlgorithm() = default;
  explicit GraphicKpAlgorithm(int forced_coin) : forced_coin_(forced_coin) {}
  std::string_view name() const override { return "graphic-kp"; }
  std::unique_ptr<OnlineRun> Start(const Environment& env,
                                   const SamplePhase& sample,
                                   RandomStream& rng) const override;

 private:
  std::optional<int> forced_coin_;
};

// Edge groups of the coin-selected orientation, indexed by vertex.
std::vector<std::vector<int>> GraphicKpBlocks(const Environment& env,
                                              int coin);

enum class SampleMatchingOrder {
  kDecreasingValue,  // largest sample value first, index breaks ties
  kSamplePhase,      // the order the sample phase was observed in
};

struct TransversalDpOptions {
  SampleMatchingOrder sample_order = SampleMatchingOrder::kDecreasingValue;
  // Right vertices from highest to lowest rank. Empty means input order.
  std::vector<int> right_ranking;
};

// Transversal matroids. Sample-phase left vertices are matched greedily to
// their highest-ranked free right vertex (matching M0). An online left vertex
// is assigned its highest-ranked neighbour outside M0 and accepted iff that
// right vertex is not yet used by an accepted vertex (matching M1). The rule
// never looks at online values.
class TransversalDpAlgorithm : public SecretaryAlgorithm {
 public:
  TransversalDpAlgorithm() = default;
  explicit TransversalDpAlgorithm(TransversalDpOptions options)
      : options_(std::move(options)) {}
  std::string_view name() const override { return "transversal-dp"; }
  std::unique_ptr<OnlineRun> Start(const Environment& env,
                                   const SamplePhase& sample,
                                   RandomStream& rng) const override;

 private:
  TransversalDpOptions options_;
};

// Matroids of rank r. For r < 12 this is Rank1Algorithm. Otherwise the sample
// phase is the first floor(n/2) elements and every online value strictly above
// the (floor(r/4)+1)-th largest sample value is accepted while feasible.
class GvAlgorithm : public SecretaryAlgorithm {
 public:
  std::string_view name() const override { return "gv"; }
  int DrawSamplePhaseSize(const Environment& env,
                          RandomStream& rng) const override;
  std::unique_ptr<OnlineRun> Start(const Environment& env,
                                   const SamplePhase& sample,
                                   RandomStream& rng) const override;
};

// Names accepted by MakeSecretaryAlgorithm.
std::vector<std::string> SecretaryAlgorithmNames();
// InputDomainError for unknown names and for "free-order", which has no
// adversarial-order form.
std::unique_ptr<SecretaryAlgorithm> MakeSecretaryAlgorithm(
    std::string_view name);

// Direct forms of the algorithms for a single run.

// Universe = indices seen in `online`.
std::optional<int> Rank1Secretary(std::span<const double> sample_values,
                                  std::span<const Arrival> online);

// InputDomainError when blocks overlap or name elements outside env.
FeasibleSet BlockwiseRank1(const Environment& env,
                           const std::vector<std::vector<int>>& blocks,
                           const SamplePhase& sample,
                           std::span<const Arrival> online);

FeasibleSet GraphicKp(const Environment& env, const SamplePhase& sample,
                      std::span<const Arrival> online, RandomStream& rng);

struct TransversalDpResult {
  FeasibleSet accepted;
  // Right vertex matched to each sample-phase left vertex in M0, or -1.
  std::vector<int> sample_matching;
  // Right vertex assigned to each accepted left vertex (parallel to
  // `accepted`).
  std::vector<int> accepted_matching;
};

TransversalDpResult TransversalDp(const Environment& env,
                                  const SamplePhase& sample,
                                  std::span<const Arrival> online,
                                  const TransversalDpOptions& options = {});

FeasibleSet GvRandomAssignment(const Environment& env,
                               const SamplePhase& sample,
                               std::span<const Arrival> online);

// Free-order algorithm for matroids.
//
// Elements with in_sample[e] != 0 form the sample set S, observed with
// sample_values; the rest form P and are offered with online_values. X is the
// max-weight basis of S in decreasing weight. Each y in P is offered in the
// group of the first prefix X_1..X_i spanning it (groups in order of i,
// elements by index), and accepted iff it keeps A feasible and
// online_values[y] > sample_values[X_i]. Elements of P spanned by no prefix
// are offered last, by index, and accepted while feasible.
struct FreeOrderResult {
  FeasibleSet accepted;
  std::vector<int> basis;  // X, heaviest first
  std::vector<Decision> decisions;  // in processing order
};

FreeOrderResult FreeOrderJsz(const Environment& env,
                             std::span<const char> in_sample,
                             std::span<const double> sample_values,
                             std::span<const double> online_values);

// Secretary form: each element joins S independently with probability 1/2
// and the same weights serve as sample and online values.
FreeOrderResult FreeOrderJsz(const Environment& env, std::span<const double> w,
                             RandomStream& rng);

// Weight of Z_i, where Z_1, Z_2, ... lists `set` by decreasing weight (index
// breaks ties) and i is the smallest prefix length whose span contains y.
// 0 when no prefix spans y.
double SpanCost(const Environment& env, int y, std::span<const int> set,
                std::span<const double> w);

}  // namespace pinq

#endif  // PINQ_SECRETARY_H_
