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

// Selection environments: a universe {0, ..., n-1} plus a downward-closed
// family of feasible subsets, with the exact offline oracles the online
// algorithms and the benchmarks rely on.

#ifndef PINQ_ENV_H_
#define PINQ_ENV_H_

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace pinq {

// Non-negative finite weights, one per element. Used for values and samples.
using WeightVector = std::vector<double>;

// Sorted, duplicate-free element indices.
using FeasibleSet = std::vector<int>;

struct BipartiteEdge {
  int left = 0;
  int right = 0;
  // Position of this edge among the edges incident to `left` (resp. `right`),
  // in 0..d-1.
  int left_ordinal = 0;
  int right_ordinal = 0;

  bool operator==(const BipartiteEdge&) const = default;
};

// Bipartite graph with per-endpoint incidence ordinals and a degree bound d.
// Multi-edges and isolated vertices are allowed.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  // Validates ordinals: distinct at every vertex and < degree_bound.
  BipartiteGraph(int num_left, int num_right, std::vector<BipartiteEdge> edges,
                 int degree_bound);

  // Assigns incidence ordinals in input order. A degree_bound of 0 means "use
  // the maximum degree".
  static BipartiteGraph FromPairs(int num_left, int num_right,
                                  std::span<const std::pair<int, int>> pairs,
                                  int degree_bound = 0);

  int num_left() const { return num_left_; }
  int num_right() const { return num_right_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int degree_bound() const { return degree_bound_; }
  const std::vector<BipartiteEdge>& edges() const { return edges_; }
  const BipartiteEdge& edge(int e) const { return edges_[e]; }
  // Edge ids incident to a vertex, in input order.
  const std::vector<int>& left_incidence(int l) const { return left_inc_[l]; }
  const std::vector<int>& right_incidence(int r) const { return right_inc_[r]; }
  bool Adjacent(int e, int f) const;

  bool operator==(const BipartiteGraph& o) const {
    return num_left_ == o.num_left_ && num_right_ == o.num_right_ &&
           degree_bound_ == o.degree_bound_ && edges_ == o.edges_;
  }

 private:
  int num_left_ = 0;
  int num_right_ = 0;
  int degree_bound_ = 0;
  std::vector<BipartiteEdge> edges_;
  std::vector<std::vector<int>> left_inc_;
  std::vector<std::vector<int>> right_inc_;
};

enum class EnvKind {
  kUniform,
  kPartition,
  kLaminar,
  kGraphic,
  kTransversal,
  kBipartiteMatching,
};

std::string_view EnvKindName(EnvKind kind);
EnvKind ParseEnvKind(std::string_view name);

struct UniformSpec {
  int k = 0;
};
struct PartitionSpec {
  std::vector<std::vector<int>> blocks;
  std::vector<int> capacities;
};
struct LaminarSpec {
  std::vector<std::vector<int>> family;
  std::vector<int> capacities;
};
struct GraphicSpec {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
};
// Elements are the left vertices.
struct TransversalSpec {
  BipartiteGraph graph;
};
// Elements are the edges.
struct MatchingSpec {
  BipartiteGraph graph;
};

// Immutable after construction; all queries are const and thread-safe.
class Environment {
 public:
  static Environment Uniform(int n, int k);
  static Environment Partition(int n, std::vector<std::vector<int>> blocks,
                               std::vector<int> capacities);
  static Environment Laminar(int n, std::vector<std::vector<int>> family,
                             std::vector<int> capacities);
  static Environment Graphic(int num_vertices,
                             std::vector<std::pair<int, int>> edges);
  static Environment Transversal(BipartiteGraph graph);
  static Environment BipartiteMatching(BipartiteGraph graph);

  int size() const { return n_; }
  EnvKind kind() const { return kind_; }
  bool is_matroid() const { return kind_ != EnvKind::kBipartiteMatching; }

  const UniformSpec& uniform() const { return std::get<UniformSpec>(spec_); }
  const PartitionSpec& partition() const {
    return std::get<PartitionSpec>(spec_);
  }
  const LaminarSpec& laminar() const { return std::get<LaminarSpec>(spec_); }
  const GraphicSpec& graphic() const { return std::get<GraphicSpec>(spec_); }
  const TransversalSpec& transversal() const {
    return std::get<TransversalSpec>(spec_);
  }
  const MatchingSpec& matching() const { return std::get<MatchingSpec>(spec_); }
  // Graph underlying a transversal or matching environment.
  const BipartiteGraph& bipartite_graph() const;

  int partition_block_of(int e) const { return partition_block_of_[e]; }

  // Indices of laminar family members containing element e.
  const std::vector<int>& laminar_sets_of(int e) const {
    return laminar_membership_[e];
  }

  bool operator==(const Environment& o) const;

 private:
  Environment(int n, EnvKind kind,
              std::variant<UniformSpec, PartitionSpec, LaminarSpec,
                           GraphicSpec, TransversalSpec, MatchingSpec>
                  spec);

  int n_ = 0;
  EnvKind kind_ = EnvKind::kUniform;
  std::variant<UniformSpec, PartitionSpec, LaminarSpec, GraphicSpec,
               TransversalSpec, MatchingSpec>
      spec_;
  std::vector<std::vector<int>> laminar_membership_;
  std::vector<int> partition_block_of_;
};

// Incrementally grown independent set. TryAdd commits only when the result
// stays feasible, so the held set is feasible at every point.
class IndependenceState {
 public:
  explicit IndependenceState(const Environment& env);

  bool CanAdd(int e) const;
  bool TryAdd(int e);
  bool Contains(int e) const { return in_set_[e] != 0; }
  const std::vector<int>& members() const { return members_; }
  FeasibleSet SortedMembers() const;
  int size() const { return static_cast<int>(members_.size()); }

 private:
  bool FindAugmentingPath(int left, std::vector<char>& visited,
                          std::vector<int>& match_right) const;

  const Environment* env_;
  std::vector<char> in_set_;
  std::vector<int> members_;
  std::vector<int> counts_;       // per block / laminar set
  std::vector<int> dsu_parent_;   // graphic
  std::vector<int> match_right_;  // transversal: right vertex -> left or -1
  std::vector<char> vertex_used_;  // matching: left vertices then right
};

// Throws InputDomainError for an out-of-range index or a duplicate.
bool IsFeasible(const Environment& env, std::span<const int> set);

struct RankSpan {
  int rank = 0;
  bool spans = false;
};

// Matroid kinds only; UnsupportedOperationError on matching environments.
int Rank(const Environment& env, std::span<const int> set);
RankSpan RankAndSpan(const Environment& env, std::span<const int> set,
                     int element);

struct OptResult {
  FeasibleSet set;
  double weight = 0.0;
};

// MAX(v) and OPT(v). Zero-weight elements are never selected. Among weight
// maximizers, returns the lexicographically smallest index set: matroids via
// the value-then-index greedy, matchings via the exact solver plus
// index-order fixing.
OptResult OfflineOpt(const Environment& env, std::span<const double> w);

// 1 + j + d*k, where j and k are the edge's incidence ordinals at its left and
// right endpoint.
int EdgeIndex(const BipartiteGraph& graph, int edge);

// Infimum weight at which `edge` enters a maximum-weight matching, the other
// weights fixed by `others` (the entry for `edge` itself is ignored).
double EdgeThreshold(const BipartiteGraph& graph, int edge,
                     std::span<const double> others);

// Weight of a maximum-weight matching using only edges with allowed[e] != 0.
double MaxMatchingWeight(const BipartiteGraph& graph, std::span<const double> w,
                         std::span<const char> allowed);

// Checks a weight vector against an environment of size n.
void ValidateWeights(std::span<const double> w, int n);

}  // namespace pinq

#endif  // PINQ_ENV_H_
