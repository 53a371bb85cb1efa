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

#include "pinq/env.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pinq/errors.h"

namespace pinq {
namespace {

void CheckIndex(int e, int n, std::string_view what) {
  if (e < 0 || e >= n) {
    throw InputDomainError(std::string(what) + ": element " +
                           std::to_string(e) + " outside universe of size " +
                           std::to_string(n));
  }
}

int DsuFind(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

int DsuFindConst(const std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x];
  return x;
}

// Minimum-cost assignment of every row to a distinct column (rows <= cols),
// O(rows^2 * cols). `cost` is row-major.
double MinCostAssignment(int rows, int cols, const std::vector<double>& cost) {
  if (rows == 0) return 0.0;
  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0);
  std::vector<int> p(cols + 1, 0), way(cols + 1, 0);
  for (int i = 1; i <= rows; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(cols + 1, kInf);
    std::vector<char> used(cols + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * cols + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (int j = 1; j <= cols; ++j) {
    if (p[j] != 0) total += cost[(p[j] - 1) * cols + (j - 1)];
  }
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------
// BipartiteGraph

BipartiteGraph::BipartiteGraph(int num_left, int num_right,
                               std::vector<BipartiteEdge> edges,
                               int degree_bound)
    : num_left_(num_left),
      num_right_(num_right),
      degree_bound_(degree_bound),
      edges_(std::move(edges)),
      left_inc_(num_left < 0 ? 0 : num_left),
      right_inc_(num_right < 0 ? 0 : num_right) {
  if (num_left < 0 || num_right < 0) {
    throw InputDomainError("BipartiteGraph: negative vertex count");
  }
  if (degree_bound < 0) {
    throw InputDomainError("BipartiteGraph: negative degree bound");
  }
  std::vector<std::vector<char>> left_seen(num_left), right_seen(num_right);
  for (int e = 0; e < num_edges(); ++e) {
    const BipartiteEdge& edge = edges_[e];
    if (edge.left < 0 || edge.left >= num_left || edge.right < 0 ||
        edge.right >= num_right) {
      throw InputDomainError("BipartiteGraph: edge " + std::to_string(e) +
                             " has an endpoint outside the vertex sets");
    }
    if (edge.left_ordinal < 0 || edge.left_ordinal >= degree_bound ||
        edge.right_ordinal < 0 || edge.right_ordinal >= degree_bound) {
      throw InputDomainError("BipartiteGraph: edge " + std::to_string(e) +
                             " has an incidence ordinal outside 0..d-1");
    }
    auto& ls = left_seen[edge.left];
    auto& rs = right_seen[edge.right];
    ls.resize(degree_bound, 0);
    rs.resize(degree_bound, 0);
    if (ls[edge.left_ordinal] || rs[edge.right_ordinal]) {
      throw InputDomainError("BipartiteGraph: duplicate incidence ordinal at "
                             "an endpoint of edge " +
                             std::to_string(e));
    }
    ls[edge.left_ordinal] = 1;
    rs[edge.right_ordinal] = 1;
    left_inc_[edge.left].push_back(e);
    right_inc_[edge.right].push_back(e);
  }
}

BipartiteGraph BipartiteGraph::FromPairs(
    int num_left, int num_right, std::span<const std::pair<int, int>> pairs,
    int degree_bound) {
  std::vector<int> ldeg(std::max(num_left, 0), 0);
  std::vector<int> rdeg(std::max(num_right, 0), 0);
  std::vector<BipartiteEdge> edges;
  edges.reserve(pairs.size());
  int max_degree = 0;
  for (const auto& [l, r] : pairs) {
    if (l < 0 || l >= num_left || r < 0 || r >= num_right) {
      throw InputDomainError("BipartiteGraph: edge endpoint out of range");
    }
    edges.push_back({l, r, ldeg[l]++, rdeg[r]++});
    max_degree = std::max({max_degree, ldeg[l], rdeg[r]});
  }
  if (degree_bound == 0) degree_bound = std::max(max_degree, 1);
  return BipartiteGraph(num_left, num_right, std::move(edges), degree_bound);
}

bool BipartiteGraph::Adjacent(int e, int f) const {
  return edges_[e].left == edges_[f].left || edges_[e].right == edges_[f].right;
}

// ---------------------------------------------------------------------------
// Environment

std::string_view EnvKindName(EnvKind kind) {
  switch (kind) {
    case EnvKind::kUniform:
      return "uniform";
    case EnvKind::kPartition:
      return "partition";
    case EnvKind::kLaminar:
      return "laminar";
    case EnvKind::kGraphic:
      return "graphic";
    case EnvKind::kTransversal:
      return "transversal";
    case EnvKind::kBipartiteMatching:
      return "bipartite-matching";
  }
  return "unknown";
}

EnvKind ParseEnvKind(std::string_view name) {
  for (EnvKind kind :
       {EnvKind::kUniform, EnvKind::kPartition, EnvKind::kLaminar,
        EnvKind::kGraphic, EnvKind::kTransversal,
        EnvKind::kBipartiteMatching}) {
    if (EnvKindName(kind) == name) return kind;
  }
  throw InputDomainError("unknown environment kind '" + std::string(name) +
                         "'");
}

Environment::Environment(
    int n, EnvKind kind,
    std::variant<UniformSpec, PartitionSpec, LaminarSpec, GraphicSpec,
                 TransversalSpec, MatchingSpec>
        spec)
    : n_(n), kind_(kind), spec_(std::move(spec)) {}

Environment Environment::Uniform(int n, int k) {
  if (n < 0 || k < 0) throw InputDomainError("uniform: negative n or k");
  return Environment(n, EnvKind::kUniform, UniformSpec{k});
}

Environment Environment::Partition(int n, std::vector<std::vector<int>> blocks,
                                   std::vector<int> capacities) {
  if (n < 0) throw InputDomainError("partition: negative n");
  if (blocks.size() != capacities.size()) {
    throw InputDomainError("partition: one capacity per block required");
  }
  std::vector<int> block_of(n, -1);
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (capacities[b] < 1) {
      throw InputDomainError("partition: capacities must be positive");
    }
    for (int e : blocks[b]) {
      CheckIndex(e, n, "partition");
      if (block_of[e] != -1) {
        throw InputDomainError("partition: blocks are not disjoint (element " +
                               std::to_string(e) + ")");
      }
      block_of[e] = static_cast<int>(b);
    }
    std::sort(blocks[b].begin(), blocks[b].end());
  }
  for (int e = 0; e < n; ++e) {
    if (block_of[e] == -1) {
      throw InputDomainError("partition: blocks do not cover element " +
                             std::to_string(e));
    }
  }
  Environment env(n, EnvKind::kPartition,
                  PartitionSpec{std::move(blocks), std::move(capacities)});
  env.partition_block_of_ = std::move(block_of);
  return env;
}

Environment Environment::Laminar(int n, std::vector<std::vector<int>> family,
                                 std::vector<int> capacities) {
  if (n < 0) throw InputDomainError("laminar: negative n");
  if (family.size() != capacities.size()) {
    throw InputDomainError("laminar: one capacity per family member required");
  }
  for (size_t a = 0; a < family.size(); ++a) {
    if (capacities[a] < 1) {
      throw InputDomainError("laminar: capacities must be positive");
    }
    auto& set = family[a];
    for (int e : set) CheckIndex(e, n, "laminar");
    std::sort(set.begin(), set.end());
    if (std::adjacent_find(set.begin(), set.end()) != set.end()) {
      throw InputDomainError("laminar: duplicate element inside a member");
    }
  }
  for (size_t a = 0; a < family.size(); ++a) {
    for (size_t b = a + 1; b < family.size(); ++b) {
      const auto& x = family[a];
      const auto& y = family[b];
      std::vector<int> common;
      std::set_intersection(x.begin(), x.end(), y.begin(), y.end(),
                            std::back_inserter(common));
      const bool nested = common.size() == x.size() || common.size() == y.size();
      if (!common.empty() && !nested) {
        throw InputDomainError("laminar: members " + std::to_string(a) +
                               " and " + std::to_string(b) +
                               " are neither nested nor disjoint");
      }
    }
  }
  std::vector<std::vector<int>> membership(n);
  for (size_t a = 0; a < family.size(); ++a) {
    for (int e : family[a]) membership[e].push_back(static_cast<int>(a));
  }
  Environment env(n, EnvKind::kLaminar,
                  LaminarSpec{std::move(family), std::move(capacities)});
  env.laminar_membership_ = std::move(membership);
  return env;
}

Environment Environment::Graphic(int num_vertices,
                                 std::vector<std::pair<int, int>> edges) {
  if (num_vertices < 0) throw InputDomainError("graphic: negative vertex count");
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= num_vertices || v < 0 || v >= num_vertices) {
      throw InputDomainError("graphic: edge endpoint out of range");
    }
  }
  const int n = static_cast<int>(edges.size());
  return Environment(n, EnvKind::kGraphic,
                     GraphicSpec{num_vertices, std::move(edges)});
}

Environment Environment::Transversal(BipartiteGraph graph) {
  const int n = graph.num_left();
  return Environment(n, EnvKind::kTransversal,
                     TransversalSpec{std::move(graph)});
}

Environment Environment::BipartiteMatching(BipartiteGraph graph) {
  const int n = graph.num_edges();
  return Environment(n, EnvKind::kBipartiteMatching,
                     MatchingSpec{std::move(graph)});
}

const BipartiteGraph& Environment::bipartite_graph() const {
  if (kind_ == EnvKind::kTransversal) return transversal().graph;
  if (kind_ == EnvKind::kBipartiteMatching) return matching().graph;
  throw UnsupportedOperationError("environment has no bipartite graph");
}

bool Environment::operator==(const Environment& o) const {
  if (n_ != o.n_ || kind_ != o.kind_) return false;
  switch (kind_) {
    case EnvKind::kUniform:
      return uniform().k == o.uniform().k;
    case EnvKind::kPartition:
      return partition().blocks == o.partition().blocks &&
             partition().capacities == o.partition().capacities;
    case EnvKind::kLaminar:
      return laminar().family == o.laminar().family &&
             laminar().capacities == o.laminar().capacities;
    case EnvKind::kGraphic:
      return graphic().num_vertices == o.graphic().num_vertices &&
             graphic().edges == o.graphic().edges;
    case EnvKind::kTransversal:
    case EnvKind::kBipartiteMatching:
      return bipartite_graph() == o.bipartite_graph();
  }
  return false;
}

// ---------------------------------------------------------------------------
// IndependenceState

IndependenceState::IndependenceState(const Environment& env)
    : env_(&env), in_set_(env.size(), 0) {
  switch (env.kind()) {
    case EnvKind::kUniform:
      counts_.assign(1, 0);
      break;
    case EnvKind::kPartition:
      counts_.assign(env.partition().blocks.size(), 0);
      break;
    case EnvKind::kLaminar:
      counts_.assign(env.laminar().family.size(), 0);
      break;
    case EnvKind::kGraphic:
      dsu_parent_.resize(env.graphic().num_vertices);
      std::iota(dsu_parent_.begin(), dsu_parent_.end(), 0);
      break;
    case EnvKind::kTransversal:
      match_right_.assign(env.transversal().graph.num_right(), -1);
      break;
    case EnvKind::kBipartiteMatching: {
      const auto& g = env.matching().graph;
      vertex_used_.assign(g.num_left() + g.num_right(), 0);
      break;
    }
  }
}

bool IndependenceState::FindAugmentingPath(int left, std::vector<char>& visited,
                                           std::vector<int>& match_right) const {
  const auto& g = env_->transversal().graph;
  for (int e : g.left_incidence(left)) {
    const int r = g.edge(e).right;
    if (visited[r]) continue;
    visited[r] = 1;
    if (match_right[r] == -1 ||
        FindAugmentingPath(match_right[r], visited, match_right)) {
      match_right[r] = left;
      return true;
    }
  }
  return false;
}

bool IndependenceState::CanAdd(int e) const {
  CheckIndex(e, env_->size(), "IndependenceState");
  if (in_set_[e]) return false;
  switch (env_->kind()) {
    case EnvKind::kUniform:
      return counts_[0] < env_->uniform().k;
    case EnvKind::kPartition: {
      const int b = env_->partition_block_of(e);
      return counts_[b] < env_->partition().capacities[b];
    }
    case EnvKind::kLaminar: {
      const auto& caps = env_->laminar().capacities;
      for (int a : env_->laminar_sets_of(e)) {
        if (counts_[a] >= caps[a]) return false;
      }
      return true;
    }
    case EnvKind::kGraphic: {
      const auto& [u, v] = env_->graphic().edges[e];
      return DsuFindConst(dsu_parent_, u) != DsuFindConst(dsu_parent_, v);
    }
    case EnvKind::kTransversal: {
      std::vector<char> visited(match_right_.size(), 0);
      std::vector<int> scratch = match_right_;
      return FindAugmentingPath(e, visited, scratch);
    }
    case EnvKind::kBipartiteMatching: {
      const auto& g = env_->matching().graph;
      const auto& edge = g.edge(e);
      return !vertex_used_[edge.left] &&
             !vertex_used_[g.num_left() + edge.right];
    }
  }
  return false;
}

bool IndependenceState::TryAdd(int e) {
  CheckIndex(e, env_->size(), "IndependenceState");
  if (in_set_[e]) return false;
  switch (env_->kind()) {
    case EnvKind::kUniform:
      if (counts_[0] >= env_->uniform().k) return false;
      ++counts_[0];
      break;
    case EnvKind::kPartition: {
      if (!CanAdd(e)) return false;
      ++counts_[env_->partition_block_of(e)];
      break;
    }
    case EnvKind::kLaminar:
      if (!CanAdd(e)) return false;
      for (int a : env_->laminar_sets_of(e)) ++counts_[a];
      break;
    case EnvKind::kGraphic: {
      const auto& [u, v] = env_->graphic().edges[e];
      const int ru = DsuFind(dsu_parent_, u);
      const int rv = DsuFind(dsu_parent_, v);
      if (ru == rv) return false;
      dsu_parent_[ru] = rv;
      break;
    }
    case EnvKind::kTransversal: {
      std::vector<char> visited(match_right_.size(), 0);
      std::vector<int> trial = match_right_;
      if (!FindAugmentingPath(e, visited, trial)) return false;
      match_right_ = std::move(trial);
      break;
    }
    case EnvKind::kBipartiteMatching: {
      if (!CanAdd(e)) return false;
      const auto& g = env_->matching().graph;
      const auto& edge = g.edge(e);
      vertex_used_[edge.left] = 1;
      vertex_used_[g.num_left() + edge.right] = 1;
      break;
    }
  }
  in_set_[e] = 1;
  members_.push_back(e);
  return true;
}

FeasibleSet IndependenceState::SortedMembers() const {
  FeasibleSet out = members_;
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Oracles

bool IsFeasible(const Environment& env, std::span<const int> set) {
  std::vector<char> seen(env.size(), 0);
  for (int e : set) {
    CheckIndex(e, env.size(), "is_feasible");
    if (seen[e]) {
      throw InputDomainError("is_feasible: duplicate element " +
                             std::to_string(e));
    }
    seen[e] = 1;
  }
  IndependenceState state(env);
  for (int e : set) {
    if (!state.TryAdd(e)) return false;
  }
  return true;
}

int Rank(const Environment& env, std::span<const int> set) {
  if (!env.is_matroid()) {
    throw UnsupportedOperationError("rank is defined for matroid kinds only");
  }
  IndependenceState state(env);
  for (int e : set) {
    CheckIndex(e, env.size(), "rank");
    if (!state.Contains(e)) state.TryAdd(e);
  }
  return state.size();
}

RankSpan RankAndSpan(const Environment& env, std::span<const int> set,
                     int element) {
  if (!env.is_matroid()) {
    throw UnsupportedOperationError(
        "rank_and_span is defined for matroid kinds only");
  }
  CheckIndex(element, env.size(), "rank_and_span");
  IndependenceState state(env);
  for (int e : set) {
    CheckIndex(e, env.size(), "rank_and_span");
    if (!state.Contains(e)) state.TryAdd(e);
  }
  RankSpan out;
  out.rank = state.size();
  // A maximal independent subset spans element iff it cannot be extended by
  // it; membership counts as spanned.
  out.spans = state.Contains(element) || !state.CanAdd(element);
  return out;
}

void ValidateWeights(std::span<const double> w, int n) {
  if (static_cast<int>(w.size()) != n) {
    throw InputDomainError("weight vector has length " +
                           std::to_string(w.size()) + ", expected " +
                           std::to_string(n));
  }
  for (double x : w) {
    if (!std::isfinite(x) || x < 0.0) {
      throw InputDomainError("weights must be finite and non-negative");
    }
  }
}

double MaxMatchingWeight(const BipartiteGraph& graph, std::span<const double> w,
                         std::span<const char> allowed) {
  // Compress to the vertices touched by allowed positive edges.
  std::vector<int> lmap(graph.num_left(), -1), rmap(graph.num_right(), -1);
  int rows = 0, cols = 0;
  for (int e = 0; e < graph.num_edges(); ++e) {
    if (!allowed[e] || w[e] <= 0.0) continue;
    const auto& edge = graph.edge(e);
    if (lmap[edge.left] == -1) lmap[edge.left] = rows++;
    if (rmap[edge.right] == -1) rmap[edge.right] = cols++;
  }
  if (rows == 0) return 0.0;
  const bool transpose = rows > cols;
  const int r = transpose ? cols : rows;
  const int c = transpose ? rows : cols;
  std::vector<double> cost(static_cast<size_t>(r) * c, 0.0);
  for (int e = 0; e < graph.num_edges(); ++e) {
    if (!allowed[e] || w[e] <= 0.0) continue;
    const auto& edge = graph.edge(e);
    int i = lmap[edge.left];
    int j = rmap[edge.right];
    if (transpose) std::swap(i, j);
    double& slot = cost[static_cast<size_t>(i) * c + j];
    slot = std::min(slot, -w[e]);  // multi-edges: keep the heaviest
  }
  return -MinCostAssignment(r, c, cost);
}

namespace {

OptResult MatroidOpt(const Environment& env, std::span<const double> w) {
  std::vector<int> order(env.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return w[a] > w[b]; });
  IndependenceState state(env);
  OptResult out;
  for (int e : order) {
    if (w[e] <= 0.0) break;
    if (state.TryAdd(e)) out.weight += w[e];
  }
  out.set = state.SortedMembers();
  return out;
}

OptResult MatchingOpt(const Environment& env, std::span<const double> w) {
  const auto& g = env.matching().graph;
  const int m = g.num_edges();
  std::vector<char> allowed(m, 1);
  const double best = MaxMatchingWeight(g, w, allowed);
  const double tol = 1e-9 * (1.0 + best);
  std::vector<char> lused(g.num_left(), 0), rused(g.num_right(), 0);
  OptResult out;
  double chosen = 0.0;
  for (int e = 0; e < m; ++e) {
    const auto& edge = g.edge(e);
    if (w[e] <= 0.0 || lused[edge.left] || rused[edge.right]) continue;
    // Can e extend the chosen prefix to an optimum that uses only later edges?
    for (int f = 0; f < m; ++f) {
      const auto& ef = g.edge(f);
      allowed[f] = f > e && !lused[ef.left] && !rused[ef.right] &&
                   ef.left != edge.left && ef.right != edge.right;
    }
    const double rest = MaxMatchingWeight(g, w, allowed);
    if (chosen + w[e] + rest >= best - tol) {
      chosen += w[e];
      lused[edge.left] = 1;
      rused[edge.right] = 1;
      out.set.push_back(e);
    }
  }
  out.weight = chosen;
  return out;
}

}  // namespace

OptResult OfflineOpt(const Environment& env, std::span<const double> w) {
  ValidateWeights(w, env.size());
  if (env.kind() == EnvKind::kBipartiteMatching) return MatchingOpt(env, w);
  return MatroidOpt(env, w);
}

int EdgeIndex(const BipartiteGraph& graph, int edge) {
  CheckIndex(edge, graph.num_edges(), "edge_index");
  const auto& e = graph.edge(edge);
  return 1 + e.left_ordinal + graph.degree_bound() * e.right_ordinal;
}

double EdgeThreshold(const BipartiteGraph& graph, int edge,
                     std::span<const double> others) {
  CheckIndex(edge, graph.num_edges(), "edge_threshold");
  if (static_cast<int>(others.size()) != graph.num_edges()) {
    throw InputDomainError("edge_threshold: weight vector length mismatch");
  }
  const auto& target = graph.edge(edge);
  std::vector<char> without_edge(graph.num_edges(), 1);
  without_edge[edge] = 0;
  std::vector<char> without_endpoints(graph.num_edges(), 0);
  for (int f = 0; f < graph.num_edges(); ++f) {
    const auto& ef = graph.edge(f);
    without_endpoints[f] = ef.left != target.left && ef.right != target.right;
  }
  const double a = MaxMatchingWeight(graph, others, without_edge);
  const double b = MaxMatchingWeight(graph, others, without_endpoints);
  return std::max(0.0, a - b);
}

}  // namespace pinq
