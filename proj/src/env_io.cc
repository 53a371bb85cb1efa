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

#include "pinq/env_io.h"

#include <algorithm>
#include <utility>
#include <vector>

#include "pinq/errors.h"

namespace pinq {
namespace {

using nlohmann::json;

json GraphToJson(const BipartiteGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"left", e.left},
                     {"right", e.right},
                     {"leftOrdinal", e.left_ordinal},
                     {"rightOrdinal", e.right_ordinal}});
  }
  return {{"left", g.num_left()},
          {"right", g.num_right()},
          {"d", g.degree_bound()},
          {"edges", std::move(edges)}};
}

// Ordinals and the degree bound are optional; when the edges carry no
// ordinals they are assigned in input order.
BipartiteGraph GraphFromJson(const json& j) {
  const json& list = j.at("edges");
  const bool ordinals = std::any_of(list.begin(), list.end(), [](const json& e) {
    return e.contains("leftOrdinal") || e.contains("rightOrdinal");
  });
  if (!ordinals) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& e : list) {
      pairs.emplace_back(e.at("left").get<int>(), e.at("right").get<int>());
    }
    return BipartiteGraph::FromPairs(j.at("left").get<int>(),
                                     j.at("right").get<int>(), pairs,
                                     j.value("d", 0));
  }
  std::vector<BipartiteEdge> edges;
  for (const auto& e : list) {
    edges.push_back({e.at("left").get<int>(), e.at("right").get<int>(),
                     e.at("leftOrdinal").get<int>(),
                     e.at("rightOrdinal").get<int>()});
  }
  return BipartiteGraph(j.at("left").get<int>(), j.at("right").get<int>(),
                        std::move(edges), j.at("d").get<int>());
}

}  // namespace

json EnvironmentToJson(const Environment& env) {
  json j;
  j["kind"] = std::string(EnvKindName(env.kind()));
  j["n"] = env.size();
  switch (env.kind()) {
    case EnvKind::kUniform:
      j["k"] = env.uniform().k;
      break;
    case EnvKind::kPartition:
      j["blocks"] = env.partition().blocks;
      j["capacities"] = env.partition().capacities;
      break;
    case EnvKind::kLaminar:
      j["family"] = env.laminar().family;
      j["capacities"] = env.laminar().capacities;
      break;
    case EnvKind::kGraphic: {
      j["vertices"] = env.graphic().num_vertices;
      json edges = json::array();
      for (const auto& [u, v] : env.graphic().edges) edges.push_back({u, v});
      j["edges"] = std::move(edges);
      break;
    }
    case EnvKind::kTransversal:
    case EnvKind::kBipartiteMatching:
    {
      const json graph = GraphToJson(env.bipartite_graph());
      for (const auto& [key, value] : graph.items()) j[key] = value;
      break;
    }
  }
  return j;
}

Environment EnvironmentFromJson(const json& j) {
  try {
    const EnvKind kind = ParseEnvKind(j.at("kind").get<std::string>());
    // Edge-based kinds derive n from the edge list; n is then optional.
    const bool edge_based = kind == EnvKind::kGraphic ||
                            kind == EnvKind::kTransversal ||
                            kind == EnvKind::kBipartiteMatching;
    const int n = edge_based && !j.contains("n") ? -1 : j.at("n").get<int>();
    Environment env = [&] {
      switch (kind) {
        case EnvKind::kUniform:
          return Environment::Uniform(n, j.at("k").get<int>());
        case EnvKind::kPartition:
          return Environment::Partition(
              n, j.at("blocks").get<std::vector<std::vector<int>>>(),
              j.at("capacities").get<std::vector<int>>());
        case EnvKind::kLaminar:
          return Environment::Laminar(
              n, j.at("family").get<std::vector<std::vector<int>>>(),
              j.at("capacities").get<std::vector<int>>());
        case EnvKind::kGraphic: {
          std::vector<std::pair<int, int>> edges;
          for (const auto& e : j.at("edges")) {
            edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
          }
          return Environment::Graphic(j.at("vertices").get<int>(),
                                      std::move(edges));
        }
        case EnvKind::kTransversal:
          return Environment::Transversal(GraphFromJson(j));
        case EnvKind::kBipartiteMatching:
          return Environment::BipartiteMatching(GraphFromJson(j));
      }
      throw InputDomainError("unreachable environment kind");
    }();
    if (n >= 0 && env.size() != n) {
      throw InputDomainError("environment field n=" + std::to_string(n) +
                             " disagrees with its structure (" +
                             std::to_string(env.size()) + " elements)");
    }
    return env;
  } catch (const json::exception& e) {
    throw InputDomainError(std::string("malformed environment JSON: ") +
                           e.what());
  }
}

std::string DumpEnvironment(const Environment& env) {
  return EnvironmentToJson(env).dump(2) + "\n";
}

Environment ParseEnvironment(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputDomainError(std::string("environment JSON parse error: ") +
                           e.what());
  }
  return EnvironmentFromJson(j);
}

}  // namespace pinq
