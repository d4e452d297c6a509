// Copyright 2026 The Facepriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent reference implementations used only by the test suites. None
// of these call into the library code paths they check.

#ifndef FACEPRIV_TESTS_ORACLES_H_
#define FACEPRIV_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "facepriv/attribute_table.h"

namespace facepriv::testing {

// Transportation problem solved as min-cost flow with successive shortest
// paths (Bellman-Ford on the residual graph). Source -> supply i (cap p_i),
// i -> demand j (cap inf, cost c_ij), demand j -> sink (cap q_j).
inline double MinCostFlowEmd(const std::vector<double>& p,
                             const std::vector<double>& q,
                             const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(p.size());
  const int m = static_cast<int>(q.size());
  const int source = n + m;
  const int sink = n + m + 1;
  const int nodes = n + m + 2;
  struct Edge {
    int to;
    double cap;
    double cost;
    int rev;
  };
  std::vector<std::vector<Edge>> graph(static_cast<std::size_t>(nodes));
  auto add = [&](int u, int v, double cap, double c) {
    graph[u].push_back({v, cap, c, static_cast<int>(graph[v].size())});
    graph[v].push_back({u, 0.0, -c, static_cast<int>(graph[u].size()) - 1});
  };
  constexpr double kInf = 1e18;
  for (int i = 0; i < n; ++i) add(source, i, p[i], 0.0);
  for (int j = 0; j < m; ++j) add(n + j, sink, q[j], 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) add(i, n + j, kInf, cost[i][j]);
  }
  constexpr double kEps = 1e-15;
  double total = 0.0;
  while (true) {
    std::vector<double> dist(nodes, std::numeric_limits<double>::infinity());
    std::vector<int> prev_node(nodes, -1);
    std::vector<int> prev_edge(nodes, -1);
    dist[source] = 0.0;
    for (int round = 0; round < nodes; ++round) {
      bool changed = false;
      for (int u = 0; u < nodes; ++u) {
        if (std::isinf(dist[u])) continue;
        for (int e = 0; e < static_cast<int>(graph[u].size()); ++e) {
          const Edge& edge = graph[u][e];
          if (edge.cap > kEps && dist[u] + edge.cost < dist[edge.to] - 1e-12) {
            dist[edge.to] = dist[u] + edge.cost;
            prev_node[edge.to] = u;
            prev_edge[edge.to] = e;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (std::isinf(dist[sink])) break;
    double push = kInf;
    for (int v = sink; v != source; v = prev_node[v]) {
      push = std::min(push, graph[prev_node[v]][prev_edge[v]].cap);
    }
    if (push <= kEps) break;
    for (int v = sink; v != source; v = prev_node[v]) {
      Edge& edge = graph[prev_node[v]][prev_edge[v]];
      edge.cap -= push;
      graph[v][edge.rev].cap += push;
      total += push * edge.cost;
    }
  }
  return total;
}

enum class OracleGround { kBinary, kUniform, kOrdinal };

inline std::vector<std::vector<double>> CostMatrix(OracleGround g,
                                                   const std::vector<int>& support) {
  const std::size_t n = support.size();
  std::vector<std::vector<double>> c(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      switch (g) {
        case OracleGround::kBinary:
          c[i][j] = std::abs(support[i] - support[j]);
          break;
        case OracleGround::kUniform:
          c[i][j] = i == j ? 0.0 : 1.0;
          break;
        case OracleGround::kOrdinal:
          c[i][j] = std::abs(static_cast<double>(i) - static_cast<double>(j));
          break;
      }
    }
  }
  return c;
}

// Random probability vector of length n; some entries forced to zero.
inline std::vector<double> RandomPmf(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (double& x : p) {
    x = u(gen) < 0.2 ? 0.0 : u(gen);
    total += x;
  }
  if (total == 0.0) {
    p[0] = 1.0;
    total = 1.0;
  }
  for (double& x : p) x /= total;
  return p;
}

// Records in `table` agreeing with record r on every attribute in `attrs`
// (quadratic scan).
inline std::vector<std::size_t> NaiveClassOf(const AttributeTable& table,
                                             std::size_t r,
                                             const std::vector<std::size_t>& attrs) {
  std::vector<std::size_t> members;
  for (std::size_t s = 0; s < table.size(); ++s) {
    bool same = true;
    for (std::size_t a : attrs) {
      if (table.record(s).values[a] != table.record(r).values[a]) same = false;
    }
    if (same) members.push_back(s);
  }
  return members;
}

inline std::size_t NaiveK(const AttributeTable& table,
                          const std::vector<std::size_t>& quasi) {
  std::size_t k = table.size();
  for (std::size_t r = 0; r < table.size(); ++r) {
    k = std::min(k, NaiveClassOf(table, r, quasi).size());
  }
  return k;
}

inline std::vector<double> NaivePmf(const AttributeTable& table,
                                    const std::vector<std::size_t>& members,
                                    std::size_t attr) {
  std::vector<double> p(static_cast<std::size_t>(table.schema().arity(attr)), 0.0);
  for (std::size_t s : members) p[table.record(s).values[attr]] += 1.0;
  for (double& x : p) x /= static_cast<double>(members.size());
  return p;
}

inline double NaiveL(const AttributeTable& table,
                     const std::vector<std::size_t>& quasi, std::size_t sensitive) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < table.size(); ++r) {
    double h = 0.0;
    for (double p : NaivePmf(table, NaiveClassOf(table, r, quasi), sensitive)) {
      if (p > 0.0) h -= p * std::log(p);
    }
    worst = std::min(worst, h);
  }
  return std::exp(worst);
}

inline double NaiveT(const AttributeTable& table,
                     const std::vector<std::size_t>& quasi, std::size_t sensitive,
                     OracleGround ground) {
  std::vector<std::size_t> all(table.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const std::vector<double> global = NaivePmf(table, all, sensitive);
  std::vector<int> support(global.size());
  for (std::size_t i = 0; i < support.size(); ++i) support[i] = static_cast<int>(i);
  const auto cost = CostMatrix(ground, support);
  double worst = 0.0;
  for (std::size_t r = 0; r < table.size(); ++r) {
    worst = std::max(worst, MinCostFlowEmd(global,
                                           NaivePmf(table, NaiveClassOf(table, r, quasi),
                                                    sensitive),
                                           cost));
  }
  return worst;
}

// Random binary table with distinct identities per record.
inline AttributeTable RandomBinaryTable(std::mt19937_64& gen, std::size_t records,
                                        std::size_t attributes) {
  std::vector<std::string> names;
  for (std::size_t a = 0; a < attributes; ++a) names.push_back("A" + std::to_string(a));
  std::bernoulli_distribution bit(0.5);
  std::vector<Record> rows;
  for (std::size_t r = 0; r < records; ++r) {
    Record rec;
    rec.image_id = "img" + std::to_string(r) + ".jpg";
    rec.identity_id = "id" + std::to_string(r);
    for (std::size_t a = 0; a < attributes; ++a) {
      rec.values.push_back(bit(gen) ? 1 : 0);
    }
    rows.push_back(std::move(rec));
  }
  return AttributeTable::Create(AttributeSchema(names), std::move(rows));
}

// Two identities over <Male, Big_Nose, Black_Hair>, identical except hair.
inline AttributeTable ToyTable() {
  return AttributeTable::Create(
      AttributeSchema({"Male", "Big_Nose", "Black_Hair"}),
      {Record{"a.jpg", "person_1", {1, 0, 1}}, Record{"b.jpg", "person_2", {1, 0, 0}}});
}

}  // namespace facepriv::testing

#endif  // FACEPRIV_TESTS_ORACLES_H_
