#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "deconn/deconn.hpp"

namespace testing_support {

using deconn::DynamicGraph;
using deconn::Edge;
using deconn::EdgeId;
using deconn::Vertex;

inline DynamicGraph make(int n, std::vector<Edge> edges) { return DynamicGraph(n, edges); }

inline DynamicGraph path(int n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.push_back({v, v + 1});
  return make(n, e);
}

// Triangles {0,1,2} and {3,4,5} joined by edge 6 = (2,3).
inline DynamicGraph two_triangles() {
  return make(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}});
}

// Independent of the library generators: std::mt19937 based.
inline DynamicGraph random_graph(int n, double p, std::mt19937& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) e.push_back({u, v});
  return make(n, e);
}

inline DynamicGraph random_multigraph(int n, int m, std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<Edge> e;
  while (static_cast<int>(e.size()) < m) {
    int u = pick(rng), v = pick(rng);
    if (u != v) e.push_back({u, v});
  }
  return make(n, e);
}

inline std::vector<EdgeId> shuffled(const DynamicGraph& g, std::mt19937& rng) {
  std::vector<EdgeId> s = g.alive_edges();
  std::shuffle(s.begin(), s.end(), rng);
  return s;
}

inline std::vector<Vertex> random_subset(int n, std::mt19937& rng) {
  std::vector<Vertex> s;
  std::bernoulli_distribution coin(0.5);
  for (Vertex v = 0; v < n; ++v)
    if (coin(rng)) s.push_back(v);
  if (s.empty()) s.push_back(static_cast<Vertex>(rng() % n));
  return s;
}

// Boundary by a double loop over all edges.
inline std::vector<EdgeId> brute_boundary(const DynamicGraph& g, const std::vector<Vertex>& S,
                                          const deconn::SubgraphMask* mask = nullptr) {
  std::set<Vertex> in(S.begin(), S.end());
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!g.alive(e) || (mask && !mask->test(e))) continue;
    bool a = in.count(g.endpoints(e).u), b = in.count(g.endpoints(e).v);
    if (a != b) out.push_back(e);
  }
  return out;
}

}  // namespace testing_support
