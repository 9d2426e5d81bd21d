#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "deconn/graph.hpp"
#include "deconn/random.hpp"

namespace deconn::gen {

// m edges on n vertices chosen uniformly without repetition when m fits in
// n(n-1)/2, otherwise uniformly with repetition.
inline DynamicGraph gnm(int n, long long m, std::uint64_t seed) {
  if (n < 0 || m < 0) throw std::invalid_argument("gnm: negative size");
  if (m > 0 && n < 2) throw std::invalid_argument("gnm: edges need at least two vertices");
  CounterRng rng(MasterSeed(seed).derive(Stream::kGenerator, 1));
  long long pairs = static_cast<long long>(n) * (n - 1) / 2;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  auto draw = [&]() {
    Vertex u = static_cast<Vertex>(rng.uniform(n));
    Vertex v = static_cast<Vertex>(rng.uniform(n - 1));
    if (v >= u) ++v;
    return Edge{std::min(u, v), std::max(u, v)};
  };
  if (m > pairs) {
    for (long long i = 0; i < m; ++i) edges.push_back(draw());
  } else if (2 * m <= pairs) {
    std::unordered_set<std::uint64_t> seen;
    while (static_cast<long long>(edges.size()) < m) {
      Edge e = draw();
      if (seen.insert(static_cast<std::uint64_t>(e.u) * n + e.v).second) edges.push_back(e);
    }
  } else {
    std::vector<Edge> all;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) all.push_back({u, v});
    rng.shuffle(all);
    edges.assign(all.begin(), all.begin() + m);
  }
  return DynamicGraph(n, edges);
}

inline DynamicGraph gnp(int n, double p, std::uint64_t seed) {
  if (n < 0 || p < 0.0 || p > 1.0) throw std::invalid_argument("gnp: bad parameters");
  CounterRng rng(MasterSeed(seed).derive(Stream::kGenerator, 2));
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.unit() < p) edges.push_back({u, v});
  return DynamicGraph(n, edges);
}

// Two k-cliques joined by the single edge (k-1, k).
inline DynamicGraph dumbbell(int k) {
  if (k < 1) throw std::invalid_argument("dumbbell: k must be >= 1");
  std::vector<Edge> edges;
  for (int side = 0; side < 2; ++side)
    for (Vertex u = 0; u < k; ++u)
      for (Vertex v = u + 1; v < k; ++v) edges.push_back({side * k + u, side * k + v});
  edges.push_back({k - 1, k});
  return DynamicGraph(2 * k, edges);
}

inline DynamicGraph grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid: sizes must be >= 1");
  std::vector<Edge> edges;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      Vertex v = r * cols + c;
      if (c + 1 < cols) edges.push_back({v, v + 1});
      if (r + 1 < rows) edges.push_back({v, v + cols});
    }
  return DynamicGraph(rows * cols, edges);
}

inline DynamicGraph cycle(int n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  if (n >= 3) edges.push_back({n - 1, 0});
  return DynamicGraph(n, edges);
}

inline DynamicGraph complete(int n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  return DynamicGraph(n, edges);
}

// k cliques of the given size; each consecutive pair of cliques (cyclically
// when k > 2) is joined by `bridges` random edges.
inline DynamicGraph clusters(int k, int size, int bridges, std::uint64_t seed) {
  if (k < 1 || size < 1 || bridges < 0) throw std::invalid_argument("clusters: bad parameters");
  CounterRng rng(MasterSeed(seed).derive(Stream::kGenerator, 5));
  std::vector<Edge> edges;
  for (int b = 0; b < k; ++b)
    for (Vertex u = 0; u < size; ++u)
      for (Vertex v = u + 1; v < size; ++v) edges.push_back({b * size + u, b * size + v});
  int links = k > 2 ? k : k - 1;
  for (int b = 0; b < links; ++b) {
    int nb = (b + 1) % k;
    for (int i = 0; i < bridges; ++i) {
      Vertex u = b * size + static_cast<Vertex>(rng.uniform(size));
      Vertex v = nb * size + static_cast<Vertex>(rng.uniform(size));
      edges.push_back({std::min(u, v), std::max(u, v)});
    }
  }
  return DynamicGraph(k * size, edges);
}

// Union of k random Hamiltonian cycles: 2k-edge-connected for n >= 3.
inline DynamicGraph cycle_union(int n, int k, std::uint64_t seed) {
  if (n < 3 || k < 1) throw std::invalid_argument("cycle_union: need n >= 3 and k >= 1");
  CounterRng rng(MasterSeed(seed).derive(Stream::kGenerator, 3));
  std::vector<Edge> edges;
  std::vector<Vertex> perm(n);
  for (int r = 0; r < k; ++r) {
    for (Vertex v = 0; v < n; ++v) perm[v] = v;
    rng.shuffle(perm);
    for (int i = 0; i < n; ++i) edges.push_back({perm[i], perm[(i + 1) % n]});
  }
  return DynamicGraph(n, edges);
}

// G(n, 2/n) with each edge kept in the half-sample S with probability 1/2.
// Deleting the unsampled edges leaves S ~ G(n, 1/n), whose two largest
// components tend to be joined by many edges of G.
struct HalfSampled {
  DynamicGraph graph;
  std::vector<EdgeId> unsampled;
  std::vector<EdgeId> sampled;
};

inline HalfSampled half_sample(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("half_sample: n must be >= 2");
  CounterRng rng(MasterSeed(seed).derive(Stream::kGenerator, 4));
  std::vector<Edge> edges;
  double p = std::min(1.0, 2.0 / n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.unit() < p) edges.push_back({u, v});
  HalfSampled out{DynamicGraph(n, edges), {}, {}};
  for (EdgeId e = 0; e < static_cast<EdgeId>(edges.size()); ++e)
    (rng.unit() < 0.5 ? out.sampled : out.unsampled).push_back(e);
  return out;
}

// Every alive edge once, in seeded uniform random order.
inline std::vector<EdgeId> shuffled_deletions(const DynamicGraph& g, std::uint64_t seed) {
  std::vector<EdgeId> seq = g.alive_edges();
  CounterRng rng(MasterSeed(seed).derive(Stream::kShuffle));
  rng.shuffle(seq);
  return seq;
}

// One EdgeId per line, or the single token "shuffle <seed>".
inline std::vector<EdgeId> read_deletion_sequence(std::istream& in, const DynamicGraph& g) {
  std::vector<EdgeId> seq;
  std::string tok;
  bool first = true;
  std::vector<char> used(g.edge_count(), 0);
  while (in >> tok) {
    if (first && tok == "shuffle") {
      std::uint64_t seed;
      if (!(in >> seed)) throw std::invalid_argument("deletions: \"shuffle\" needs a seed");
      if (in >> tok) throw std::invalid_argument("deletions: trailing input after shuffle seed");
      return shuffled_deletions(g, seed);
    }
    first = false;
    long long e;
    std::size_t pos = 0;
    try {
      e = std::stoll(tok, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("deletions: not an edge id: " + tok);
    }
    if (pos != tok.size()) throw std::invalid_argument("deletions: not an edge id: " + tok);
    if (e < 0 || e >= g.edge_count()) throw std::invalid_argument("deletions: edge id out of range: " + tok);
    if (used[e] || !g.alive(static_cast<EdgeId>(e)))
      throw std::invalid_argument("deletions: edge deleted twice or not alive: " + tok);
    used[e] = 1;
    seq.push_back(static_cast<EdgeId>(e));
  }
  return seq;
}

}  // namespace deconn::gen
