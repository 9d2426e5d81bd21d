#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace deconn {

using Vertex = int;
using EdgeId = int;

struct Edge {
  Vertex u;
  Vertex v;
};

// Undirected multigraph that only loses edges. Edge IDs are dense and follow
// input order; a deleted ID stays reserved.
class DynamicGraph {
 public:
  DynamicGraph() = default;

  DynamicGraph(int n, std::span<const Edge> edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    adj_.resize(n);
    edges_.reserve(edges.size());
    for (const Edge& e : edges) {
      if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
        throw std::invalid_argument("edge endpoint out of range");
      if (e.u == e.v) throw std::invalid_argument("self-loop");
      EdgeId id = static_cast<EdgeId>(edges_.size());
      edges_.push_back(e);
      pos_.push_back({static_cast<int>(adj_[e.u].size()), static_cast<int>(adj_[e.v].size())});
      adj_[e.u].push_back(id);
      adj_[e.v].push_back(id);
    }
    alive_.assign(edges_.size(), 1);
    alive_count_ = static_cast<int>(edges_.size());
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int alive_count() const { return alive_count_; }

  const Edge& endpoints(EdgeId e) const { return edges_[check(e)]; }
  Vertex other(EdgeId e, Vertex v) const {
    const Edge& ed = edges_[check(e)];
    return ed.u == v ? ed.v : ed.u;
  }
  bool alive(EdgeId e) const { return alive_[check(e)] != 0; }

  // Alive incident edges, parallel edges listed once per ID.
  std::span<const EdgeId> incident(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

  void erase(EdgeId e) {
    check(e);
    if (!alive_[e]) throw std::logic_error("edge " + std::to_string(e) + " already deleted");
    alive_[e] = 0;
    --alive_count_;
    unlink(e, edges_[e].u, pos_[e].first);
    unlink(e, edges_[e].v, pos_[e].second);
  }

  std::vector<EdgeId> alive_edges() const {
    std::vector<EdgeId> out;
    out.reserve(alive_count_);
    for (EdgeId e = 0; e < edge_count(); ++e)
      if (alive_[e]) out.push_back(e);
    return out;
  }

 private:
  int check(EdgeId e) const {
    if (e < 0 || e >= edge_count()) throw std::out_of_range("unknown edge id " + std::to_string(e));
    return e;
  }

  void unlink(EdgeId e, Vertex v, int p) {
    auto& list = adj_[v];
    EdgeId last = list.back();
    list[p] = last;
    list.pop_back();
    if (last != e) {
      if (edges_[last].u == v)
        pos_[last].first = p;
      else
        pos_[last].second = p;
    }
  }

  int n_ = 0;
  int alive_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::pair<int, int>> pos_;
  std::vector<std::vector<EdgeId>> adj_;
  std::vector<char> alive_;
};

// Bitset over the shared edge array.
class SubgraphMask {
 public:
  SubgraphMask() = default;
  explicit SubgraphMask(int m, bool full = false) : m_(m), words_((m + 63) / 64, full ? ~0ULL : 0ULL) {
    if (full) {
      count_ = m;
      if (m % 64) words_.back() = (1ULL << (m % 64)) - 1;
    }
  }

  int universe() const { return m_; }
  int count() const { return count_; }
  bool test(EdgeId e) const { return (words_[e >> 6] >> (e & 63)) & 1ULL; }

  bool set(EdgeId e) {
    std::uint64_t bit = 1ULL << (e & 63);
    if (words_[e >> 6] & bit) return false;
    words_[e >> 6] |= bit;
    ++count_;
    return true;
  }
  bool reset(EdgeId e) {
    std::uint64_t bit = 1ULL << (e & 63);
    if (!(words_[e >> 6] & bit)) return false;
    words_[e >> 6] &= ~bit;
    --count_;
    return true;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int b = __builtin_ctzll(bits);
        f(static_cast<EdgeId>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  std::vector<EdgeId> edges() const {
    std::vector<EdgeId> out;
    out.reserve(count_);
    for_each([&](EdgeId e) { out.push_back(e); });
    return out;
  }

  bool operator==(const SubgraphMask& o) const { return m_ == o.m_ && words_ == o.words_; }

 private:
  int m_ = 0;
  int count_ = 0;
  std::vector<std::uint64_t> words_;
};

inline SubgraphMask alive_mask(const DynamicGraph& g) {
  SubgraphMask mask(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.alive(e)) mask.set(e);
  return mask;
}

// Alive masked edges with exactly one endpoint in S, sorted by ID.
inline std::vector<EdgeId> boundary_scan(const DynamicGraph& g, const SubgraphMask& mask,
                                         std::span<const Vertex> S) {
  std::vector<char> in(g.vertex_count(), 0);
  for (Vertex v : S) in[v] = 1;
  std::vector<EdgeId> out;
  for (Vertex v : S)
    for (EdgeId e : g.incident(v))
      if (mask.test(e) && !in[g.other(e, v)]) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

inline int degree(const DynamicGraph& g, const SubgraphMask& mask, Vertex v) {
  int d = 0;
  for (EdgeId e : g.incident(v))
    if (mask.test(e)) ++d;
  return d;
}

// "n m" then m lines "u v".
inline DynamicGraph read_edge_list(std::istream& in) {
  long long n = 0, m = 0;
  if (!(in >> n >> m)) throw std::invalid_argument("edge list: missing header \"n m\"");
  if (n < 0 || m < 0) throw std::invalid_argument("edge list: negative size");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u, v;
    if (!(in >> u >> v)) throw std::invalid_argument("edge list: expected " + std::to_string(m) + " edges");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("edge list: endpoint out of range on edge " + std::to_string(i));
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return DynamicGraph(static_cast<int>(n), edges);
}

inline void write_edge_list(std::ostream& out, const DynamicGraph& g) {
  out << g.vertex_count() << ' ' << g.alive_count() << '\n';
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.alive(e)) out << g.endpoints(e).u << ' ' << g.endpoints(e).v << '\n';
}

}  // namespace deconn
