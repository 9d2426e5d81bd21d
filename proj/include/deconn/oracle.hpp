#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <unordered_map>
#include <vector>

#include "deconn/graph.hpp"
#include "deconn/random.hpp"

// Slow reference answers recomputed from scratch. Used by tests, the bench
// verifier and replay checking.
namespace deconn::oracle {

namespace detail {

inline std::vector<EdgeId> chosen_edges(const DynamicGraph& g, const SubgraphMask* mask) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.alive(e) && (!mask || mask->test(e))) out.push_back(e);
  return out;
}

inline std::vector<std::vector<EdgeId>> adjacency(const DynamicGraph& g, const std::vector<EdgeId>& edges) {
  std::vector<std::vector<EdgeId>> adj(g.vertex_count());
  for (EdgeId e : edges) {
    adj[g.endpoints(e).u].push_back(e);
    adj[g.endpoints(e).v].push_back(e);
  }
  return adj;
}

}  // namespace detail

// Labels each vertex by the smallest vertex of its class.
inline std::vector<int> canonical(const std::vector<int>& labels) {
  std::unordered_map<int, int> rep;
  std::vector<int> out(labels.size());
  for (std::size_t v = 0; v < labels.size(); ++v) out[v] = rep.emplace(labels[v], static_cast<int>(v)).first->second;
  return out;
}

inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  // a ~ b iff the pair map is a bijection on classes.
  std::set<std::pair<int, int>> pairs;
  std::set<int> la, lb;
  for (std::size_t v = 0; v < a.size(); ++v) {
    pairs.insert({a[v], b[v]});
    la.insert(a[v]);
    lb.insert(b[v]);
  }
  return pairs.size() == la.size() && pairs.size() == lb.size();
}

// Connected components by iterative DFS.
inline std::vector<int> components(const DynamicGraph& g, const SubgraphMask* mask = nullptr) {
  auto adj = detail::adjacency(g, detail::chosen_edges(g, mask));
  int n = g.vertex_count();
  std::vector<int> label(n, -1);
  for (Vertex s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    std::vector<Vertex> stack{s};
    label[s] = s;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (EdgeId e : adj[v]) {
        Vertex w = g.other(e, v);
        if (label[w] < 0) {
          label[w] = s;
          stack.push_back(w);
        }
      }
    }
  }
  return label;
}

// Connected components by union-find.
inline std::vector<int> components_uf(const DynamicGraph& g, const SubgraphMask* mask = nullptr) {
  int n = g.vertex_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (EdgeId e : detail::chosen_edges(g, mask)) {
    int a = find(g.endpoints(e).u), b = find(g.endpoints(e).v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> label(n);
  for (int v = 0; v < n; ++v) label[v] = find(v);
  return canonical(label);
}

// Bridges by DFS low-link; parallel edges are told apart by ID.
inline std::vector<EdgeId> bridges(const DynamicGraph& g, const SubgraphMask* mask = nullptr) {
  auto adj = detail::adjacency(g, detail::chosen_edges(g, mask));
  int n = g.vertex_count();
  std::vector<int> tin(n, -1), low(n, 0);
  std::vector<EdgeId> out;
  int timer = 0;
  struct Frame {
    Vertex v;
    EdgeId via;
    std::size_t it;
  };
  for (Vertex s = 0; s < n; ++s) {
    if (tin[s] >= 0) continue;
    std::vector<Frame> st{{s, -1, 0}};
    tin[s] = low[s] = timer++;
    while (!st.empty()) {
      Frame& f = st.back();
      if (f.it < adj[f.v].size()) {
        EdgeId e = adj[f.v][f.it++];
        if (e == f.via) continue;
        Vertex w = g.other(e, f.v);
        if (tin[w] >= 0) {
          low[f.v] = std::min(low[f.v], tin[w]);
        } else {
          tin[w] = low[w] = timer++;
          st.push_back({w, e, 0});
        }
      } else {
        Frame done = f;
        st.pop_back();
        if (!st.empty()) {
          Vertex p = st.back().v;
          low[p] = std::min(low[p], low[done.v]);
          if (low[done.v] > tin[p]) out.push_back(done.via);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// 2-edge-connected components: drop bridges until none remain.
inline std::vector<int> two_edge_components(const DynamicGraph& g, const SubgraphMask* mask = nullptr) {
  SubgraphMask m(g.edge_count());
  for (EdgeId e : detail::chosen_edges(g, mask)) m.set(e);
  for (;;) {
    std::vector<EdgeId> b = bridges(g, &m);
    if (b.empty()) break;
    for (EdgeId e : b) m.reset(e);
  }
  return components(g, &m);
}

// Bridges by definition: e is a bridge iff removing it disconnects its ends.
inline std::vector<EdgeId> bridges_by_deletion(const DynamicGraph& g, const SubgraphMask* mask = nullptr) {
  std::vector<EdgeId> edges = detail::chosen_edges(g, mask);
  std::vector<EdgeId> out;
  for (EdgeId e : edges) {
    SubgraphMask m(g.edge_count());
    for (EdgeId f : edges)
      if (f != e) m.set(f);
    auto lab = components(g, &m);
    if (lab[g.endpoints(e).u] != lab[g.endpoints(e).v]) out.push_back(e);
  }
  return out;
}

// Unit-capacity max-flow between s and t inside the vertex set `inside`,
// stopping at `limit`. On return `reach` marks the residual side of s.
inline int local_flow(const DynamicGraph& g, const std::vector<EdgeId>& edges, const std::vector<char>& inside,
                      Vertex s, Vertex t, int limit, std::vector<char>* reach = nullptr) {
  int n = g.vertex_count();
  // Arc 2i is u->v of edges[i], arc 2i+1 is v->u; each carries capacity 1.
  std::vector<std::vector<int>> out(n);
  std::vector<int> head(2 * edges.size()), flow(2 * edges.size(), 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& ed = g.endpoints(edges[i]);
    if (!inside[ed.u] || !inside[ed.v]) continue;
    head[2 * i] = ed.v;
    head[2 * i + 1] = ed.u;
    out[ed.u].push_back(static_cast<int>(2 * i));
    out[ed.v].push_back(static_cast<int>(2 * i + 1));
  }
  auto residual = [&](int a) { return 1 - flow[a] + flow[a ^ 1]; };
  int total = 0;
  std::vector<int> via(n);
  std::vector<char> seen(n);
  auto bfs = [&]() {
    std::fill(seen.begin(), seen.end(), 0);
    std::vector<Vertex> q{s};
    seen[s] = 1;
    for (std::size_t k = 0; k < q.size(); ++k) {
      Vertex v = q[k];
      for (int a : out[v]) {
        if (residual(a) <= 0 || seen[head[a]]) continue;
        seen[head[a]] = 1;
        via[head[a]] = a;
        q.push_back(head[a]);
      }
    }
    return static_cast<bool>(seen[t]);
  };
  while (total < limit && bfs()) {
    for (Vertex x = t; x != s; x = head[via[x] ^ 1]) {
      int a = via[x];
      if (flow[a ^ 1] > 0)
        --flow[a ^ 1];
      else
        ++flow[a];
    }
    ++total;
  }
  if (reach) {
    bfs();
    *reach = seen;
  }
  return total;
}

inline int local_edge_connectivity(const DynamicGraph& g, Vertex s, Vertex t, int limit,
                                   const SubgraphMask* mask = nullptr) {
  std::vector<char> inside(g.vertex_count(), 1);
  return local_flow(g, detail::chosen_edges(g, mask), inside, s, t, limit);
}

// c-edge-connected components: split any part whose induced graph has a cut
// of value < c until none does. order_seed != 0 shuffles the sink order.
inline std::vector<int> c_components(const DynamicGraph& g, int c, const SubgraphMask* mask = nullptr,
                                     std::uint64_t order_seed = 0) {
  int n = g.vertex_count();
  std::vector<EdgeId> edges = detail::chosen_edges(g, mask);
  std::vector<int> label(n);
  std::vector<std::vector<Vertex>> work;
  {
    std::vector<int> cc = components(g, mask);
    std::vector<std::vector<Vertex>> by(n);
    for (Vertex v = 0; v < n; ++v) by[cc[v]].push_back(v);
    for (auto& part : by)
      if (!part.empty()) work.push_back(std::move(part));
  }
  CounterRng rng(order_seed);
  std::vector<char> inside(n, 0), reach;
  while (!work.empty()) {
    std::vector<Vertex> part = std::move(work.back());
    work.pop_back();
    for (Vertex v : part) inside[v] = 1;
    bool split = false;
    if (c >= 1 && part.size() >= 2) {
      std::vector<Vertex> sinks(part.begin() + 1, part.end());
      if (order_seed) rng.shuffle(sinks);
      for (Vertex t : sinks) {
        if (local_flow(g, edges, inside, part[0], t, c, &reach) < c) {
          std::vector<Vertex> a, b;
          for (Vertex v : part) (reach[v] ? a : b).push_back(v);
          work.push_back(std::move(a));
          work.push_back(std::move(b));
          split = true;
          break;
        }
      }
    }
    for (Vertex v : part) inside[v] = 0;
    if (!split)
      for (Vertex v : part) label[v] = part[0];
  }
  return canonical(label);
}

// Classes of the relation lambda(u, v) >= c in the whole graph.
inline std::vector<int> c_classes(const DynamicGraph& g, int c, const SubgraphMask* mask = nullptr) {
  int n = g.vertex_count();
  std::vector<int> label(n, -1);
  std::vector<EdgeId> edges = detail::chosen_edges(g, mask);
  std::vector<char> inside(n, 1);
  for (Vertex u = 0; u < n; ++u) {
    if (label[u] >= 0) continue;
    label[u] = u;
    for (Vertex v = u + 1; v < n; ++v)
      if (label[v] < 0 && local_flow(g, edges, inside, u, v, c) >= c) label[v] = u;
  }
  return label;
}

// Global minimum cut value capped at limit; limit for fewer than two vertices.
inline int min_cut(const DynamicGraph& g, int limit, const SubgraphMask* mask = nullptr) {
  int n = g.vertex_count();
  if (n < 2) return limit;
  std::vector<EdgeId> edges = detail::chosen_edges(g, mask);
  std::vector<char> inside(n, 1);
  int best = limit;
  for (Vertex t = 1; t < n; ++t) best = std::min(best, local_flow(g, edges, inside, 0, t, best));
  return best;
}

// Number of perfect matchings by exhaustive search (small graphs only).
inline long long count_perfect_matchings(const DynamicGraph& g, long long cap = 1LL << 40) {
  int n = g.vertex_count();
  if (n % 2) return 0;
  auto adj = detail::adjacency(g, detail::chosen_edges(g, nullptr));
  std::vector<char> used(n, 0);
  long long count = 0;
  auto rec = [&](auto&& self) -> void {
    if (count >= cap) return;
    Vertex v = 0;
    while (v < n && used[v]) ++v;
    if (v == n) {
      ++count;
      return;
    }
    used[v] = 1;
    for (EdgeId e : adj[v]) {
      Vertex w = g.other(e, v);
      if (used[w]) continue;
      used[w] = 1;
      self(self);
      used[w] = 0;
    }
    used[v] = 0;
  };
  rec(rec);
  return count;
}

}  // namespace deconn::oracle
