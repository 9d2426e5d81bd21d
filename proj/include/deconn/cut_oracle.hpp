#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "deconn/component_tracker.hpp"
#include "deconn/graph.hpp"

namespace deconn {

// Reports some tracked edge lying on a cut of size < c of its connected
// component, or nothing when every component is c-edge-connected.
class CutOracle {
 public:
  virtual ~CutOracle() = default;
  virtual int order() const = 0;
  virtual void insert(EdgeId e) = 0;
  virtual void erase(EdgeId e) = 0;
  virtual std::optional<EdgeId> find_cut_edge() = 0;
};

// Recomputes from scratch when its cache of cut edges runs dry. An edge on a
// <c cut stays on one under deletions, so cached answers survive deletions;
// an insertion discards them.
class NaiveCutOracle final : public CutOracle {
 public:
  NaiveCutOracle(int c, const DynamicGraph& g) : c_(c), g_(&g) {}
  NaiveCutOracle(int c, const DynamicGraph& g, const SubgraphMask& mask) : NaiveCutOracle(c, g) {
    mask.for_each([&](EdgeId e) {
      if (g.alive(e)) add(e);
    });
  }

  int order() const override { return c_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  long long recomputations() const { return recomputations_; }

  void insert(EdgeId e) override {
    add(e);
    cache_.clear();
    stale_ = true;
  }

  void erase(EdgeId e) override {
    auto it = pos_.find(e);
    if (it == pos_.end()) return;
    int p = it->second;
    EdgeId last = edges_.back();
    edges_[p] = last;
    pos_[last] = p;
    edges_.pop_back();
    pos_.erase(e);
    stale_ = true;
  }

  std::optional<EdgeId> find_cut_edge() override {
    if (c_ <= 1) return std::nullopt;
    for (;;) {
      while (!cache_.empty()) {
        EdgeId e = cache_.back();
        if (pos_.count(e)) return e;
        cache_.pop_back();
      }
      if (!stale_) return std::nullopt;
      stale_ = false;
      ++recomputations_;
      if (c_ == 2)
        cache_ = bridges();
      else
        cache_ = small_cut_edges();
      // Lowest ID is served first.
      std::sort(cache_.rbegin(), cache_.rend());
    }
  }

 private:
  void add(EdgeId e) {
    if (pos_.count(e)) return;
    pos_[e] = static_cast<int>(edges_.size());
    edges_.push_back(e);
  }

  void build_adjacency() {
    int n = g_->vertex_count();
    start_.assign(n + 1, 0);
    for (EdgeId e : edges_) {
      ++start_[g_->endpoints(e).u + 1];
      ++start_[g_->endpoints(e).v + 1];
    }
    for (int v = 0; v < n; ++v) start_[v + 1] += start_[v];
    adj_.resize(2 * edges_.size());
    std::vector<int> fill(start_.begin(), start_.end() - 1);
    for (EdgeId e : edges_) {
      adj_[fill[g_->endpoints(e).u]++] = e;
      adj_[fill[g_->endpoints(e).v]++] = e;
    }
  }

  // Bridges by chain decomposition: every non-tree edge of a DFS forest opens
  // a chain climbing tree edges until it meets an already visited vertex;
  // tree edges left uncovered are exactly the bridges.
  std::vector<EdgeId> bridges() {
    build_adjacency();
    int n = g_->vertex_count();
    std::vector<int> pre(n, -1), parent(n, -1), parent_edge(n, -1), order;
    order.reserve(n);
    std::vector<std::pair<Vertex, int>> stack;
    for (Vertex s = 0; s < n; ++s) {
      if (pre[s] >= 0 || start_[s] == start_[s + 1]) continue;
      pre[s] = static_cast<int>(order.size());
      order.push_back(s);
      stack.push_back({s, start_[s]});
      while (!stack.empty()) {
        auto& [v, it] = stack.back();
        if (it == start_[v + 1]) {
          stack.pop_back();
          continue;
        }
        EdgeId e = adj_[it++];
        Vertex w = g_->other(e, v);
        if (pre[w] < 0) {
          pre[w] = static_cast<int>(order.size());
          order.push_back(w);
          parent[w] = v;
          parent_edge[w] = e;
          stack.push_back({w, start_[w]});
        }
      }
    }
    std::vector<char> visited(n, 0), covered_parent(n, 0);
    for (Vertex v : order) {
      for (int it = start_[v]; it < start_[v + 1]; ++it) {
        EdgeId e = adj_[it];
        Vertex w = g_->other(e, v);
        if (parent_edge[w] == e || parent_edge[v] == e || pre[w] <= pre[v]) continue;
        visited[v] = 1;
        for (Vertex x = w; !visited[x]; x = parent[x]) {
          visited[x] = 1;
          covered_parent[x] = 1;
        }
      }
    }
    std::vector<EdgeId> out;
    for (Vertex v = 0; v < n; ++v)
      if (parent_edge[v] >= 0 && !covered_parent[v]) out.push_back(parent_edge[v]);
    return out;
  }

  // Edges crossing a global minimum cut of value < c, per connected component
  // (Stoer–Wagner on edge multiplicities).
  std::vector<EdgeId> small_cut_edges() {
    build_adjacency();
    int n = g_->vertex_count();
    std::vector<int> comp(n, -1);
    std::vector<EdgeId> out;
    std::vector<Vertex> verts, queue;
    for (Vertex s = 0; s < n; ++s) {
      if (comp[s] >= 0 || start_[s] == start_[s + 1]) continue;
      verts.clear();
      queue.assign(1, s);
      comp[s] = s;
      while (!queue.empty()) {
        Vertex v = queue.back();
        queue.pop_back();
        verts.push_back(v);
        for (int it = start_[v]; it < start_[v + 1]; ++it) {
          Vertex w = g_->other(adj_[it], v);
          if (comp[w] < 0) {
            comp[w] = s;
            queue.push_back(w);
          }
        }
      }
      std::sort(verts.begin(), verts.end());
      std::vector<char> side = stoer_wagner_side(verts);
      if (side.empty()) continue;
      std::vector<char> in_side(n, 0);
      for (std::size_t i = 0; i < verts.size(); ++i) in_side[verts[i]] = side[i];
      for (Vertex v : verts)
        for (int it = start_[v]; it < start_[v + 1]; ++it) {
          EdgeId e = adj_[it];
          Vertex w = g_->other(e, v);
          if (v < w && in_side[v] != in_side[w]) out.push_back(e);
        }
    }
    return out;
  }

  // Returns the side indicator of a minimum cut if its value is < c, else empty.
  std::vector<char> stoer_wagner_side(const std::vector<Vertex>& verts) {
    int k = static_cast<int>(verts.size());
    if (k < 2) return {};
    std::unordered_map<Vertex, int> local;
    for (int i = 0; i < k; ++i) local[verts[i]] = i;
    std::vector<std::vector<long long>> w(k, std::vector<long long>(k, 0));
    for (Vertex v : verts)
      for (int it = start_[v]; it < start_[v + 1]; ++it) {
        Vertex x = g_->other(adj_[it], v);
        ++w[local[v]][local[x]];
      }
    std::vector<std::vector<int>> groups(k);
    for (int i = 0; i < k; ++i) groups[i] = {i};
    std::vector<int> active(k);
    for (int i = 0; i < k; ++i) active[i] = i;
    long long best = std::numeric_limits<long long>::max();
    std::vector<int> best_group;
    while (active.size() > 1) {
      int a = static_cast<int>(active.size());
      std::vector<long long> weight(a, 0);
      std::vector<char> added(a, 0);
      int prev = -1, last = -1;
      for (int step = 0; step < a; ++step) {
        int sel = -1;
        for (int i = 0; i < a; ++i)
          if (!added[i] && (sel < 0 || weight[i] > weight[sel])) sel = i;
        added[sel] = 1;
        prev = last;
        last = sel;
        if (step == a - 1) {
          if (weight[sel] < best) {
            best = weight[sel];
            best_group = groups[active[sel]];
          }
          break;
        }
        for (int i = 0; i < a; ++i)
          if (!added[i]) weight[i] += w[active[sel]][active[i]];
      }
      int s = active[prev], t = active[last];
      for (int i = 0; i < k; ++i) {
        w[s][i] += w[t][i];
        w[i][s] = w[s][i];
      }
      w[s][s] = 0;
      groups[s].insert(groups[s].end(), groups[t].begin(), groups[t].end());
      active.erase(active.begin() + last);
    }
    if (best >= c_) return {};
    std::vector<char> side(k, 0);
    for (int i : best_group) side[i] = 1;
    return side;
  }

  int c_;
  const DynamicGraph* g_;
  std::vector<EdgeId> edges_;
  std::unordered_map<EdgeId, int> pos_;
  std::vector<EdgeId> cache_;
  bool stale_ = true;
  long long recomputations_ = 0;
  std::vector<int> start_;
  std::vector<EdgeId> adj_;
};

// Deletes cut edges reported by the oracle until every component of the
// tracked graph is c-edge-connected. Each deletion goes through the tracker so
// split events reach on_split. Returns the removed edges in removal order.
template <class OnSplit>
std::vector<EdgeId> prune_to_c_components(CutOracle& oracle, ComponentTracker& tracker, SubgraphMask* mask,
                                          OnSplit&& on_split) {
  std::vector<EdgeId> removed;
  while (auto e = oracle.find_cut_edge()) {
    oracle.erase(*e);
    if (mask) mask->reset(*e);
    removed.push_back(*e);
    if (auto ev = tracker.erase(*e)) on_split(*ev);
  }
  return removed;
}

inline std::vector<EdgeId> prune_to_c_components(CutOracle& oracle, ComponentTracker& tracker,
                                                 SubgraphMask* mask = nullptr) {
  return prune_to_c_components(oracle, tracker, mask, [](const SplitEvent&) {});
}

}  // namespace deconn
