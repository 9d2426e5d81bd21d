#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "deconn/euler_tour.hpp"
#include "deconn/graph.hpp"

namespace deconn {

// Component j lost the vertex set A (the smaller side) to the new component new_id.
struct SplitEvent {
  int j = 0;
  int new_id = 0;
  std::vector<Vertex> A;
  long long time = 0;
};

// Connectivity of an edge subset under deletions and insertions that never
// join two components. Spanning forests use HDT edge levels over Euler-tour
// trees. Component IDs are never reused; the larger side keeps its ID.
class ComponentTracker {
 public:
  ComponentTracker() : ComponentTracker(nullptr, 0, nullptr, 0) {}

  ComponentTracker(const DynamicGraph& g, const SubgraphMask& mask, std::uint64_t seed = 0)
      : ComponentTracker(&g, g.vertex_count(), &mask, seed) {}

  // Tracker over g with no edges yet.
  ComponentTracker(const DynamicGraph& g, std::uint64_t seed) : ComponentTracker(&g, g.vertex_count(), nullptr, seed) {}

  int vertex_count() const { return n_; }
  int component_count() const { return static_cast<int>(members_.size()); }
  int edge_count() const { return static_cast<int>(info_.size()); }
  bool contains(EdgeId e) const { return info_.count(e) != 0; }
  long long time() const { return time_; }
  long long split_mass() const { return split_mass_; }
  const std::vector<SplitEvent>& split_log() const { return log_; }
  void set_keep_log(bool keep) { keep_log_ = keep; }

  int component_id(Vertex v) const { return comp_of_.at(v); }
  bool same_component(Vertex u, Vertex v) const { return comp_of_[u] == comp_of_[v]; }
  int component_size(int id) const { return static_cast<int>(members_.at(check_id(id)).size()); }
  std::vector<Vertex> component_vertices(int id) const {
    const auto& s = members_.at(check_id(id));
    return {s.begin(), s.end()};
  }
  const std::set<Vertex>& members(int id) const { return members_.at(check_id(id)); }
  Vertex min_vertex(int id) const { return *members_.at(check_id(id)).begin(); }

  std::vector<EdgeId> edges() const {
    std::vector<EdgeId> out;
    out.reserve(info_.size());
    for (const auto& [e, _] : info_) out.push_back(e);
    std::sort(out.begin(), out.end());
    return out;
  }

  void insert(EdgeId e) {
    const Edge& ed = g_->endpoints(e);
    if (info_.count(e)) throw std::logic_error("tracker: edge " + std::to_string(e) + " already tracked");
    if (comp_of_[ed.u] != comp_of_[ed.v])
      throw std::logic_error("tracker: insert of edge " + std::to_string(e) + " would merge components");
    ++time_;
    EdgeInfo& info = info_[e];
    info.u = ed.u;
    info.v = ed.v;
    add_nontree(e, info, 0);
  }

  std::optional<SplitEvent> erase(EdgeId e) {
    auto it = info_.find(e);
    if (it == info_.end()) throw std::logic_error("tracker: edge " + std::to_string(e) + " not tracked");
    ++time_;
    EdgeInfo info = std::move(it->second);
    info_.erase(it);
    if (!info.tree) {
      drop_nontree(e, info);
      return std::nullopt;
    }
    for (int i = 0; i <= info.level; ++i) forests_[i].cut(info.arcs[i]);
    if (find_replacement(info.u, info.v, info.level)) return std::nullopt;
    return split(info.u, info.v);
  }

 private:
  struct EdgeInfo {
    Vertex u = 0, v = 0;
    int level = 0;
    bool tree = false;
    int pos_u = -1, pos_v = -1;
    std::vector<EulerTourForest::Arcs> arcs;
  };

  ComponentTracker(const DynamicGraph* g, int n, const SubgraphMask* mask, std::uint64_t seed) : g_(g), n_(n) {
    levels_ = 1;
    while ((1 << levels_) <= n) ++levels_;
    forests_.reserve(levels_);
    for (int i = 0; i < levels_; ++i) forests_.emplace_back(n, hash_at(seed, static_cast<std::uint64_t>(i)));
    nontree_.assign(levels_, std::vector<std::vector<EdgeId>>(n));
    comp_of_.assign(n, -1);

    // Spanning forest by union-find in edge-ID order.
    std::vector<int> uf(n);
    for (int v = 0; v < n; ++v) uf[v] = v;
    auto find = [&](int x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    if (mask) {
      mask->for_each([&](EdgeId e) {
        if (!g->alive(e)) return;
        const Edge& ed = g->endpoints(e);
        EdgeInfo& info = info_[e];
        info.u = ed.u;
        info.v = ed.v;
        int a = find(ed.u), b = find(ed.v);
        if (a != b) {
          uf[a] = b;
          make_tree(e, info, 0);
        } else {
          add_nontree(e, info, 0);
        }
      });
    }
    std::vector<int> id_of_root(n, -1);
    for (Vertex v = 0; v < n; ++v) {
      int r = find(v);
      if (id_of_root[r] < 0) {
        id_of_root[r] = static_cast<int>(members_.size());
        members_.emplace_back();
      }
      comp_of_[v] = id_of_root[r];
      members_[comp_of_[v]].insert(v);
    }
  }

  int check_id(int id) const {
    if (id < 0 || id >= component_count()) throw std::out_of_range("tracker: stale component id " + std::to_string(id));
    return id;
  }

  void make_tree(EdgeId e, EdgeInfo& info, int level) {
    info.tree = true;
    info.level = level;
    info.arcs.resize(level + 1);
    for (int i = 0; i <= level; ++i) info.arcs[i] = forests_[i].link(info.u, info.v, e);
    forests_[level].set_arc_mark(info.arcs[level].forward, true);
  }

  void add_nontree(EdgeId e, EdgeInfo& info, int level) {
    info.tree = false;
    info.level = level;
    auto& lu = nontree_[level][info.u];
    auto& lv = nontree_[level][info.v];
    info.pos_u = static_cast<int>(lu.size());
    lu.push_back(e);
    if (lu.size() == 1) forests_[level].set_vertex_mark(info.u, true);
    info.pos_v = static_cast<int>(lv.size());
    lv.push_back(e);
    if (lv.size() == 1) forests_[level].set_vertex_mark(info.v, true);
  }

  void drop_nontree(EdgeId e, const EdgeInfo& info) {
    unlink(e, info.level, info.u, info.pos_u);
    unlink(e, info.level, info.v, info.pos_v);
  }

  void unlink(EdgeId e, int level, Vertex w, int pos) {
    auto& list = nontree_[level][w];
    EdgeId last = list.back();
    list[pos] = last;
    list.pop_back();
    if (last != e) {
      EdgeInfo& li = info_.at(last);
      if (li.u == w)
        li.pos_u = pos;
      else
        li.pos_v = pos;
    }
    if (list.empty()) forests_[level].set_vertex_mark(w, false);
  }

  bool find_replacement(Vertex u, Vertex v, int top) {
    for (int i = top; i >= 0; --i) {
      EulerTourForest& f = forests_[i];
      Vertex small = f.tree_size(u) <= f.tree_size(v) ? u : v;

      // Push the smaller tree's level-i tree edges one level up.
      for (int arc; (arc = f.find_marked_arc(small)) != 0;) {
        EdgeId t = f.arc_tag(arc);
        EdgeInfo& ti = info_.at(t);
        f.set_arc_mark(arc, false);
        ti.level = i + 1;
        ti.arcs.push_back(forests_[i + 1].link(ti.u, ti.v, t));
        forests_[i + 1].set_arc_mark(ti.arcs[i + 1].forward, true);
      }

      // Level-i non-tree edges at the smaller tree: either a replacement or pushed up.
      int small_root = f.tree_root(small);
      for (Vertex w; (w = f.find_marked_vertex(small)) >= 0;) {
        auto& list = nontree_[i][w];
        while (!list.empty()) {
          EdgeId x = list.back();
          EdgeInfo& xi = info_.at(x);
          drop_nontree(x, xi);
          Vertex other = xi.u == w ? xi.v : xi.u;
          if (f.tree_root(other) == small_root) {
            add_nontree(x, xi, i + 1);
          } else {
            make_tree(x, xi, i);
            return true;
          }
        }
      }
    }
    return false;
  }

  SplitEvent split(Vertex u, Vertex v) {
    EulerTourForest& f = forests_[0];
    int j = comp_of_[u];
    int su = f.tree_size(u), sv = f.tree_size(v);
    Vertex side;
    if (su != sv) {
      side = su < sv ? u : v;
    } else {
      Vertex lowest = *members_[j].begin();
      side = f.connected(lowest, u) ? v : u;
    }
    SplitEvent ev;
    ev.j = j;
    ev.new_id = component_count();
    ev.time = time_;
    f.collect_vertices(side, ev.A);
    std::sort(ev.A.begin(), ev.A.end());
    members_.emplace_back(ev.A.begin(), ev.A.end());
    for (Vertex x : ev.A) {
      members_[j].erase(x);
      comp_of_[x] = ev.new_id;
    }
    split_mass_ += static_cast<long long>(ev.A.size());
    if (keep_log_) log_.push_back(ev);
    return ev;
  }

  const DynamicGraph* g_;
  int n_;
  int levels_ = 1;
  std::vector<EulerTourForest> forests_;
  std::vector<std::vector<std::vector<EdgeId>>> nontree_;
  std::unordered_map<EdgeId, EdgeInfo> info_;
  std::vector<int> comp_of_;
  std::vector<std::set<Vertex>> members_;
  std::vector<SplitEvent> log_;
  bool keep_log_ = true;
  long long split_mass_ = 0;
  long long time_ = 0;
};

}  // namespace deconn
