#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "deconn/component_tracker.hpp"
#include "deconn/graph.hpp"

namespace deconn {

// Explicit boundary list L(C) for every component of a partition that only
// refines, over an edge set that changes one edge at a time. Each boundary
// edge sits in exactly two lists and knows both positions.
class ExactBoundary {
 public:
  ExactBoundary() = default;

  // comp_of: initial partition (component IDs as issued by the companion tracker).
  ExactBoundary(const DynamicGraph& g, std::vector<int> comp_of, int component_count)
      : g_(&g), comp_of_(std::move(comp_of)), adj_(g.vertex_count()), lists_(component_count) {}

  static ExactBoundary from_tracker(const DynamicGraph& g, const ComponentTracker& t) {
    std::vector<int> comp(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) comp[v] = t.component_id(v);
    return ExactBoundary(g, std::move(comp), t.component_count());
  }

  int component_of(Vertex v) const { return comp_of_[v]; }
  bool contains(EdgeId e) const { return slots_.count(e) != 0; }
  int edge_count() const { return static_cast<int>(slots_.size()); }
  long long touches() const { return touches_; }

  const std::vector<EdgeId>& boundary(int comp) const { return lists_.at(comp); }
  int size(int comp) const { return static_cast<int>(lists_.at(comp).size()); }

  // Returns the components whose list gained e (-1 for none).
  std::array<int, 2> insert(EdgeId e) {
    if (slots_.count(e)) throw std::logic_error("boundary: edge " + std::to_string(e) + " already present");
    const Edge& ed = g_->endpoints(e);
    Slot& s = slots_[e];
    s.adj_u = static_cast<int>(adj_[ed.u].size());
    adj_[ed.u].push_back(e);
    s.adj_v = static_cast<int>(adj_[ed.v].size());
    adj_[ed.v].push_back(e);
    int cu = comp_of_[ed.u], cv = comp_of_[ed.v];
    if (cu == cv) return {-1, -1};
    list_add(e, s, 0, cu);
    list_add(e, s, 1, cv);
    return {cu, cv};
  }

  // Returns the components whose list lost e (-1 for none).
  std::array<int, 2> erase(EdgeId e) {
    auto it = slots_.find(e);
    if (it == slots_.end()) throw std::logic_error("boundary: edge " + std::to_string(e) + " not present");
    const Edge& ed = g_->endpoints(e);
    adj_remove(ed.u, it->second.adj_u, e);
    adj_remove(ed.v, it->second.adj_v, e);
    std::array<int, 2> changed = it->second.comp;
    for (int c : changed)
      if (c >= 0) list_remove(c, e);
    slots_.erase(e);
    return changed;
  }

  // Moves A's vertices to ev.new_id and fixes lists by scanning E(A, V).
  void on_split(const SplitEvent& ev) {
    if (ev.new_id >= static_cast<int>(lists_.size())) lists_.resize(ev.new_id + 1);
    for (Vertex a : ev.A) comp_of_[a] = ev.new_id;
    for (Vertex a : ev.A) {
      for (EdgeId e : adj_[a]) {
        ++touches_;
        Vertex w = g_->other(e, a);
        int cw = comp_of_[w];
        if (cw == ev.new_id) continue;
        Slot& s = slots_.at(e);
        if (cw == ev.j) {
          list_add(e, s, 0, ev.j);
          list_add(e, s, 1, ev.new_id);
        } else {
          int k = list_remove(ev.j, e);
          list_add(e, s, k, ev.new_id);
        }
      }
    }
  }

 private:
  struct Slot {
    int adj_u = -1, adj_v = -1;
    std::array<int, 2> comp{-1, -1};
    std::array<int, 2> pos{-1, -1};
  };

  void list_add(EdgeId e, Slot& s, int k, int comp) {
    auto& list = lists_[comp];
    s.comp[k] = comp;
    s.pos[k] = static_cast<int>(list.size());
    list.push_back(e);
  }

  // Removes e from L(comp); returns the freed slot index of e.
  int list_remove(int comp, EdgeId e) {
    Slot& s = slots_.at(e);
    int k = s.comp[0] == comp ? 0 : 1;
    auto& list = lists_[comp];
    int pos = s.pos[k];
    if (s.comp[k] != comp || pos < 0 || pos >= static_cast<int>(list.size()) || list[pos] != e)
      throw std::logic_error("boundary: stale back-reference for edge " + std::to_string(e));
    EdgeId last = list.back();
    list[pos] = last;
    list.pop_back();
    if (last != e) {
      Slot& ls = slots_.at(last);
      ls.pos[ls.comp[0] == comp ? 0 : 1] = pos;
    }
    s.comp[k] = -1;
    s.pos[k] = -1;
    return k;
  }

  void adj_remove(Vertex v, int pos, EdgeId e) {
    auto& list = adj_[v];
    EdgeId last = list.back();
    list[pos] = last;
    list.pop_back();
    if (last != e) {
      Slot& ls = slots_.at(last);
      if (g_->endpoints(last).u == v)
        ls.adj_u = pos;
      else
        ls.adj_v = pos;
    }
  }

  const DynamicGraph* g_ = nullptr;
  std::vector<int> comp_of_;
  std::vector<std::vector<EdgeId>> adj_;
  std::vector<std::vector<EdgeId>> lists_;
  std::unordered_map<EdgeId, Slot> slots_;
  long long touches_ = 0;
};

}  // namespace deconn
