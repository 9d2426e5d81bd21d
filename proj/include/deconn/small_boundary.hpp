#pragma once

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <utility>
#include <vector>

#include "deconn/component_tracker.hpp"
#include "deconn/exact_boundary.hpp"
#include "deconn/graph.hpp"
#include "deconn/random.hpp"
#include "deconn/xor_boundary.hpp"

namespace deconn {

// Keeps ∂(C) in a decremental edge set (G_ell) explicit for the components C
// of several refining partitions (one per level) while the boundary is small.
// Smallness is judged on a Bernoulli(q) sample R: |∂_R(C)| <= 2qδ. Components
// that were ever small form a laminar family; each current component points to
// the smallest member strictly containing it, which lets a large half compute
// its boundary as ∂(parent) XOR-difference ∂(parent \ C).
class SmallBoundaryMaintainer {
 public:
  struct Stats {
    long long direct_queries = 0;
    long long difference_queries = 0;
    long long inconsistent = 0;     // stored boundary larger than 4δ
    long long references = 0;       // total reference insertions
  };

  SmallBoundaryMaintainer(const DynamicGraph& g, const SubgraphMask& present, double q, int delta, int buckets,
                          int gamma, std::uint64_t seed)
      : g_(&g),
        q_(q),
        delta_(delta),
        sketch_(g, buckets, gamma, seed),
        r_(bernoulli_mask(hash_at(seed, static_cast<std::uint64_t>(Stream::kBernoulliR)), g, q)),
        refs_(g.edge_count()) {
    present.for_each([&](EdgeId e) {
      if (g.alive(e)) sketch_.insert(e);
    });
    // R is a sample of the present edges only.
    for (EdgeId e : r_.edges())
      if (!present.test(e)) r_.reset(e);
  }

  double threshold() const { return 2.0 * q_ * delta_; }
  const SubgraphMask& sample() const { return r_; }
  const XorBoundarySketch& sketch() const { return sketch_; }
  const Stats& stats() const { return stats_; }
  int level_count() const { return static_cast<int>(levels_.size()); }

  // Registers the partition given by tracker as a new level; returns its index.
  int attach(const ComponentTracker& tracker) {
    int lvl = static_cast<int>(levels_.size());
    levels_.push_back(Level{});
    Level& L = levels_.back();
    L.tracker = &tracker;
    L.r_boundary = ExactBoundary::from_tracker(*g_, tracker);
    r_.for_each([&](EdgeId e) { L.r_boundary.insert(e); });
    int n = g_->vertex_count();
    Node root;
    root.vertices.resize(n);
    for (Vertex v = 0; v < n; ++v) root.vertices[v] = v;
    L.nodes.push_back(std::move(root));
    int k = tracker.component_count();
    L.node_of.assign(k, -1);
    L.parent_of.assign(k, 0);
    for (int c = 0; c < k; ++c) {
      if (tracker.component_size(c) == n) {
        L.node_of[c] = 0;
        L.nodes[0].comp = c;
      } else if (classify(lvl, c)) {
        on_become_small(lvl, c);
      }
    }
    return lvl;
  }

  bool classify(int lvl, int comp) const { return levels_[lvl].r_boundary.size(comp) <= threshold(); }

  bool has_boundary(int lvl, int comp) const {
    const Level& L = levels_[lvl];
    return comp < static_cast<int>(L.node_of.size()) && L.node_of[comp] >= 0;
  }
  const std::unordered_set<EdgeId>& stored_boundary(int lvl, int comp) const {
    const Level& L = levels_[lvl];
    return L.nodes[L.node_of[comp]].stored;
  }
  int r_boundary_size(int lvl, int comp) const { return levels_[lvl].r_boundary.size(comp); }
  const ExactBoundary& r_boundary(int lvl) const { return levels_[lvl].r_boundary; }

  int family_size(int lvl) const { return static_cast<int>(levels_[lvl].nodes.size()); }
  const std::vector<Vertex>& family_member(int lvl, int node) const { return levels_[lvl].nodes[node].vertices; }
  int family_parent(int lvl, int node) const { return levels_[lvl].nodes[node].parent; }
  int parent_node(int lvl, int comp) const { return levels_[lvl].parent_of[comp]; }

  // Components whose known boundary changed since the last drain.
  std::vector<std::pair<int, int>> drain_changed() { return std::exchange(changed_, {}); }

  void on_split(int lvl, const SplitEvent& ev) {
    Level& L = levels_[lvl];
    L.r_boundary.on_split(ev);
    if (ev.new_id >= static_cast<int>(L.node_of.size())) {
      L.node_of.resize(ev.new_id + 1, -1);
      L.parent_of.resize(ev.new_id + 1, 0);
    }
    int own = L.node_of[ev.j];
    int par = own >= 0 ? own : L.parent_of[ev.j];
    if (own >= 0) L.nodes[own].comp = -1;
    L.node_of[ev.j] = L.node_of[ev.new_id] = -1;
    L.parent_of[ev.j] = L.parent_of[ev.new_id] = par;
    for (int c : {ev.new_id, ev.j}) {
      if (classify(lvl, c)) on_become_small(lvl, c);
      changed_.push_back({lvl, c});
    }
  }

  // Stores ∂(C) for a component just classified small.
  void on_become_small(int lvl, int comp) {
    Level& L = levels_[lvl];
    const ComponentTracker& t = *L.tracker;
    int par = L.parent_of[comp];
    std::vector<Vertex> verts = t.component_vertices(comp);
    std::vector<EdgeId> boundary;
    const Node& pn = L.nodes[par];
    if (2 * verts.size() <= pn.vertices.size()) {
      ++stats_.direct_queries;
      boundary = sketch_.find_boundary(verts).edges;
    } else {
      ++stats_.difference_queries;
      std::vector<Vertex> rest;
      for (Vertex v : pn.vertices)
        if (t.component_id(v) != comp) rest.push_back(v);
      std::vector<EdgeId> other = rest.empty() ? std::vector<EdgeId>{} : sketch_.find_boundary(rest).edges;
      std::vector<EdgeId> mine(pn.stored.begin(), pn.stored.end());
      std::sort(mine.begin(), mine.end());
      std::set_symmetric_difference(mine.begin(), mine.end(), other.begin(), other.end(),
                                    std::back_inserter(boundary));
    }
    if (static_cast<long long>(boundary.size()) > 4LL * delta_) ++stats_.inconsistent;
    int id = static_cast<int>(L.nodes.size());
    Node node;
    node.parent = par;
    node.comp = comp;
    node.vertices = std::move(verts);
    node.stored.insert(boundary.begin(), boundary.end());
    L.nodes.push_back(std::move(node));
    L.node_of[comp] = id;
    for (EdgeId e : boundary) refs_[e].push_back({lvl, id});
    stats_.references += static_cast<long long>(boundary.size());
    changed_.push_back({lvl, comp});
  }

  // e leaves the present edge set.
  void on_edge_deleted(EdgeId e) {
    sketch_.erase(e);
    if (r_.reset(e)) {
      for (int lvl = 0; lvl < level_count(); ++lvl) {
        Level& L = levels_[lvl];
        for (int c : L.r_boundary.erase(e)) {
          if (c < 0) continue;
          if (L.node_of[c] < 0 && classify(lvl, c)) on_become_small(lvl, c);
        }
      }
    }
    for (auto [lvl, node] : refs_[e]) {
      Node& nd = levels_[lvl].nodes[node];
      nd.stored.erase(e);
      if (nd.comp >= 0) changed_.push_back({lvl, nd.comp});
    }
    refs_[e].clear();
    refs_[e].shrink_to_fit();
  }

 private:
  struct Node {
    int parent = -1;
    int comp = -1;  // current component equal to this set, or -1
    std::vector<Vertex> vertices;
    std::unordered_set<EdgeId> stored;
  };
  struct Level {
    const ComponentTracker* tracker = nullptr;
    ExactBoundary r_boundary;
    std::vector<Node> nodes;
    std::vector<int> node_of;
    std::vector<int> parent_of;
  };

  const DynamicGraph* g_;
  double q_;
  int delta_;
  XorBoundarySketch sketch_;
  SubgraphMask r_;
  std::vector<std::vector<std::pair<int, int>>> refs_;
  std::vector<Level> levels_;
  std::vector<std::pair<int, int>> changed_;
  Stats stats_;
};

}  // namespace deconn
