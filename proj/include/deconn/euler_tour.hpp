#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "deconn/random.hpp"

namespace deconn {

// Euler-tour forest over a fixed vertex set, one implicit-key treap per tree.
// Each vertex owns one node; each tree edge owns two arc nodes. Nodes carry
// two mark bits whose subtree OR lets a search descend to any marked node.
class EulerTourForest {
 public:
  static constexpr std::uint8_t kArcMark = 1;
  static constexpr std::uint8_t kVertexMark = 2;

  struct Arcs {
    int forward = 0;
    int backward = 0;
  };

  EulerTourForest(int n, std::uint64_t seed) : n_(n), rng_(seed) {
    // Node 0 is the null sentinel.
    grow(n + 1);
    for (int v = 1; v <= n; ++v) init_node(v, -1);
  }

  int vertex_count() const { return n_; }

  bool connected(Vertex u, Vertex v) const { return root(u + 1) == root(v + 1); }
  int tree_size(Vertex v) const { return vcnt_[root(v + 1)]; }
  int tree_root(Vertex v) const { return root(v + 1); }

  Arcs link(Vertex u, Vertex v, int tag) {
    int ru = reroot(u + 1);
    int rv = reroot(v + 1);
    Arcs arcs{alloc(tag), alloc(tag)};
    int t = merge(merge(merge(ru, arcs.forward), rv), arcs.backward);
    par_[t] = 0;
    return arcs;
  }

  void cut(Arcs arcs) {
    int a = arcs.forward, b = arcs.backward;
    int r = root(a);
    int ia = index(a), ib = index(b);
    if (ia > ib) {
      std::swap(a, b);
      std::swap(ia, ib);
    }
    auto [x, rest] = split(r, ia);
    auto [middle, z] = split(rest, ib - ia + 1);
    auto [first, rest2] = split(middle, 1);
    auto [inner, last] = split(rest2, cnt_[rest2] - 1);
    (void)first;
    (void)last;
    (void)inner;
    int joined = merge(x, z);
    par_[joined] = 0;
    release(a);
    release(b);
  }

  int arc_tag(int arc) const { return tag_[arc]; }

  void set_vertex_mark(Vertex v, bool on) { set_mark(v + 1, kVertexMark, on); }
  void set_arc_mark(int arc, bool on) { set_mark(arc, kArcMark, on); }

  // Any marked arc in v's tree, or 0.
  int find_marked_arc(Vertex v) const { return find_marked(root(v + 1), kArcMark); }
  // Any vertex of v's tree carrying the vertex mark, or -1.
  Vertex find_marked_vertex(Vertex v) const {
    int x = find_marked(root(v + 1), kVertexMark);
    return x ? x - 1 : -1;
  }

  void collect_vertices(Vertex v, std::vector<Vertex>& out) const {
    std::vector<int> stack{root(v + 1)};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      if (!x) continue;
      if (x <= n_) out.push_back(x - 1);
      stack.push_back(left_[x]);
      stack.push_back(right_[x]);
    }
  }

 private:
  void grow(int size) {
    left_.resize(size, 0);
    right_.resize(size, 0);
    par_.resize(size, 0);
    pri_.resize(size, 0);
    cnt_.resize(size, 0);
    vcnt_.resize(size, 0);
    own_.resize(size, 0);
    agg_.resize(size, 0);
    tag_.resize(size, -1);
  }

  void init_node(int x, int tag) {
    left_[x] = right_[x] = par_[x] = 0;
    pri_[x] = static_cast<std::uint32_t>(rng_());
    cnt_[x] = 1;
    vcnt_[x] = x <= n_ ? 1 : 0;
    own_[x] = agg_[x] = 0;
    tag_[x] = tag;
  }

  int alloc(int tag) {
    int x;
    if (!free_.empty()) {
      x = free_.back();
      free_.pop_back();
    } else {
      x = static_cast<int>(left_.size());
      grow(x + 1);
    }
    init_node(x, tag);
    return x;
  }

  void release(int x) {
    left_[x] = right_[x] = par_[x] = 0;
    own_[x] = agg_[x] = 0;
    tag_[x] = -1;
    free_.push_back(x);
  }

  void update(int x) {
    cnt_[x] = 1 + cnt_[left_[x]] + cnt_[right_[x]];
    vcnt_[x] = (x <= n_ ? 1 : 0) + vcnt_[left_[x]] + vcnt_[right_[x]];
    agg_[x] = own_[x] | agg_[left_[x]] | agg_[right_[x]];
  }

  int root(int x) const {
    while (par_[x]) x = par_[x];
    return x;
  }

  int index(int x) const {
    int i = cnt_[left_[x]];
    while (par_[x]) {
      int p = par_[x];
      if (right_[p] == x) i += cnt_[left_[p]] + 1;
      x = p;
    }
    return i;
  }

  // First k nodes, remainder. Both results have parent 0.
  std::pair<int, int> split(int t, int k) {
    auto res = split_rec(t, k);
    par_[res.first] = 0;
    par_[res.second] = 0;
    return res;
  }

  std::pair<int, int> split_rec(int t, int k) {
    if (!t) return {0, 0};
    if (cnt_[left_[t]] >= k) {
      auto [a, b] = split_rec(left_[t], k);
      left_[t] = b;
      if (b) par_[b] = t;
      update(t);
      return {a, t};
    }
    auto [a, b] = split_rec(right_[t], k - cnt_[left_[t]] - 1);
    right_[t] = a;
    if (a) par_[a] = t;
    update(t);
    return {t, b};
  }

  int merge(int a, int b) {
    if (!a) return b;
    if (!b) return a;
    if (pri_[a] > pri_[b]) {
      int r = merge(right_[a], b);
      right_[a] = r;
      par_[r] = a;
      update(a);
      return a;
    }
    int l = merge(a, left_[b]);
    left_[b] = l;
    par_[l] = b;
    update(b);
    return b;
  }

  int reroot(int x) {
    int r = root(x);
    auto [a, b] = split(r, index(x));
    int t = merge(b, a);
    par_[t] = 0;
    return t;
  }

  void set_mark(int x, std::uint8_t bit, bool on) {
    own_[x] = on ? (own_[x] | bit) : (own_[x] & ~bit);
    for (; x; x = par_[x]) update(x);
  }

  int find_marked(int x, std::uint8_t bit) const {
    if (!(agg_[x] & bit)) return 0;
    while (!(own_[x] & bit)) x = (agg_[left_[x]] & bit) ? left_[x] : right_[x];
    return x;
  }

  int n_;
  CounterRng rng_;
  std::vector<int> left_, right_, par_;
  std::vector<std::uint32_t> pri_;
  std::vector<int> cnt_, vcnt_;
  std::vector<std::uint8_t> own_, agg_;
  std::vector<int> tag_;
  std::vector<int> free_;
};

}  // namespace deconn
