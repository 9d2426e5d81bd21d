#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "deconn/graph.hpp"
#include "deconn/random.hpp"

namespace deconn {

struct BoundaryQuery {
  std::vector<EdgeId> edges;    // sorted
  std::vector<int> buckets;     // hit buckets, sorted
  long long examined = 0;       // distinct candidate edges looked at
};

// Bucketed XOR fingerprints: x_v(j) is the XOR of fp(e) over present edges
// e at v assigned to bucket j. Internal edges of S cancel in the XOR over S,
// so non-zero buckets point at boundary edges.
class XorBoundarySketch {
 public:
  XorBoundarySketch(const DynamicGraph& g, int s, int gamma, std::uint64_t seed)
      : g_(&g), n_(g.vertex_count()), s_(s), gamma_(gamma), seed_(seed) {
    if (s < 1) throw std::invalid_argument("sketch: bucket count must be >= 1");
    if (s > std::max(1, n_)) throw std::invalid_argument("sketch: bucket count must be <= n");
    bits_ = fingerprint_bits(gamma, n_);
    words_ = (bits_ + 63) / 64;
    if (words_ > kMaxFingerprintWords) throw std::invalid_argument("sketch: fingerprint too long");
    x_.assign(static_cast<std::size_t>(n_) * s_ * words_, 0);
    bucket_of_.assign(g.edge_count(), -1);
    slot_.assign(g.edge_count(), {-1, -1});
    fp_key_ = hash_at(seed, static_cast<std::uint64_t>(Stream::kFingerprint));
    bucket_key_ = hash_at(seed, static_cast<std::uint64_t>(Stream::kBucket));
  }

  int buckets() const { return s_; }
  int fingerprint_length() const { return bits_; }
  std::size_t fingerprint_slots() const { return static_cast<std::size_t>(n_) * s_; }
  bool contains(EdgeId e) const { return bucket_of_[e] >= 0; }
  int present_count() const { return present_; }

  int bucket(EdgeId e) const { return static_cast<int>(hash_at(bucket_key_, static_cast<std::uint64_t>(e)) % s_); }
  Fingerprint edge_fingerprint(EdgeId e) const { return fingerprint(fp_key_, e, gamma_, n_); }

  Fingerprint value(Vertex v, int j) const {
    Fingerprint f;
    f.bits = bits_;
    const std::uint64_t* p = &x_[(static_cast<std::size_t>(v) * s_ + j) * words_];
    for (int w = 0; w < words_; ++w) f.words[w] = p[w];
    return f;
  }

  void insert(EdgeId e) {
    if (!g_->alive(e)) throw std::logic_error("sketch: insert of dead edge " + std::to_string(e));
    if (contains(e)) throw std::logic_error("sketch: edge " + std::to_string(e) + " already present");
    int j = bucket(e);
    bucket_of_[e] = j;
    toggle(e, j);
    const Edge& ed = g_->endpoints(e);
    slot_[e] = {push(ed.u, j, e), push(ed.v, j, e)};
    ++present_;
  }

  void erase(EdgeId e) {
    if (e < 0 || e >= static_cast<EdgeId>(bucket_of_.size()) || !contains(e))
      throw std::logic_error("sketch: edge " + std::to_string(e) + " not present");
    int j = bucket_of_[e];
    toggle(e, j);
    const Edge& ed = g_->endpoints(e);
    pop(ed.u, j, e, slot_[e].first);
    pop(ed.v, j, e, slot_[e].second);
    bucket_of_[e] = -1;
    slot_[e] = {-1, -1};
    --present_;
  }

  // y(i) = XOR over v in S of x_v(i); returns {i : y(i) != 0}.
  std::vector<int> buckets_hit(std::span<const Vertex> S) const {
    std::vector<std::uint64_t> y(static_cast<std::size_t>(s_) * words_, 0);
    for (Vertex v : S) {
      const std::uint64_t* p = &x_[static_cast<std::size_t>(v) * s_ * words_];
      for (std::size_t k = 0; k < y.size(); ++k) y[k] ^= p[k];
    }
    std::vector<int> hit;
    for (int i = 0; i < s_; ++i) {
      bool nz = false;
      for (int w = 0; w < words_; ++w) nz |= y[static_cast<std::size_t>(i) * words_ + w] != 0;
      if (nz) hit.push_back(i);
    }
    return hit;
  }

  // Boundary of S among present edges; exact unless a bucket's boundary
  // fingerprints XOR to zero, in which case that bucket's edges are missed.
  BoundaryQuery find_boundary(std::span<const Vertex> S) const {
    BoundaryQuery q;
    q.buckets = buckets_hit(S);
    if (q.buckets.empty()) return q;
    if (static_cast<int>(mark_.size()) < n_) mark_.assign(n_, 0);
    ++stamp_;
    for (Vertex v : S) mark_[v] = stamp_;
    long long visits = 0, internal_visits = 0;
    for (Vertex v : S) {
      for (int i : q.buckets) {
        auto it = lists_.find(key(v, i));
        if (it == lists_.end()) continue;
        for (EdgeId e : it->second) {
          ++visits;
          if (mark_[g_->other(e, v)] == stamp_)
            ++internal_visits;
          else
            q.edges.push_back(e);
        }
      }
    }
    // Internal edges are seen from both ends, boundary edges once.
    q.examined = (visits - internal_visits) + internal_visits / 2;
    std::sort(q.edges.begin(), q.edges.end());
    return q;
  }

  // Recomputes every x_v(j) from the present edge set.
  bool matches_rebuild() const {
    std::vector<std::uint64_t> fresh(x_.size(), 0);
    for (EdgeId e = 0; e < static_cast<EdgeId>(bucket_of_.size()); ++e) {
      if (!contains(e)) continue;
      Fingerprint fp = edge_fingerprint(e);
      const Edge& ed = g_->endpoints(e);
      for (Vertex v : {ed.u, ed.v})
        for (int w = 0; w < words_; ++w)
          fresh[(static_cast<std::size_t>(v) * s_ + bucket_of_[e]) * words_ + w] ^= fp.words[w];
    }
    return fresh == x_;
  }

  bool all_zero() const {
    return std::all_of(x_.begin(), x_.end(), [](std::uint64_t w) { return w == 0; });
  }

 private:
  std::uint64_t key(Vertex v, int j) const { return static_cast<std::uint64_t>(v) * s_ + j; }

  void toggle(EdgeId e, int j) {
    Fingerprint fp = edge_fingerprint(e);
    const Edge& ed = g_->endpoints(e);
    for (Vertex v : {ed.u, ed.v}) {
      std::uint64_t* p = &x_[(static_cast<std::size_t>(v) * s_ + j) * words_];
      for (int w = 0; w < words_; ++w) p[w] ^= fp.words[w];
    }
  }

  int push(Vertex v, int j, EdgeId e) {
    auto& list = lists_[key(v, j)];
    list.push_back(e);
    return static_cast<int>(list.size()) - 1;
  }

  void pop(Vertex v, int j, EdgeId e, int pos) {
    auto it = lists_.find(key(v, j));
    auto& list = it->second;
    EdgeId last = list.back();
    list[pos] = last;
    list.pop_back();
    if (last != e) {
      if (g_->endpoints(last).u == v)
        slot_[last].first = pos;
      else
        slot_[last].second = pos;
    }
    if (list.empty()) lists_.erase(it);
  }

  const DynamicGraph* g_;
  int n_, s_, gamma_;
  std::uint64_t seed_;
  int bits_ = 0, words_ = 1;
  std::uint64_t fp_key_ = 0, bucket_key_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<int> bucket_of_;
  std::vector<std::pair<int, int>> slot_;
  std::unordered_map<std::uint64_t, std::vector<EdgeId>> lists_;
  int present_ = 0;
  mutable std::vector<unsigned> mark_;
  mutable unsigned stamp_ = 0;
};

}  // namespace deconn
