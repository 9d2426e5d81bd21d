#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include "deconn/certificate.hpp"
#include "deconn/component_tracker.hpp"
#include "deconn/cut_oracle.hpp"
#include "deconn/graph.hpp"
#include "deconn/random.hpp"

namespace deconn {

// Component old_id lost vertices to the new component new_id.
struct SplitNotification {
  int old_id = 0;
  int new_id = 0;
  std::vector<Vertex> vertices;  // sorted
};

struct BridgeEvent {
  long long update = 0;
  EdgeId edge = -1;
};

// c-edge-connected components of a graph under edge deletions, maintained on
// the sparse certificate. The certificate's net change is applied insertions
// first so the trackers never see an insertion that merges components.
class DecrementalConnectivity {
 public:
  DecrementalConnectivity(DynamicGraph g, int c, std::uint64_t seed,
                          std::optional<CertificateParams> params = std::nullopt)
      : c_(c) {
    // c = 3 runs on the recompute cut oracle only.
    if (c < 1 || c > 3) throw std::invalid_argument("connectivity: c must be 1, 2 or 3");
    CertificateParams P = params ? *params : CertificateParams::defaults(g.vertex_count(), c);
    P.c = c;
    engine_ = std::make_unique<CertificateEngine>(std::move(g), P, seed);
    const DynamicGraph& G = engine_->graph();
    MasterSeed ms(seed);
    SubgraphMask cert = engine_->certificate_mask();
    conn_ = ComponentTracker(G, cert, ms.derive(Stream::kTreap, 1u << 20));
    if (c_ >= 2) {
      cc_ = ComponentTracker(G, cert, ms.derive(Stream::kTreap, (1u << 20) + 1));
      oracle_ = std::make_unique<NaiveCutOracle>(c_, G, cert);
      prune_cuts(nullptr);
    }
  }

  int c() const { return c_; }
  const DynamicGraph& graph() const { return engine_->graph(); }
  const CertificateEngine& engine() const { return *engine_; }
  long long update_index() const { return engine_->update_index(); }

  // Deletes e; returns the split notifications of the public partition.
  std::vector<SplitNotification> erase(EdgeId e) {
    CertDelta delta = engine_->erase(e);
    std::vector<SplitNotification> out;
    apply(delta, &out);
    return out;
  }

  // Public partition: c-edge-connected components.
  int component_id(Vertex v) const { return tracker().component_id(v); }
  bool same_component(Vertex u, Vertex v) const {
    ++comparisons_;
    return tracker().same_component(u, v);
  }
  int component_size(int id) const { return tracker().component_size(id); }
  std::vector<Vertex> component_vertices(int id) const { return tracker().component_vertices(id); }
  int component_id_bound() const { return tracker().component_count(); }
  long long comparisons() const { return comparisons_; }

  // Plain connectivity of the certificate, available in every mode.
  bool connected(Vertex u, Vertex v) const { return conn_.same_component(u, v); }
  int connected_size(Vertex v) const { return conn_.component_size(conn_.component_id(v)); }

  // Certificate edges kept out of the public partition: pruned cut edges plus
  // edges whose insertion would have merged components.
  std::vector<EdgeId> non_component_edges() const {
    std::vector<EdgeId> out(pruned_.begin(), pruned_.end());
    out.insert(out.end(), stray_.begin(), stray_.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  // c = 2: every edge that has become a bridge, once, in order.
  const std::vector<BridgeEvent>& bridge_report() const { return bridges_; }

  bool violation() const { return violation_; }

  SelfCheckReport finalize() {
    SelfCheckReport r = engine_->finalize();
    if (r.pass && violation_) {
      r.pass = false;
      r.edge = violation_edge_;
      r.update = violation_update_;
      r.reason = "certificate insertion would have merged components";
    }
    return r;
  }

  bool inject_omission(EdgeId e) {
    auto d = engine_->inject_omission(e);
    if (!d) return false;
    apply(*d, nullptr);
    return true;
  }

  long long max_split_mass() const {
    long long best = std::max(engine_->max_split_mass(), conn_.split_mass());
    if (c_ >= 2) best = std::max(best, cc_.split_mass());
    return best;
  }

 private:
  const ComponentTracker& tracker() const { return c_ == 1 ? conn_ : cc_; }

  void note_violation(EdgeId e) {
    if (violation_) return;
    violation_ = true;
    violation_edge_ = e;
    violation_update_ = engine_->update_index();
  }

  void apply(const CertDelta& delta, std::vector<SplitNotification>* out) {
    for (EdgeId f : delta.inserted) {
      const Edge& ed = graph().endpoints(f);
      if (!conn_.same_component(ed.u, ed.v)) {
        note_violation(f);
        stray_.insert(f);
        continue;
      }
      conn_.insert(f);
      if (c_ >= 2) {
        if (!cc_.same_component(ed.u, ed.v)) {
          note_violation(f);
          stray_.insert(f);
          continue;
        }
        cc_.insert(f);
        oracle_->insert(f);
      }
    }
    for (EdgeId f : delta.deleted) {
      if (stray_.erase(f)) {
        if (conn_.contains(f)) conn_.erase(f);
        continue;
      }
      if (auto ev = conn_.erase(f); ev && c_ == 1) notify(*ev, out);
      if (c_ >= 2) {
        if (pruned_.erase(f)) continue;
        oracle_->erase(f);
        if (auto ev = cc_.erase(f)) notify(*ev, out);
      }
    }
    if (c_ >= 2) prune_cuts(out);
  }

  void prune_cuts(std::vector<SplitNotification>* out) {
    while (auto f = oracle_->find_cut_edge()) {
      oracle_->erase(*f);
      pruned_.insert(*f);
      if (c_ == 2) bridges_.push_back({engine_->update_index(), *f});
      if (auto ev = cc_.erase(*f)) notify(*ev, out);
    }
  }

  static void notify(const SplitEvent& ev, std::vector<SplitNotification>* out) {
    if (out) out->push_back({ev.j, ev.new_id, ev.A});
  }

  int c_;
  std::unique_ptr<CertificateEngine> engine_;
  ComponentTracker conn_;   // connectivity of the certificate
  ComponentTracker cc_;     // c >= 2: certificate minus pruned cut edges
  std::unique_ptr<NaiveCutOracle> oracle_;
  std::set<EdgeId> pruned_, stray_;
  std::vector<BridgeEvent> bridges_;
  bool violation_ = false;
  EdgeId violation_edge_ = -1;
  long long violation_update_ = -1;
  mutable long long comparisons_ = 0;
};

enum class MatchingKind { kUnique, kNotUnique, kNoPerfectMatching };

inline const char* to_string(MatchingKind k) {
  switch (k) {
    case MatchingKind::kUnique: return "unique";
    case MatchingKind::kNotUnique: return "not_unique";
    default: return "no_perfect_matching";
  }
}

struct MatchingVerdict {
  MatchingKind kind = MatchingKind::kNoPerfectMatching;
  std::vector<EdgeId> matching;  // sorted, set when unique
  int attempts = 0;
};

namespace detail {

// Perfect matching existence on the vertices flagged in `active`.
inline bool has_perfect_matching(const DynamicGraph& g, const std::vector<char>& active) {
  int n = g.vertex_count();
  std::vector<int> local(n, -1);
  int k = 0;
  for (Vertex v = 0; v < n; ++v)
    if (active[v]) local[v] = k++;
  if (k % 2) return false;
  if (k == 0) return true;
  using BG = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BG bg(k);
  for (EdgeId e : g.alive_edges()) {
    const Edge& ed = g.endpoints(e);
    if (local[ed.u] >= 0 && local[ed.v] >= 0) boost::add_edge(local[ed.u], local[ed.v], bg);
  }
  std::vector<boost::graph_traits<BG>::vertex_descriptor> mate(k);
  boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
  return 2 * static_cast<int>(boost::matching_size(bg, &mate[0])) == k;
}

}  // namespace detail

// Decides whether g has exactly one perfect matching by repeatedly matching
// or discarding bridges. A run whose self-check fails is repeated with a fresh
// seed; after retry_cap failures a runtime_error is thrown.
inline MatchingVerdict unique_perfect_matching(const DynamicGraph& g, std::uint64_t seed, int retry_cap = 8,
                                               std::optional<CertificateParams> params = std::nullopt) {
  MasterSeed ms(seed);
  for (int attempt = 0; attempt < retry_cap; ++attempt) {
    DecrementalConnectivity dc(g, 2, ms.derive(Stream::kRetry, attempt), params);
    const DynamicGraph& G = dc.graph();
    int n = G.vertex_count();
    std::vector<char> matched(n, 0);
    MatchingVerdict v;
    v.attempts = attempt + 1;
    bool odd = n % 2 != 0;
    for (Vertex x = 0; x < n && !odd; ++x) odd = dc.connected_size(x) % 2 != 0;
    auto odd_at = [&](Vertex x) { return !matched[x] && dc.connected_size(x) % 2 != 0; };
    while (!odd) {
      std::vector<EdgeId> cand = dc.non_component_edges();
      EdgeId b = -1;
      for (EdgeId e : cand)
        if (G.alive(e)) {
          b = e;
          break;
        }
      if (b < 0) break;
      Edge ed = G.endpoints(b);
      dc.erase(b);
      std::vector<Vertex> touched{ed.u, ed.v};
      int su = dc.connected_size(ed.u), sv = dc.connected_size(ed.v);
      if (su % 2 != sv % 2) throw std::logic_error("unique_perfect_matching: bridge sides differ in parity");
      if (su % 2 != 0) {
        for (Vertex x : {ed.u, ed.v}) {
          std::vector<EdgeId> inc(G.incident(x).begin(), G.incident(x).end());
          for (EdgeId f : inc) {
            touched.push_back(G.other(f, x));
            dc.erase(f);
          }
        }
        matched[ed.u] = matched[ed.v] = 1;
        v.matching.push_back(b);
      }
      for (Vertex x : touched) odd = odd || odd_at(x);
    }
    if (odd) {
      v.kind = MatchingKind::kNoPerfectMatching;
      v.matching.clear();
    } else {
      std::vector<char> active(n);
      bool all = true;
      for (Vertex x = 0; x < n; ++x) {
        active[x] = !matched[x];
        all = all && matched[x];
      }
      if (all) {
        v.kind = MatchingKind::kUnique;
        std::sort(v.matching.begin(), v.matching.end());
      } else {
        v.kind = detail::has_perfect_matching(G, active) ? MatchingKind::kNotUnique : MatchingKind::kNoPerfectMatching;
        v.matching.clear();
      }
    }
    if (dc.finalize().pass) return v;
  }
  throw std::runtime_error("unique_perfect_matching: self-check failed on every attempt");
}

}  // namespace deconn
