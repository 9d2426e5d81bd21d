#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "deconn/component_tracker.hpp"
#include "deconn/cut_oracle.hpp"
#include "deconn/exact_boundary.hpp"
#include "deconn/graph.hpp"
#include "deconn/random.hpp"
#include "deconn/small_boundary.hpp"

namespace deconn {

enum class ThresholdRule { k32c, k12c };

struct CertificateParams {
  int c = 1;
  int ell = 1;        // levels 0..ell
  double p = 0.5;     // per-level sample fraction
  int delta = 2;      // boundary threshold
  double q = 1.0;     // R sample probability
  int gamma = 2;      // fingerprint length multiplier
  double z = 4.0;     // ell = ceil(z log2 n) in defaults
  int buckets = 0;    // sketch buckets; 0 picks delta·ceil(log2 n)^2 capped at n
  bool completion_fallback = true;

  static CertificateParams defaults(int n, int c, ThresholdRule rule = ThresholdRule::k32c, double z = 4.0) {
    CertificateParams P;
    int L = std::max(1, ceil_log2(n));
    P.c = c;
    P.z = z;
    P.ell = std::max(1, static_cast<int>(std::ceil(z * L)));
    P.p = std::min(1.0 / (static_cast<double>(L) * L * L), 1.0 / (P.ell + 1));
    double k = rule == ThresholdRule::k32c ? 32.0 : 12.0;
    P.delta = std::max(c + 1, static_cast<int>(std::ceil(k * c / P.p - 1e-9)));
    P.q = std::min(1.0, 1.0 / (static_cast<double>(L) * L));
    P.gamma = 2;
    return P;
  }

  void validate() const {
    if (c < 1) throw std::invalid_argument("params: c must be >= 1");
    if (delta <= c) throw std::invalid_argument("params: delta must exceed c");
    if (ell < 1) throw std::invalid_argument("params: ell must be >= 1");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("params: p must lie in (0, 1]");
    if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("params: q must lie in (0, 1]");
    if (gamma < 1 || gamma > kMaxFingerprintWords) throw std::invalid_argument("params: gamma must lie in [1, 4]");
    if (buckets < 0) throw std::invalid_argument("params: buckets must be >= 0");
  }

  // Hypotheses of the high-probability correctness statement.
  bool calibrated() const { return p * ell < 1.0 && p * delta >= 32.0 * c; }

  int bucket_count(int n) const {
    long long L = std::max(1, ceil_log2(n));
    long long s = buckets > 0 ? buckets : static_cast<long long>(delta) * L * L;
    return static_cast<int>(std::clamp<long long>(s, 1, std::max(1, n)));
  }

  long long sample_size(int m) const { return m == 0 ? 0 : static_cast<long long>(std::ceil(p * m - 1e-9)); }
};

struct CertDelta {
  std::vector<EdgeId> deleted;
  std::vector<EdgeId> inserted;
  bool empty() const { return deleted.empty() && inserted.empty(); }
};

struct CertEvent {
  long long update;
  bool insert;
  EdgeId edge;
};

struct SelfCheckReport {
  bool pass = true;
  EdgeId edge = -1;
  long long update = -1;
  std::string reason;
};

// Sparse certificate H_ell ∪ D of a decremental graph for c-edge-connected
// components. Level i keeps a sample H_i pruned to its c-edge-connected
// components and a graph G_i from which components of H_i with a small
// non-empty boundary have been cut off; cut-off edges form D.
class CertificateEngine {
 public:
  CertificateEngine(DynamicGraph g, CertificateParams params, std::uint64_t seed)
      : graph_(std::move(g)), params_(params), seed_(seed) {
    params_.validate();
    n_ = graph_.vertex_count();
    m_ = graph_.edge_count();
    ell_ = params_.ell;
    MasterSeed ms(seed);

    prune_level_.assign(m_, ell_ + 1);
    omitted_.assign(m_, 0);
    touch_mark_.assign(m_, 0);
    touch_was_.assign(m_, 0);
    sample_.assign(ell_ + 1, SubgraphMask(m_));
    if (m_ > 0) {
      long long s = params_.sample_size(m_);
      SubgraphMask cur(m_);
      for (int i = 1; i <= ell_; ++i) {
        PairwiseGen gen = PairwiseGen::from_seed(ms.derive(Stream::kLevelSample, i), m_, s);
        for (long long j = 0; j < s; ++j) {
          EdgeId e = static_cast<EdgeId>(gen(j));
          if (graph_.alive(e)) cur.set(e);
        }
        sample_[i] = cur;
      }
    }
    h_ = sample_;
    sampled_.assign(m_, 0);
    sample_[ell_].for_each([&](EdgeId e) { sampled_[e] = 1; });

    deg0_.assign(n_, 0);
    for (Vertex v = 0; v < n_; ++v) deg0_[v] = graph_.degree(v);
    pruned0_.assign(n_, 0);
    boundary_pruned_.assign(ell_ + 1, 0);

    small_ = std::make_unique<SmallBoundaryMaintainer>(graph_, alive_mask(graph_), params_.q, params_.delta,
                                                       params_.bucket_count(n_), params_.gamma,
                                                       ms.derive(Stream::kFingerprint));
    delta_boundary_.resize(ell_ + 1);
    pruned_once_.resize(ell_ + 1);
    dirty_.resize(ell_ + 1);
    for (int i = 1; i <= ell_; ++i) {
      trackers_.emplace_back(graph_, h_[i], ms.derive(Stream::kTreap, i));
      oracles_.emplace_back(params_.c, graph_, h_[i]);
      const ComponentTracker& t = trackers_.back();
      delta_boundary_[i] = ExactBoundary::from_tracker(graph_, t);
      pruned_once_[i].assign(t.component_count(), 0);
      small_->attach(t);
      for (int c = 0; c < t.component_count(); ++c) dirty_[i].insert(c);
    }
    for (Vertex v = 0; v < n_; ++v) dirty0_.insert(v);
    for (EdgeId e = 0; e < m_; ++e)
      if (graph_.alive(e)) fallback_candidates_.push_back(e);

    begin_cascade();
    cascade();
    for (EdgeId e = 0; e < m_; ++e)
      if (in_certificate(e)) events_.push_back({0, true, e});
    for (EdgeId e : touched_) touch_mark_[e] = 0;
    touched_.clear();
    initialized_ = true;
  }

  CertificateEngine(const CertificateEngine&) = delete;
  CertificateEngine& operator=(const CertificateEngine&) = delete;

  const DynamicGraph& graph() const { return graph_; }
  const CertificateParams& params() const { return params_; }
  int ell() const { return ell_; }
  long long update_index() const { return update_; }

  // Deletes e from G and restores all level properties. Returns the net
  // change of the emitted certificate.
  CertDelta erase(EdgeId e) {
    if (!graph_.alive(e)) throw std::logic_error("certificate: edge " + std::to_string(e) + " is not alive");
    const Edge ed = graph_.endpoints(e);
    if (!in_certificate(e) && !top_same(ed.u, ed.v))
      fail(e, update_ + 1, "deleted edge joins distinct top-level components but is not in the certificate");
    ++update_;
    begin_cascade();
    touch(e);
    int old = prune_level_[e];
    if (old == ell_ + 1) {
      small_->on_edge_deleted(e);
    } else {
      for (int i = 1; i < old; ++i) mark_changed(i, delta_boundary_[i].erase(e));
    }
    if (old > 0) lower_deg0(ed);
    graph_.erase(e);
    omitted_[e] = 0;
    if (sampled_[e]) a_sampled_.push_back(e);
    cascade();
    CertDelta delta = finish_cascade();
    for (EdgeId f : delta.inserted) {
      const Edge& fe = graph_.endpoints(f);
      if (pre_component(fe.u) != pre_component(fe.v))
        fail(f, update_, "inserted edge already joined distinct top-level components before this deletion");
    }
    return delta;
  }

  bool in_certificate(EdgeId e) const {
    return graph_.alive(e) && !omitted_[e] && (h_[ell_].test(e) || prune_level_[e] <= ell_);
  }
  bool in_d(EdgeId e) const { return graph_.alive(e) && prune_level_[e] <= ell_; }
  bool in_g(int i, EdgeId e) const { return graph_.alive(e) && i < prune_level_[e]; }
  bool in_h(int i, EdgeId e) const { return graph_.alive(e) && h_[i].test(e); }
  int prune_level(EdgeId e) const { return prune_level_[e]; }

  std::vector<EdgeId> certificate_edges() const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < m_; ++e)
      if (in_certificate(e)) out.push_back(e);
    return out;
  }
  SubgraphMask certificate_mask() const {
    SubgraphMask mask(m_);
    for (EdgeId e = 0; e < m_; ++e)
      if (in_certificate(e)) mask.set(e);
    return mask;
  }
  int certificate_size() const { return static_cast<int>(certificate_edges().size()); }
  std::vector<EdgeId> d_edges() const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < m_; ++e)
      if (in_d(e)) out.push_back(e);
    return out;
  }
  const std::vector<CertEvent>& events() const { return events_; }

  const SubgraphMask& h_mask(int i) const { return h_[i]; }
  const SubgraphMask& sample_mask(int i) const { return sample_[i]; }
  SubgraphMask g_mask(int i) const {
    SubgraphMask mask(m_);
    for (EdgeId e = 0; e < m_; ++e)
      if (in_g(i, e)) mask.set(e);
    return mask;
  }
  // Tracker of H_i, i >= 1.
  const ComponentTracker& h_tracker(int i) const { return trackers_[i - 1]; }
  const SmallBoundaryMaintainer& small_boundaries() const { return *small_; }
  const ExactBoundary& delta_boundary(int i) const { return delta_boundary_[i]; }

  const std::vector<long long>& boundary_pruned() const { return boundary_pruned_; }
  long long d_insertions() const { return d_insertions_; }
  long long fallback_total() const { return fallback_total_; }
  const std::vector<EdgeId>& last_fallback() const { return last_fallback_; }
  long long max_split_mass() const {
    long long best = 0;
    for (const auto& t : trackers_) best = std::max(best, t.split_mass());
    return best;
  }

  // Moves every alive G_ell edge joining distinct H_ell components into D.
  // Runs automatically after each cascade when enabled; callable directly.
  std::vector<EdgeId> completion_fallback() {
    fallback_candidates_.clear();
    for (EdgeId e = 0; e < m_; ++e)
      if (graph_.alive(e) && prune_level_[e] == ell_ + 1) fallback_candidates_.push_back(e);
    begin_cascade();
    apply_fallback();
    finish_cascade();
    return last_fallback_;
  }

  const SelfCheckReport& self_check_state() const { return report_; }

  // Final sweep over the remaining edges.
  SelfCheckReport finalize() {
    for (EdgeId e = 0; e < m_; ++e) {
      if (!graph_.alive(e) || in_certificate(e)) continue;
      const Edge& ed = graph_.endpoints(e);
      if (!top_same(ed.u, ed.v)) fail(e, update_, "remaining edge joins distinct top-level components but is not in the certificate");
    }
    return report_;
  }

  // Fault injection: hides a certificate edge whose endpoints lie in distinct
  // H_ell components. Returns the resulting certificate change, or nothing
  // if e is not such an edge.
  std::optional<CertDelta> inject_omission(EdgeId e) {
    if (!in_certificate(e)) return std::nullopt;
    const Edge& ed = graph_.endpoints(e);
    if (top_same(ed.u, ed.v)) return std::nullopt;
    omitted_[e] = 1;
    events_.push_back({update_, false, e});
    return CertDelta{{e}, {}};
  }

  // Per level sorted alive edge IDs of H_i and G_i, then D.
  std::string checkpoint_dump() const {
    std::ostringstream out;
    out << "levels " << ell_ << '\n';
    for (int i = 0; i <= ell_; ++i) {
      out << "level " << i << '\n' << "H:";
      for (EdgeId e = 0; e < m_; ++e)
        if (in_h(i, e)) out << ' ' << e;
      out << '\n' << "G:";
      for (EdgeId e = 0; e < m_; ++e)
        if (in_g(i, e)) out << ' ' << e;
      out << '\n';
    }
    out << "D:";
    for (EdgeId e = 0; e < m_; ++e)
      if (in_d(e)) out << ' ' << e;
    out << '\n';
    return out.str();
  }

 private:
  bool top_same(Vertex u, Vertex v) const { return trackers_[ell_ - 1].same_component(u, v); }

  int pre_component(Vertex v) const {
    auto it = pre_id_.find(v);
    return it != pre_id_.end() ? it->second : trackers_[ell_ - 1].component_id(v);
  }

  void fail(EdgeId e, long long update, const std::string& reason) {
    if (!report_.pass) return;
    report_.pass = false;
    report_.edge = e;
    report_.update = update;
    report_.reason = reason;
  }

  void begin_cascade() {
    a_sampled_.clear();
    pre_id_.clear();
  }

  void touch(EdgeId e) {
    if (touch_mark_[e]) return;
    touch_mark_[e] = 1;
    touch_was_[e] = in_certificate(e);
    touched_.push_back(e);
  }

  CertDelta finish_cascade() {
    CertDelta delta;
    for (EdgeId e : touched_) {
      bool now = in_certificate(e);
      if (touch_was_[e] && !now) delta.deleted.push_back(e);
      if (!touch_was_[e] && now) delta.inserted.push_back(e);
      touch_mark_[e] = 0;
    }
    touched_.clear();
    std::sort(delta.deleted.begin(), delta.deleted.end());
    std::sort(delta.inserted.begin(), delta.inserted.end());
    for (EdgeId e : delta.deleted) events_.push_back({update_, false, e});
    for (EdgeId e : delta.inserted) events_.push_back({update_, true, e});
    return delta;
  }

  void lower_deg0(const Edge& ed) {
    --deg0_[ed.u];
    --deg0_[ed.v];
    dirty0_.insert(ed.u);
    dirty0_.insert(ed.v);
  }

  void mark_changed(int level, std::array<int, 2> comps) {
    for (int c : comps)
      if (c >= 0) dirty_[level].insert(c);
  }

  void absorb_changes() {
    for (auto [lvl, comp] : small_->drain_changed()) dirty_[lvl + 1].insert(comp);
  }

  void cascade() {
    for (int j = 0; j <= ell_; ++j) {
      if (j == 0) {
        prune_level0();
        continue;
      }
      for (std::size_t k = 0; k < a_sampled_.size(); ++k)
        if (h_[j].test(a_sampled_[k])) remove_from_h(j, a_sampled_[k]);
      while (auto f = oracles_[j - 1].find_cut_edge()) remove_from_h(j, *f);
      prune_boundaries(j);
    }
    if (params_.completion_fallback) apply_fallback();
    absorb_changes();
  }

  void remove_from_h(int j, EdgeId e) {
    if (j == ell_) touch(e);
    h_[j].reset(e);
    oracles_[j - 1].erase(e);
    if (auto ev = trackers_[j - 1].erase(e)) on_split(j, *ev);
  }

  void on_split(int j, const SplitEvent& ev) {
    delta_boundary_[j].on_split(ev);
    small_->on_split(j - 1, ev);
    if (ev.new_id >= static_cast<int>(pruned_once_[j].size())) pruned_once_[j].resize(ev.new_id + 1, 0);
    pruned_once_[j][ev.j] = 0;
    pruned_once_[j][ev.new_id] = 0;
    dirty_[j].insert(ev.j);
    dirty_[j].insert(ev.new_id);
    if (j != ell_) return;
    for (Vertex v : ev.A) pre_id_.emplace(v, ev.j);
    if (!params_.completion_fallback) return;
    const ComponentTracker& top = trackers_[ell_ - 1];
    for (Vertex v : ev.A)
      for (EdgeId e : graph_.incident(v))
        if (prune_level_[e] == ell_ + 1 && !top.same_component(v, graph_.other(e, v)))
          fallback_candidates_.push_back(e);
  }

  void prune_level0() {
    while (!dirty0_.empty()) {
      Vertex v = *dirty0_.begin();
      dirty0_.erase(dirty0_.begin());
      if (pruned0_[v] || deg0_[v] == 0 || deg0_[v] >= params_.delta) continue;
      std::vector<EdgeId> S;
      for (EdgeId e : graph_.incident(v))
        if (prune_level_[e] > 0) S.push_back(e);
      std::sort(S.begin(), S.end());
      pruned0_[v] = 1;
      prune_edges(0, S);
    }
  }

  void prune_boundaries(int j) {
    absorb_changes();
    while (!dirty_[j].empty()) {
      int comp = *dirty_[j].begin();
      dirty_[j].erase(dirty_[j].begin());
      if (pruned_once_[j][comp] || !small_->has_boundary(j - 1, comp)) continue;
      const auto& stored = small_->stored_boundary(j - 1, comp);
      const auto& exact = delta_boundary_[j].boundary(comp);
      std::size_t total = stored.size() + exact.size();
      if (total == 0 || total >= static_cast<std::size_t>(params_.delta)) continue;
      std::vector<EdgeId> S(stored.begin(), stored.end());
      S.insert(S.end(), exact.begin(), exact.end());
      std::sort(S.begin(), S.end());
      pruned_once_[j][comp] = 1;
      prune_edges(j, S);
      absorb_changes();
    }
  }

  // Cuts S off G_j (and so off every G_k, k >= j); S joins D.
  void prune_edges(int j, const std::vector<EdgeId>& S) {
    for (EdgeId e : S) {
      int old = prune_level_[e];
      if (old <= j) continue;
      touch(e);
      ++boundary_pruned_[j];
      prune_level_[e] = j;
      if (j == 0) lower_deg0(graph_.endpoints(e));
      if (old == ell_ + 1) {
        ++d_insertions_;
        small_->on_edge_deleted(e);
        for (int i = 1; i < j; ++i) delta_boundary_[i].insert(e);
      } else {
        for (int i = std::max(j, 1); i < old; ++i) mark_changed(i, delta_boundary_[i].erase(e));
      }
      if (sampled_[e]) a_sampled_.push_back(e);
    }
  }

  void apply_fallback() {
    last_fallback_.clear();
    std::vector<EdgeId> cand = std::move(fallback_candidates_);
    fallback_candidates_.clear();
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (EdgeId e : cand) {
      if (!graph_.alive(e) || prune_level_[e] != ell_ + 1) continue;
      const Edge& ed = graph_.endpoints(e);
      if (top_same(ed.u, ed.v)) continue;
      touch(e);
      prune_level_[e] = ell_;
      ++d_insertions_;
      ++fallback_total_;
      small_->on_edge_deleted(e);
      for (int i = 1; i < ell_; ++i) delta_boundary_[i].insert(e);
      last_fallback_.push_back(e);
    }
  }

  DynamicGraph graph_;
  CertificateParams params_;
  std::uint64_t seed_;
  int n_ = 0, m_ = 0, ell_ = 1;
  bool initialized_ = false;
  long long update_ = 0;

  std::vector<int> prune_level_;   // e in G_i iff i < prune_level_[e]
  std::vector<char> sampled_;      // e in H_ell^0
  std::vector<char> omitted_;
  std::vector<SubgraphMask> sample_, h_;
  std::deque<ComponentTracker> trackers_;   // level i at index i-1
  std::deque<NaiveCutOracle> oracles_;
  std::vector<ExactBoundary> delta_boundary_;
  std::unique_ptr<SmallBoundaryMaintainer> small_;

  std::vector<int> deg0_;
  std::vector<char> pruned0_;
  std::set<Vertex> dirty0_;
  std::vector<std::set<int>> dirty_;
  std::vector<std::vector<char>> pruned_once_;

  std::vector<EdgeId> a_sampled_;
  std::unordered_map<Vertex, int> pre_id_;
  std::vector<EdgeId> fallback_candidates_;
  std::vector<EdgeId> last_fallback_;

  std::vector<char> touch_mark_, touch_was_;
  std::vector<EdgeId> touched_;
  std::vector<CertEvent> events_;

  std::vector<long long> boundary_pruned_;
  long long d_insertions_ = 0;
  long long fallback_total_ = 0;
  SelfCheckReport report_;
};

}  // namespace deconn
