#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "deconn/certificate.hpp"
#include "deconn/decremental.hpp"
#include "deconn/generators.hpp"
#include "deconn/graph.hpp"
#include "deconn/oracle.hpp"

namespace deconn::bench {

enum class VerifyLevel { kNone, kCheckpoints, kEveryStep };

inline VerifyLevel parse_verify(const std::string& s) {
  if (s == "none") return VerifyLevel::kNone;
  if (s == "checkpoints") return VerifyLevel::kCheckpoints;
  if (s == "every-step") return VerifyLevel::kEveryStep;
  throw std::invalid_argument("unknown verify level: " + s);
}

inline const char* to_string(VerifyLevel v) {
  switch (v) {
    case VerifyLevel::kNone: return "none";
    case VerifyLevel::kCheckpoints: return "checkpoints";
    default: return "every-step";
  }
}

struct BenchConfig {
  std::string gen = "gnm";   // gnm | gnp | dumbbell | grid | halfsample | file
  int n = 64;                // vertices; clique size for dumbbell; rows for grid
  long long m = 512;         // edges for gnm; columns for grid
  double prob = 0.1;         // edge probability for gnp
  std::shared_ptr<const DynamicGraph> graph;        // gen == "file"
  std::optional<std::vector<EdgeId>> deletions;     // default: seeded shuffle
  int c = 1;
  std::optional<double> p, q;
  std::optional<int> delta, ell, gamma;
  bool rule12c = false;
  bool fallback = true;
  VerifyLevel verify = VerifyLevel::kNone;
  bool timing = false;
};

struct BenchRecord {
  std::string gen;
  int n = 0, m = 0, c = 1;
  CertificateParams params;
  std::uint64_t seed = 0;
  long long deletions = 0;
  long long d_insertions = 0;
  long long fallback_edges = 0;
  long long cert_initial = 0, cert_max = 0, cert_final = 0;
  long long split_mass = 0, split_mass_bound = 0;
  long long churn_total = 0, churn_total_bound = 0;
  long long churn_level_max = 0, churn_level_bound = 0;
  bool self_check = true;
  EdgeId fail_edge = -1;
  long long fail_update = -1;
  VerifyLevel verify = VerifyLevel::kNone;
  long long checks = 0, mismatches = 0;
  std::string first_mismatch;
  double t_init_ms = 0, t_delete_ms = 0, t_verify_ms = 0;

  bool bounds_ok() const {
    return split_mass <= split_mass_bound && churn_level_max <= churn_level_bound && churn_total <= churn_total_bound;
  }
  // A verified run whose self-check passed must agree with the oracle.
  bool verification_failed() const { return self_check && mismatches > 0; }
};

inline CertificateParams resolve_params(const BenchConfig& cfg, int n) {
  CertificateParams P = CertificateParams::defaults(n, cfg.c, cfg.rule12c ? ThresholdRule::k12c : ThresholdRule::k32c);
  if (cfg.p) P.p = *cfg.p;
  if (cfg.ell) P.ell = *cfg.ell;
  if (cfg.q) P.q = *cfg.q;
  if (cfg.gamma) P.gamma = *cfg.gamma;
  if (cfg.delta)
    P.delta = *cfg.delta;
  else if (cfg.p)
    P.delta = std::max(cfg.c + 1, static_cast<int>(std::ceil((cfg.rule12c ? 12.0 : 32.0) * cfg.c / P.p - 1e-9)));
  P.completion_fallback = cfg.fallback;
  P.validate();
  return P;
}

struct Workload {
  DynamicGraph graph;
  std::vector<EdgeId> deletions;
};

inline Workload make_workload(const BenchConfig& cfg, std::uint64_t seed) {
  auto with_shuffle = [&](DynamicGraph g) {
    std::vector<EdgeId> seq = cfg.deletions ? *cfg.deletions : gen::shuffled_deletions(g, seed);
    return Workload{std::move(g), std::move(seq)};
  };
  if (cfg.gen == "gnm") return with_shuffle(gen::gnm(cfg.n, cfg.m, seed));
  if (cfg.gen == "gnp") return with_shuffle(gen::gnp(cfg.n, cfg.prob, seed));
  if (cfg.gen == "dumbbell") return with_shuffle(gen::dumbbell(cfg.n));
  if (cfg.gen == "grid") return with_shuffle(gen::grid(cfg.n, static_cast<int>(cfg.m)));
  if (cfg.gen == "halfsample") {
    gen::HalfSampled hs = gen::half_sample(cfg.n, seed);
    CounterRng rng(MasterSeed(seed).derive(Stream::kShuffle, 1));
    rng.shuffle(hs.unsampled);
    rng.shuffle(hs.sampled);
    std::vector<EdgeId> seq = hs.unsampled;
    seq.insert(seq.end(), hs.sampled.begin(), hs.sampled.end());
    if (cfg.deletions) seq = *cfg.deletions;
    return Workload{std::move(hs.graph), std::move(seq)};
  }
  if (cfg.gen == "file") {
    if (!cfg.graph) throw std::invalid_argument("generator \"file\" needs a graph");
    return with_shuffle(*cfg.graph);
  }
  throw std::invalid_argument("unknown generator: " + cfg.gen);
}

// Reference partition of G into c-edge-connected components.
inline std::vector<int> reference_partition(const DynamicGraph& g, int c) {
  if (c == 1) return oracle::components(g);
  if (c == 2) return oracle::two_edge_components(g);
  return oracle::c_components(g, c);
}

// Alive edges joining distinct classes of `part`.
inline std::set<EdgeId> crossing_edges(const DynamicGraph& g, const std::vector<int>& part) {
  std::set<EdgeId> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.alive(e) && part[g.endpoints(e).u] != part[g.endpoints(e).v]) out.insert(e);
  return out;
}

// Event log: preamble "INIT c n", one "COMP id k v..." per component and
// the initial "BRIDGE eid" lines; then per deletion "DEL eid" followed by its
// "SPLIT old new k v..." and "BRIDGE eid" lines.
class EventLog {
 public:
  explicit EventLog(std::ostream* out) : out_(out) {}

  void preamble(const DecrementalConnectivity& dc) {
    if (!out_) return;
    int n = dc.graph().vertex_count();
    *out_ << "INIT " << dc.c() << ' ' << n << '\n';
    std::map<int, std::vector<Vertex>> comps;
    for (Vertex v = 0; v < n; ++v) comps[dc.component_id(v)].push_back(v);
    for (const auto& [id, vs] : comps) {
      *out_ << "COMP " << id << ' ' << vs.size();
      for (Vertex v : vs) *out_ << ' ' << v;
      *out_ << '\n';
    }
    bridges(dc);
  }

  void step(EdgeId e, const std::vector<SplitNotification>& splits, const DecrementalConnectivity& dc) {
    if (!out_) return;
    *out_ << "DEL " << e << '\n';
    for (const auto& s : splits) {
      *out_ << "SPLIT " << s.old_id << ' ' << s.new_id << ' ' << s.vertices.size();
      for (Vertex v : s.vertices) *out_ << ' ' << v;
      *out_ << '\n';
    }
    bridges(dc);
  }

 private:
  void bridges(const DecrementalConnectivity& dc) {
    const auto& rep = dc.bridge_report();
    for (; logged_ < rep.size(); ++logged_) *out_ << "BRIDGE " << rep[logged_].edge << '\n';
  }

  std::ostream* out_;
  std::size_t logged_ = 0;
};

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

// Runs one seeded cell: build, delete everything in sequence, verify as asked.
inline BenchRecord bench_single(const BenchConfig& cfg, std::uint64_t seed, std::ostream* log = nullptr) {
  using clock = std::chrono::steady_clock;
  Workload w = make_workload(cfg, seed);
  BenchRecord r;
  r.gen = cfg.gen;
  r.n = w.graph.vertex_count();
  r.m = w.graph.edge_count();
  r.c = cfg.c;
  r.seed = seed;
  r.params = resolve_params(cfg, r.n);
  r.verify = cfg.verify;

  auto t0 = clock::now();
  DecrementalConnectivity dc(w.graph, cfg.c, seed, r.params);
  r.t_init_ms = detail::ms_since(t0);
  const DynamicGraph& G = dc.graph();
  EventLog events(log);
  events.preamble(dc);

  r.cert_initial = r.cert_max = dc.engine().certificate_size();
  long long cert_size = r.cert_initial;
  std::size_t checkpoint_every = std::max<std::size_t>(1, w.deletions.size() / 8);
  std::set<EdgeId> reported;
  std::size_t reports_seen = 0;
  std::size_t events_seen = dc.engine().events().size();

  auto check = [&](long long step) {
    auto tv = clock::now();
    ++r.checks;
    std::vector<int> mine(r.n), ref = reference_partition(G, cfg.c);
    for (Vertex v = 0; v < r.n; ++v) mine[v] = dc.component_id(v);
    std::string what;
    if (!oracle::same_partition(mine, ref)) what = "partition";
    if (what.empty() && cfg.c == 2) {
      std::set<EdgeId> alive_reported;
      for (EdgeId e : reported)
        if (G.alive(e)) alive_reported.insert(e);
      if (alive_reported != crossing_edges(G, ref)) what = "bridges";
    }
    if (!what.empty()) {
      if (r.mismatches == 0) r.first_mismatch = "step=" + std::to_string(step) + " kind=" + what;
      ++r.mismatches;
    }
    r.t_verify_ms += detail::ms_since(tv);
  };
  auto absorb_reports = [&]() {
    const auto& rep = dc.bridge_report();
    for (; reports_seen < rep.size(); ++reports_seen)
      if (!reported.insert(rep[reports_seen].edge).second) {
        if (r.mismatches == 0) r.first_mismatch = "duplicate bridge " + std::to_string(rep[reports_seen].edge);
        ++r.mismatches;
      }
  };
  absorb_reports();
  if (cfg.verify != VerifyLevel::kNone) check(0);

  double t_del = 0;
  for (std::size_t k = 0; k < w.deletions.size(); ++k) {
    EdgeId e = w.deletions[k];
    auto td = clock::now();
    std::vector<SplitNotification> splits = dc.erase(e);
    t_del += detail::ms_since(td);
    events.step(e, splits, dc);
    absorb_reports();
    // Running certificate size from the engine's event stream.
    const auto& ev = dc.engine().events();
    for (; events_seen < ev.size(); ++events_seen) cert_size += ev[events_seen].insert ? 1 : -1;
    r.cert_max = std::max(r.cert_max, cert_size);
    bool last = k + 1 == w.deletions.size();
    if (cfg.verify == VerifyLevel::kEveryStep ||
        (cfg.verify == VerifyLevel::kCheckpoints && ((k + 1) % checkpoint_every == 0 || last)))
      check(static_cast<long long>(k + 1));
  }
  r.t_delete_ms = t_del;
  r.deletions = static_cast<long long>(w.deletions.size());

  const CertificateEngine& eng = dc.engine();
  r.cert_final = eng.certificate_size();
  r.d_insertions = eng.d_insertions();
  r.fallback_edges = eng.fallback_total();
  r.split_mass = dc.max_split_mass();
  r.split_mass_bound = static_cast<long long>(r.n) * (1 + ceil_log2(std::max(1, r.n)));
  long long per_level = (2LL * r.n - 1) * r.params.delta;
  r.churn_level_bound = std::max(0LL, per_level);
  r.churn_total_bound = r.churn_level_bound * (r.params.ell + 1);
  for (long long x : eng.boundary_pruned()) {
    r.churn_total += x;
    r.churn_level_max = std::max(r.churn_level_max, x);
  }
  SelfCheckReport rep = dc.finalize();
  r.self_check = rep.pass;
  r.fail_edge = rep.edge;
  r.fail_update = rep.update;
  return r;
}

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

inline const char* kSchema = "deconn-bench-v1";

inline std::string csv_header(bool timing) {
  std::string h =
      "schema,gen,n,m,c,ell,p,delta,q,gamma,buckets,fallback,seed,deletions,d_insertions,fallback_edges,"
      "cert_initial,cert_max,cert_final,split_mass,split_mass_bound,churn_total,churn_total_bound,"
      "churn_level_max,churn_level_bound,self_check,fail_edge,fail_update,verify,checks,mismatches";
  if (timing) h += ",t_init_ms,t_delete_ms,t_verify_ms";
  return h;
}

inline std::string to_csv(const BenchRecord& r, bool timing) {
  std::ostringstream o;
  o << kSchema << ',' << r.gen << ',' << r.n << ',' << r.m << ',' << r.c << ',' << r.params.ell << ','
    << format_double(r.params.p) << ',' << r.params.delta << ',' << format_double(r.params.q) << ','
    << r.params.gamma << ',' << r.params.bucket_count(r.n) << ',' << (r.params.completion_fallback ? 1 : 0) << ','
    << r.seed << ',' << r.deletions << ',' << r.d_insertions << ',' << r.fallback_edges << ',' << r.cert_initial
    << ',' << r.cert_max << ',' << r.cert_final << ',' << r.split_mass << ',' << r.split_mass_bound << ','
    << r.churn_total << ',' << r.churn_total_bound << ',' << r.churn_level_max << ',' << r.churn_level_bound << ','
    << (r.self_check ? "pass" : "fail") << ',' << r.fail_edge << ',' << r.fail_update << ','
    << to_string(r.verify) << ',' << r.checks << ',' << r.mismatches;
  if (timing)
    o << ',' << format_double(r.t_init_ms) << ',' << format_double(r.t_delete_ms) << ','
      << format_double(r.t_verify_ms);
  return o.str();
}

// Runs cells for seed, seed+1, ... on up to `threads` workers; rows reach
// `emit` in seed order through one writer.
inline std::vector<BenchRecord> bench_run(const BenchConfig& cfg, std::uint64_t seed, int runs, int threads,
                                          const std::function<std::ostream*(std::uint64_t)>& log_for,
                                          const std::function<void(const BenchRecord&)>& emit) {
  std::vector<std::optional<BenchRecord>> rows(std::max(0, runs));
  std::vector<std::string> errors(rows.size());
  std::mutex mu;
  std::size_t next_emit = 0, next_job = 0;
  auto flush = [&]() {
    while (next_emit < rows.size() && rows[next_emit]) emit(*rows[next_emit++]);
  };
  auto worker = [&]() {
    for (;;) {
      std::size_t job;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next_job >= rows.size()) return;
        job = next_job++;
      }
      std::uint64_t s = seed + job;
      std::ostream* log = nullptr;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (log_for) log = log_for(s);
      }
      BenchRecord rec = bench_single(cfg, s, log);
      std::lock_guard<std::mutex> lock(mu);
      rows[job] = std::move(rec);
      flush();
    }
  };
  int t = std::max(1, std::min(threads, runs));
  if (t == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<BenchRecord> out;
  for (auto& r : rows) out.push_back(std::move(*r));
  return out;
}

struct ReplayVerdict {
  bool ok = true;
  long long step = -1;        // 0 = preamble, k = k-th deletion
  std::string kind;
  std::string detail;
  long long steps_checked = 0;

  std::string describe() const {
    if (ok) return "OK steps=" + std::to_string(steps_checked);
    return "MISMATCH step=" + std::to_string(step) + " kind=" + kind + " detail=" + detail;
  }
};

// Replays an event log against oracle recomputation on g under `seq`.
// Throws std::invalid_argument on a malformed log.
inline ReplayVerdict verify_replay(std::istream& log, const DynamicGraph& graph, const std::vector<EdgeId>& seq) {
  std::vector<std::vector<std::string>> lines;
  for (std::string line; std::getline(log, line);) {
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (!tok.empty()) lines.push_back(std::move(tok));
  }
  ReplayVerdict v;
  auto mismatch = [&](long long step, std::string kind, std::string detail) {
    v.ok = false;
    v.step = step;
    v.kind = std::move(kind);
    v.detail = std::move(detail);
    return v;
  };
  auto num = [](const std::string& s) -> long long {
    std::size_t pos = 0;
    long long x;
    try {
      x = std::stoll(s, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("log: expected a number, got \"" + s + "\"");
    }
    if (pos != s.size()) throw std::invalid_argument("log: expected a number, got \"" + s + "\"");
    return x;
  };
  if (lines.empty()) {
    if (seq.empty()) return v;
    return mismatch(1, "missing", "log is empty but the deletion sequence is not");
  }
  if (lines[0][0] != "INIT" || lines[0].size() != 3) throw std::invalid_argument("log: first line must be INIT c n");
  int c = static_cast<int>(num(lines[0][1]));
  int n = static_cast<int>(num(lines[0][2]));
  if (c < 1) throw std::invalid_argument("log: c must be >= 1");
  if (n != graph.vertex_count()) return mismatch(0, "init", "vertex count " + std::to_string(n) + " != graph");

  DynamicGraph g = graph;
  std::map<int, std::set<Vertex>> comps;
  std::vector<int> comp_of(n, -1);
  std::set<EdgeId> reported;
  std::size_t i = 1;

  auto read_vertices = [&](const std::vector<std::string>& tok, std::size_t at, long long k) {
    if (k < 0 || tok.size() != at + static_cast<std::size_t>(k))
      throw std::invalid_argument("log: vertex count does not match list on " + tok[0] + " line");
    std::vector<Vertex> vs;
    for (std::size_t j = at; j < tok.size(); ++j) {
      long long x = num(tok[j]);
      if (x < 0 || x >= n) throw std::invalid_argument("log: vertex out of range");
      vs.push_back(static_cast<Vertex>(x));
    }
    return vs;
  };
  auto compare = [&](long long step) -> bool {
    std::vector<int> ref = reference_partition(g, c);
    for (Vertex x = 0; x < n; ++x)
      if (comp_of[x] < 0) {
        mismatch(step, "partition", "vertex " + std::to_string(x) + " has no component");
        return false;
      }
    if (!oracle::same_partition(comp_of, ref)) {
      for (Vertex x = 0; x < n; ++x)
        for (Vertex y = x + 1; y < n; ++y)
          if ((comp_of[x] == comp_of[y]) != (ref[x] == ref[y])) {
            mismatch(step, "partition",
                     "vertices " + std::to_string(x) + "," + std::to_string(y) +
                         (ref[x] == ref[y] ? " should share a component" : " should be separated"));
            return false;
          }
    }
    if (c == 2) {
      std::set<EdgeId> alive_reported, expect = crossing_edges(g, ref);
      for (EdgeId e : reported)
        if (g.alive(e)) alive_reported.insert(e);
      if (alive_reported != expect) {
        std::vector<EdgeId> diff;
        std::set_symmetric_difference(alive_reported.begin(), alive_reported.end(), expect.begin(), expect.end(),
                                      std::back_inserter(diff));
        mismatch(step, "bridge", "edge " + std::to_string(diff.front()) +
                                     (expect.count(diff.front()) ? " not reported" : " wrongly reported"));
        return false;
      }
    }
    return true;
  };
  auto take_bridge = [&](const std::vector<std::string>& tok, long long step) -> bool {
    if (tok.size() != 2) throw std::invalid_argument("log: BRIDGE takes one edge id");
    long long e = num(tok[1]);
    if (e < 0 || e >= g.edge_count()) throw std::invalid_argument("log: bridge edge out of range");
    if (!reported.insert(static_cast<EdgeId>(e)).second) {
      mismatch(step, "bridge", "edge " + tok[1] + " reported twice");
      return false;
    }
    return true;
  };

  // Preamble.
  for (; i < lines.size() && lines[i][0] == "COMP"; ++i) {
    const auto& tok = lines[i];
    if (tok.size() < 3) throw std::invalid_argument("log: COMP needs id and size");
    int id = static_cast<int>(num(tok[1]));
    auto vs = read_vertices(tok, 3, num(tok[2]));
    if (comps.count(id)) return mismatch(0, "comp", "component id " + tok[1] + " listed twice");
    for (Vertex x : vs) {
      if (comp_of[x] >= 0) return mismatch(0, "comp", "vertex " + std::to_string(x) + " listed twice");
      comp_of[x] = id;
      comps[id].insert(x);
    }
  }
  for (; i < lines.size() && lines[i][0] == "BRIDGE"; ++i)
    if (!take_bridge(lines[i], 0)) return v;
  if (!compare(0)) return v;

  long long step = 0;
  while (i < lines.size()) {
    const auto& head = lines[i];
    if (head[0] != "DEL" || head.size() != 2) throw std::invalid_argument("log: expected DEL line, got " + head[0]);
    ++step;
    EdgeId e = static_cast<EdgeId>(num(head[1]));
    if (step > static_cast<long long>(seq.size()))
      return mismatch(step, "extra", "log deletes edge " + head[1] + " beyond the sequence");
    if (e != seq[step - 1])
      return mismatch(step, "del", "log deletes " + head[1] + ", sequence has " + std::to_string(seq[step - 1]));
    if (e < 0 || e >= g.edge_count() || !g.alive(e)) return mismatch(step, "del", "edge " + head[1] + " not alive");
    g.erase(e);
    for (++i; i < lines.size() && lines[i][0] != "DEL"; ++i) {
      const auto& tok = lines[i];
      if (tok[0] == "BRIDGE") {
        if (!take_bridge(tok, step)) return v;
        continue;
      }
      if (tok[0] != "SPLIT" || tok.size() < 4) throw std::invalid_argument("log: unexpected line " + tok[0]);
      int old_id = static_cast<int>(num(tok[1]));
      int new_id = static_cast<int>(num(tok[2]));
      auto vs = read_vertices(tok, 4, num(tok[3]));
      auto it = comps.find(old_id);
      if (it == comps.end()) return mismatch(step, "split", "unknown component " + tok[1]);
      if (comps.count(new_id)) return mismatch(step, "split", "component id " + tok[2] + " reused");
      if (vs.empty() || 2 * vs.size() > it->second.size())
        return mismatch(step, "split", "split side of component " + tok[1] + " is not the smaller one");
      for (Vertex x : vs) {
        if (comp_of[x] != old_id)
          return mismatch(step, "split", "vertex " + std::to_string(x) + " not in component " + tok[1]);
        comp_of[x] = new_id;
        it->second.erase(x);
        comps[new_id].insert(x);
      }
    }
    ++v.steps_checked;
    if (!compare(step)) return v;
  }
  if (step != static_cast<long long>(seq.size()))
    return mismatch(step + 1, "missing", "log ends after " + std::to_string(step) + " deletions");
  return v;
}

}  // namespace deconn::bench
