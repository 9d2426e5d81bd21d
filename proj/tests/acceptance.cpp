// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "deconn/deconn.hpp"
#include "deconn/oracle.hpp"

using namespace deconn;

namespace {

int failures = 0;

void report(const char* id, bool ok, const std::string& what, double secs) {
  std::printf("%s %s %s [%.1fs]\n", ok ? "PASS" : "FAIL", id, what.c_str(), secs);
  std::fflush(stdout);
  failures += !ok;
}

template <class F>
void criterion(const char* id, F&& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string what;
  bool ok = body(what);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(id, ok, what, secs);
}

CertificateParams desk(int c, double p, int delta, int ell, double q) {
  CertificateParams P;
  P.c = c;
  P.p = p;
  P.delta = delta;
  P.ell = ell;
  P.q = q;
  P.gamma = 2;
  return P;
}

// Structural counters gathered from every oracle run for AC4 and AC5.
struct BoundTally {
  long long runs = 0, churn_violations = 0, split_violations = 0;
  long long worst_churn_ratio_num = 0, worst_churn_ratio_den = 1;

  void check(const DecrementalConnectivity& dc) {
    const CertificateEngine& en = dc.engine();
    int n = dc.graph().vertex_count();
    long long churn_bound = (2LL * n - 1) * en.params().delta;
    for (long long x : en.boundary_pruned()) {
      if (x > churn_bound) ++churn_violations;
      if (x * worst_churn_ratio_den > worst_churn_ratio_num * churn_bound) {
        worst_churn_ratio_num = x;
        worst_churn_ratio_den = churn_bound;
      }
    }
    if (dc.max_split_mass() > static_cast<long long>(n) * (1 + ceil_log2(std::max(1, n)))) ++split_violations;
    ++runs;
  }
};

BoundTally tally;

struct OracleRun {
  bool self_check = true;
  long long mismatches = 0;
  long long steps = 0;
  long long queries = 0;
};

DynamicGraph workload_graph(int k, int n, long long m, std::uint64_t seed) {
  if (k % 4 == 3) {
    int size = std::max(4, n / 4);
    return gen::clusters(n / size, size, 2, seed);
  }
  return gen::gnm(n, m, seed);
}

// Full deletion with per-step comparison against DFS (c = 1) or the
// bridge-removal fixpoint plus the newly-created bridge sets (c = 2).
OracleRun oracle_run(DynamicGraph g, int c, std::uint64_t seed, const CertificateParams& P) {
  OracleRun out;
  DecrementalConnectivity dc(std::move(g), c, seed, P);
  const DynamicGraph& G = dc.graph();
  int n = G.vertex_count();
  std::mt19937 rng(static_cast<unsigned>(seed * 2654435761u + c));
  std::vector<EdgeId> order = G.alive_edges();
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_int_distribution<int> pick(0, n - 1);

  std::vector<EdgeId> b0 = oracle::bridges(G);
  std::set<EdgeId> prev(b0.begin(), b0.end());
  std::size_t seen = 0;
  auto compare = [&]() {
    std::vector<int> ref = c == 1 ? oracle::components(G) : oracle::two_edge_components(G);
    for (int k = 0; k < n; ++k) {
      Vertex u = pick(rng), v = pick(rng);
      ++out.queries;
      if (dc.same_component(u, v) != (ref[u] == ref[v])) ++out.mismatches;
    }
    std::vector<int> ids(n);
    for (Vertex v = 0; v < n; ++v) ids[v] = dc.component_id(v);
    if (!oracle::same_partition(ids, ref)) ++out.mismatches;
    if (c == 2) {
      std::vector<EdgeId> now_v = oracle::bridges(G);
      std::set<EdgeId> now(now_v.begin(), now_v.end()), fresh, expect;
      for (; seen < dc.bridge_report().size(); ++seen) fresh.insert(dc.bridge_report()[seen].edge);
      for (EdgeId b : now)
        if (!prev.count(b)) expect.insert(b);
      if (out.steps == 0) expect = now;
      if (fresh != expect) ++out.mismatches;
      prev = std::move(now);
    }
  };
  compare();
  for (EdgeId e : order) {
    dc.erase(e);
    ++out.steps;
    compare();
  }
  out.self_check = dc.finalize().pass;
  tally.check(dc);
  return out;
}

bool oracle_equivalence(int c, int runs, std::string& what) {
  std::mt19937 rng(1000 + c);
  long long passing = 0, bad = 0, steps = 0, queries = 0, mism_failed = 0;
  for (int k = 0; k < runs; ++k) {
    int n = 16 + static_cast<int>(rng() % 113);
    long long m = n + static_cast<long long>(rng() % (7 * n + 1));
    DynamicGraph g = workload_graph(k, n, m, 5000 + k);
    OracleRun r = oracle_run(std::move(g), c, 7000 + k, desk(c, 0.2, 6, 6, 0.5));
    steps += r.steps;
    queries += r.queries;
    if (r.self_check) {
      ++passing;
      bad += r.mismatches;
    } else {
      mism_failed += r.mismatches;
    }
  }
  std::ostringstream o;
  o << "oracle equivalence c=" << c << ": " << runs << " runs, " << passing << " passing self-check, " << steps
    << " steps, " << queries << " queries, " << bad << " mismatches on passing runs";
  if (passing < runs) o << " (" << mism_failed << " on failing runs)";
  what = o.str();
  return bad == 0 && runs >= 200;
}

bool self_check_rate(std::string& what) {
  // Injected faults.
  int injected = 0, detected = 0;
  for (std::uint64_t seed = 0; injected < 60 && seed < 400; ++seed) {
    int c = 1 + seed % 2;
    DecrementalConnectivity dc(gen::clusters(4, 8, 2, seed), c, seed, desk(c, 0.3, 5, 3, 0.5));
    std::mt19937 rng(static_cast<unsigned>(seed));
    std::vector<EdgeId> order = dc.graph().alive_edges();
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t at = order.size() / 3;
    bool done = false;
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (k >= at && !done) {
        for (EdgeId e : dc.engine().certificate_edges())
          if ((done = dc.inject_omission(e))) break;
      }
      if (seed % 3 == 0 && k >= at + 5) break;  // some runs stop early
      dc.erase(order[k]);
    }
    if (!done) continue;
    ++injected;
    detected += !dc.finalize().pass;
  }
  // Calibrated runs.
  int passes = 0;
  const int n = 128;
  CertificateParams P = CertificateParams::defaults(n, 1);
  long long fallback = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    DecrementalConnectivity dc(gen::gnm(n, 8 * n, seed), 1, seed, P);
    for (EdgeId e : gen::shuffled_deletions(dc.graph(), seed + 1)) dc.erase(e);
    passes += dc.finalize().pass;
    fallback += dc.engine().fallback_total();
    tally.check(dc);
  }
  std::ostringstream o;
  o << "self-check: injected faults detected " << detected << "/" << injected << "; calibrated n=128 (ell=" << P.ell
    << ", p*delta=" << P.p * P.delta << ") pass " << passes << "/100, fallback edges " << fallback;
  what = o.str();
  return injected >= 50 && detected == injected && passes >= 99 && P.calibrated();
}

bool churn_bound(std::string& what) {
  // Extra boundary-heavy runs on top of the tallies from AC1-AC3.
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    DecrementalConnectivity dc(gen::clusters(5, 10, 3, seed), 1 + seed % 2, seed, desk(1 + seed % 2, 0.3, 6, 4, 0.5));
    for (EdgeId e : gen::shuffled_deletions(dc.graph(), seed)) dc.erase(e);
    tally.check(dc);
  }
  std::ostringstream o;
  o << "churn per level <= (2n-1)*delta: " << tally.runs << " runs, " << tally.churn_violations
    << " violations, worst " << tally.worst_churn_ratio_num << "/" << tally.worst_churn_ratio_den;
  what = o.str();
  return tally.churn_violations == 0 && tally.runs > 0;
}

bool split_mass(std::string& what) {
  // Adversarial-ish: repeatedly cut paths and stars in trackers directly.
  long long extra = 0, bad = 0;
  std::mt19937 rng(77);
  for (int k = 0; k < 200; ++k) {
    int n = 2 + rng() % 200;
    std::vector<Edge> e;
    for (Vertex v = 1; v < n; ++v) e.push_back({static_cast<Vertex>(rng() % v), v});
    DynamicGraph g(n, e);
    ComponentTracker t(g, alive_mask(g), k);
    std::vector<EdgeId> order = g.alive_edges();
    std::shuffle(order.begin(), order.end(), rng);
    for (EdgeId x : order) t.erase(x);
    bad += t.split_mass() > static_cast<long long>(n) * (1 + ceil_log2(n));
    ++extra;
  }
  std::ostringstream o;
  o << "split mass <= n(1+ceil(log2 n)): " << tally.runs << " engine runs (" << tally.split_violations
    << " violations), " << extra << " tree runs (" << bad << " violations)";
  what = o.str();
  return tally.split_violations == 0 && bad == 0;
}

bool xor_oracle(std::string& what) {
  const int n = 64, s = 64, gamma = 2;
  std::mt19937 rng(99);
  long long queries = 0, unsound = 0, incomplete = 0, over = 0, collisions = 0;
  for (int round = 0; round < 20 && queries < 20000; ++round) {
    std::vector<Edge> edges;
    std::bernoulli_distribution coin(0.15);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (coin(rng)) edges.push_back({u, v});
    DynamicGraph g(n, edges);
    XorBoundarySketch x(g, s, gamma, 1000 + round);
    for (EdgeId e : g.alive_edges()) x.insert(e);
    std::vector<EdgeId> order = g.alive_edges();
    std::shuffle(order.begin(), order.end(), rng);
    for (int step = 0; step < 1000; ++step) {
      if (step % 4 == 0 && !order.empty()) {
        x.erase(order.back());
        g.erase(order.back());
        order.pop_back();
      }
      std::vector<Vertex> S;
      int density = 1 + rng() % 32;
      for (Vertex v = 0; v < n; ++v)
        if (static_cast<int>(rng() % 64) < density) S.push_back(v);
      if (S.empty()) S.push_back(rng() % n);
      ++queries;
      std::vector<char> in(n, 0);
      for (Vertex v : S) in[v] = 1;
      std::vector<EdgeId> bd;
      long long touching = 0;
      std::map<int, std::vector<EdgeId>> by_bucket;
      for (EdgeId e : g.alive_edges()) {
        bool a = in[g.endpoints(e).u], b = in[g.endpoints(e).v];
        touching += a || b;
        if (a != b) {
          bd.push_back(e);
          by_bucket[x.bucket(e)].push_back(e);
        }
      }
      BoundaryQuery q = x.find_boundary(S);
      std::set<int> hit(q.buckets.begin(), q.buckets.end());
      // Soundness: every hit bucket holds a boundary edge; returned edges are
      // exactly the boundary edges of the hit buckets.
      std::vector<EdgeId> want;
      for (auto& [b, es] : by_bucket) {
        Fingerprint acc;
        for (EdgeId e : es) acc ^= x.edge_fingerprint(e);
        if (acc.is_zero()) ++collisions;
        if (hit.count(b)) want.insert(want.end(), es.begin(), es.end());
      }
      for (int b : q.buckets)
        if (!by_bucket.count(b)) ++unsound;
      std::sort(want.begin(), want.end());
      if (want != q.edges) ++unsound;
      if (q.edges != bd) ++incomplete;
      double mu = static_cast<double>(touching) * q.buckets.size() / s;
      if (q.examined > 2 * mu + 18 * std::log(static_cast<double>(n))) ++over;
    }
  }
  std::ostringstream o;
  o << "xor boundary n=64 gamma=2: " << queries << " queries, soundness failures " << unsound
    << ", fingerprint collisions " << collisions << ", incomplete " << incomplete << " (limit "
    << static_cast<long long>(10.0 / n * queries) << "), scan bound exceeded " << over;
  what = o.str();
  return queries >= 10000 && unsound == 0 && incomplete <= 10.0 / n * queries && over <= 0.01 * queries;
}

// Simple random graph where at least 3n/4 vertices reach degree >= 4c.
DynamicGraph high_degree_graph(int n, int c, std::mt19937& rng) {
  std::set<std::pair<int, int>> es;
  std::vector<int> deg(n, 0);
  std::vector<Vertex> order(n);
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  std::shuffle(order.begin(), order.end(), rng);
  int need = (3 * n + 3) / 4;
  for (int k = 0; k < need; ++k) {
    Vertex v = order[k];
    while (deg[v] < 4 * c) {
      Vertex w = rng() % n;
      if (w == v || es.count({std::min(v, w), std::max(v, w)})) continue;
      es.insert({std::min(v, w), std::max(v, w)});
      ++deg[v];
      ++deg[w];
    }
  }
  std::vector<Edge> e;
  for (auto [u, v] : es) e.push_back({u, v});
  return DynamicGraph(n, e);
}

bool structural_lemmas(std::string& what) {
  std::mt19937 rng(2024);
  int l33 = 0, l33_bad = 0, c32 = 0, c32_bad = 0, l31 = 0, l31_bad = 0;
  while (l33 < 500) {
    int c = 2 + rng() % 3;
    int n = 4 * c + 2 + rng() % 10;
    DynamicGraph g = high_degree_graph(n, c, rng);
    int hi = 0;
    for (Vertex v = 0; v < n; ++v) hi += g.degree(v) >= 4 * c;
    if (4 * hi < 3 * n) continue;
    std::vector<int> comp = oracle::c_components(g, c);
    int qc = static_cast<int>(std::set<int>(comp.begin(), comp.end()).size());
    ++l33;
    if (6 * qc > 5 * n) ++l33_bad;
  }
  while (c32 < 500) {
    int c = 2 + rng() % 3;
    int n = 3 + rng() % 16;
    int m = rng() % (3 * n);
    std::vector<Edge> e;
    std::uniform_int_distribution<int> pick(0, n - 1);
    while (static_cast<int>(e.size()) < m) {
      int u = pick(rng), v = pick(rng);
      if (u != v) e.push_back({u, v});
    }
    DynamicGraph g(n, e);
    std::vector<int> comp = oracle::c_components(g, c);
    long long qc = std::set<int>(comp.begin(), comp.end()).size();
    long long crossing = 0;
    for (EdgeId x : g.alive_edges()) crossing += comp[g.endpoints(x).u] != comp[g.endpoints(x).v];
    ++c32;
    if (crossing > (c - 1) * (qc - 1)) ++c32_bad;
    if (m > static_cast<long long>(c - 1) * (n - 1)) {
      ++l31;
      if (qc == n) ++l31_bad;  // all singletons despite many edges
    }
  }
  std::ostringstream o;
  o << "structural lemmas: 5n/6 bound " << l33_bad << "/" << l33 << " violations; crossing <= (c-1)(q_c-1) "
    << c32_bad << "/" << c32 << " violations; dense => nontrivial component " << l31_bad << "/" << l31
    << " violations";
  what = o.str();
  return l33_bad == 0 && c32_bad == 0 && l31_bad == 0;
}

bool pairwise(std::string& what) {
  long long configs = 0, bad = 0;
  for (std::uint64_t P : {2, 3, 5, 7, 11, 13}) {
    for (std::uint64_t m = 1; m <= P; ++m) {
      for (std::uint64_t j = 0; j < P; ++j)
        for (std::uint64_t k = j + 1; k < P; ++k) {
          std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> joint;
          std::vector<std::uint64_t> mj(m, 0), mk(m, 0);
          for (std::uint64_t a = 0; a < P; ++a)
            for (std::uint64_t b = 0; b < P; ++b) {
              PairwiseGen gen(P, a, b, m, P);
              ++joint[{gen(j), gen(k)}];
              ++mj[gen(j)];
              ++mk[gen(k)];
            }
          ++configs;
          bool ok = true;
          for (std::uint64_t x = 0; x < m; ++x)
            for (std::uint64_t y = 0; y < m; ++y) {
              auto it = joint.find({x, y});
              std::uint64_t cnt = it == joint.end() ? 0 : it->second;
              ok = ok && cnt * P * P == mj[x] * mk[y];
              if (m == P) ok = ok && cnt == 1;
            }
          bad += !ok;
        }
    }
    bad += smallest_prime_at_least(P) != P;
  }
  std::ostringstream o;
  o << "pairwise generator: " << configs << " (P, m, j, k) configurations enumerated over all P^2 seeds, " << bad
    << " deviations";
  what = o.str();
  return bad == 0 && configs > 0;
}

bool matching(std::string& what) {
  std::vector<DynamicGraph> corpus;
  // Every connected labelled graph on up to 6 vertices with at most 14 edges.
  for (int n = 1; n <= 6; ++n) {
    std::vector<Edge> pairs;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) pairs.push_back({u, v});
    for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
      if (__builtin_popcount(mask) > 14) continue;
      std::vector<Edge> e;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1) e.push_back(pairs[i]);
      DynamicGraph g(n, e);
      std::vector<int> cc = oracle::components(g);
      if (std::set<int>(cc.begin(), cc.end()).size() == 1) corpus.push_back(std::move(g));
    }
  }
  // Random connected graphs with 7..10 vertices and at most 14 edges.
  std::mt19937 rng(31337);
  for (std::size_t extra = 0; extra < 8000; ++extra) {
    int n = 7 + rng() % 4;
    int m = n - 1 + rng() % (14 - (n - 1) + 1);
    std::set<std::pair<int, int>> es;
    for (Vertex v = 1; v < n; ++v) {
      Vertex u = rng() % v;
      es.insert({u, v});
    }
    while (static_cast<int>(es.size()) < m) {
      int u = rng() % n, v = rng() % n;
      if (u != v) es.insert({std::min(u, v), std::max(u, v)});
    }
    std::vector<Edge> e;
    for (auto [u, v] : es) e.push_back({u, v});
    std::vector<Vertex> perm(n);
    for (Vertex v = 0; v < n; ++v) perm[v] = v;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (Edge& x : e) x = {perm[x.u], perm[x.v]};
    std::shuffle(e.begin(), e.end(), rng);
    corpus.emplace_back(n, e);
  }
  CertificateParams P = desk(2, 0.5, 3, 2, 1.0);
  P.gamma = 4;
  long long disagree = 0, errors = 0, retries = 0;
  std::map<MatchingKind, long long> kinds;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const DynamicGraph& g = corpus[k];
    long long cnt = oracle::count_perfect_matchings(g, 2);
    MatchingKind want = cnt == 0 ? MatchingKind::kNoPerfectMatching
                        : cnt == 1 ? MatchingKind::kUnique
                                   : MatchingKind::kNotUnique;
    ++kinds[want];
    try {
      MatchingVerdict v = unique_perfect_matching(g, k, 8, k % 2 ? std::optional<CertificateParams>(P) : std::nullopt);
      retries += v.attempts - 1;
      if (v.kind != want) ++disagree;
      if (v.kind == MatchingKind::kUnique) {
        std::vector<int> hit(g.vertex_count(), 0);
        for (EdgeId e : v.matching) ++hit[g.endpoints(e).u], ++hit[g.endpoints(e).v];
        for (int h : hit) disagree += h != 1;
      }
    } catch (const std::exception&) {
      ++errors;
    }
  }
  std::ostringstream o;
  o << "unique perfect matching: " << corpus.size() << " connected graphs (unique " << kinds[MatchingKind::kUnique]
    << ", not_unique " << kinds[MatchingKind::kNotUnique] << ", none " << kinds[MatchingKind::kNoPerfectMatching]
    << "), " << disagree << " disagreements, " << errors << " errors, " << retries << " retries";
  what = o.str();
  return disagree == 0 && errors == 0 && corpus.size() >= 10000;
}

bool determinism(std::string& what) {
  std::vector<bench::BenchConfig> cfgs;
  for (int c : {1, 2, 3}) {
    bench::BenchConfig cfg;
    cfg.gen = c == 3 ? "grid" : "gnm";
    cfg.n = c == 3 ? 4 : 48;
    cfg.m = c == 3 ? 5 : 200;
    cfg.c = c;
    cfg.p = 0.25;
    cfg.delta = c + 4;
    cfg.ell = 4;
    cfg.q = 0.5;
    cfg.verify = bench::VerifyLevel::kCheckpoints;
    cfgs.push_back(cfg);
  }
  bench::BenchConfig hs;
  hs.gen = "halfsample";
  hs.n = 200;
  hs.c = 2;
  hs.p = 0.3;
  hs.delta = 5;
  hs.ell = 3;
  hs.q = 0.5;
  cfgs.push_back(hs);
  int compared = 0, differ = 0;
  for (const auto& cfg : cfgs) {
    auto once = [&]() {
      std::ostringstream csv;
      std::vector<std::unique_ptr<std::ostringstream>> logs;
      csv << bench::csv_header(false) << '\n';
      bench::bench_run(
          cfg, 21, 3, 2,
          [&](std::uint64_t) {
            logs.push_back(std::make_unique<std::ostringstream>());
            return logs.back().get();
          },
          [&](const bench::BenchRecord& r) { csv << bench::to_csv(r, false) << '\n'; });
      std::string all = csv.str();
      std::vector<std::string> texts;
      for (auto& l : logs) texts.push_back(l->str());
      std::sort(texts.begin(), texts.end());
      for (auto& t : texts) all += t;
      return all;
    };
    ++compared;
    differ += once() != once();
  }
  std::ostringstream o;
  o << "determinism: " << compared << " configurations x 3 seeds, CSV and logs byte-identical in "
    << compared - differ << "/" << compared;
  what = o.str();
  return differ == 0;
}

}  // namespace

int main() {
  criterion("AC1", [](std::string& w) { return oracle_equivalence(1, 200, w); });
  criterion("AC2", [](std::string& w) { return oracle_equivalence(2, 200, w); });
  criterion("AC3", self_check_rate);
  criterion("AC4", churn_bound);
  criterion("AC5", split_mass);
  criterion("AC6", xor_oracle);
  criterion("AC7", structural_lemmas);
  criterion("AC8", pairwise);
  criterion("AC9", matching);
  criterion("AC10", determinism);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
