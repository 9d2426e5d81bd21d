#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "deconn/deconn.hpp"

using namespace deconn;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kConfigError = 2;

struct Options {
  std::string graph_file;
  std::string gen = "gnm";
  int n = 64;
  long long m = 512;
  double prob = 0.1;
  int c = 1;
  std::uint64_t seed = 1;
  std::optional<double> p, q;
  std::optional<int> delta, ell, gamma;
  bool rule12c = false;
  bool no_fallback = false;
  std::string verify = "none";
  std::string csv;
  std::string log;
  std::string deletions;
  int runs = 1;
  int threads = 1;
  bool timing = false;
};

void add_graph_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--graph", o.graph_file, "edge-list file (\"n m\" then m lines \"u v\")");
  cmd->add_option("--gen", o.gen, "generator: gnm | gnp | dumbbell | grid | halfsample | file")
      ->check(CLI::IsMember({"gnm", "gnp", "dumbbell", "grid", "halfsample", "file"}));
  cmd->add_option("--n", o.n, "vertices (clique size for dumbbell, rows for grid)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--m", o.m, "edges for gnm, columns for grid")->check(CLI::NonNegativeNumber);
  cmd->add_option("--prob", o.prob, "edge probability for gnp")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--deletions", o.deletions, "deletion sequence file (edge ids, or \"shuffle <seed>\")");
}

void add_param_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--c", o.c, "connectivity order")->check(CLI::Range(1, 3));
  cmd->add_option("--p", o.p, "per-level sample fraction");
  cmd->add_option("--delta", o.delta, "boundary threshold");
  cmd->add_option("--ell", o.ell, "top level");
  cmd->add_option("--q", o.q, "R sample probability");
  cmd->add_option("--gamma", o.gamma, "fingerprint length multiplier");
  cmd->add_flag("--rule12c", o.rule12c, "derive delta as 12c/p instead of 32c/p");
  cmd->add_flag("--no-fallback", o.no_fallback, "disable the completion fallback");
}

std::shared_ptr<const DynamicGraph> load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file " + path);
  return std::make_shared<const DynamicGraph>(read_edge_list(in));
}

std::vector<EdgeId> load_deletions(const std::string& path, const DynamicGraph& g) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open deletion file " + path);
  return gen::read_deletion_sequence(in, g);
}

bench::BenchConfig make_config(const Options& o) {
  bench::BenchConfig cfg;
  cfg.gen = o.graph_file.empty() ? o.gen : "file";
  cfg.n = o.n;
  cfg.m = o.m;
  cfg.prob = o.prob;
  cfg.c = o.c;
  cfg.p = o.p;
  cfg.q = o.q;
  cfg.delta = o.delta;
  cfg.ell = o.ell;
  cfg.gamma = o.gamma;
  cfg.rule12c = o.rule12c;
  cfg.fallback = !o.no_fallback;
  cfg.verify = bench::parse_verify(o.verify);
  cfg.timing = o.timing;
  if (cfg.gen == "file") {
    if (o.graph_file.empty()) throw std::invalid_argument("--gen file needs --graph");
    cfg.graph = load_graph(o.graph_file);
  }
  if (!o.deletions.empty()) {
    // Deletion files refer to edge ids of the generated or loaded graph.
    bench::Workload w = bench::make_workload(cfg, o.seed);
    cfg.deletions = load_deletions(o.deletions, w.graph);
  }
  // Fail on bad parameters before any work starts.
  bench::resolve_params(cfg, std::max(1, cfg.gen == "file" ? cfg.graph->vertex_count() : o.n));
  return cfg;
}

int cmd_run(const Options& o) {
  bench::BenchConfig cfg = make_config(o);
  std::ofstream csv_file;
  std::ostream* csv = &std::cout;
  if (!o.csv.empty()) {
    csv_file.open(o.csv);
    if (!csv_file) throw std::invalid_argument("cannot open " + o.csv);
    csv = &csv_file;
  }
  std::vector<std::unique_ptr<std::ofstream>> logs;
  auto log_for = [&](std::uint64_t s) -> std::ostream* {
    if (o.log.empty()) return nullptr;
    std::string path = o.runs > 1 ? o.log + "." + std::to_string(s) : o.log;
    logs.push_back(std::make_unique<std::ofstream>(path));
    if (!*logs.back()) throw std::invalid_argument("cannot open " + path);
    return logs.back().get();
  };
  *csv << bench::csv_header(o.timing) << '\n';
  int status = kOk;
  bench::bench_run(cfg, o.seed, o.runs, o.threads, log_for, [&](const bench::BenchRecord& r) {
    *csv << bench::to_csv(r, o.timing) << '\n';
    if (r.verification_failed()) {
      std::cerr << "verification mismatch: seed=" << r.seed << ' ' << r.first_mismatch << '\n';
      status = kMismatch;
    }
    if (!r.bounds_ok()) {
      std::cerr << "bound violated: seed=" << r.seed << " split_mass=" << r.split_mass << '/' << r.split_mass_bound
                << " churn_level_max=" << r.churn_level_max << '/' << r.churn_level_bound << '\n';
      status = kMismatch;
    }
  });
  return status;
}

int cmd_verify(const Options& o) {
  if (o.log.empty()) throw std::invalid_argument("verify needs --log");
  bench::BenchConfig cfg;
  cfg.gen = o.graph_file.empty() ? o.gen : "file";
  cfg.n = o.n;
  cfg.m = o.m;
  cfg.prob = o.prob;
  if (cfg.gen == "file") cfg.graph = load_graph(o.graph_file);
  bench::Workload w = bench::make_workload(cfg, o.seed);
  if (!o.deletions.empty()) w.deletions = load_deletions(o.deletions, w.graph);
  std::ifstream in(o.log);
  if (!in) throw std::invalid_argument("cannot open " + o.log);
  bench::ReplayVerdict v = bench::verify_replay(in, w.graph, w.deletions);
  std::cout << v.describe() << '\n';
  return v.ok ? kOk : kMismatch;
}

int cmd_matching(const Options& o) {
  bench::BenchConfig cfg;
  cfg.gen = o.graph_file.empty() ? o.gen : "file";
  cfg.n = o.n;
  cfg.m = o.m;
  cfg.prob = o.prob;
  if (cfg.gen == "file") cfg.graph = load_graph(o.graph_file);
  bench::Workload w = bench::make_workload(cfg, o.seed);
  std::optional<CertificateParams> params;
  if (o.p || o.delta || o.ell || o.q || o.gamma) {
    cfg.c = 2;
    cfg.p = o.p;
    cfg.q = o.q;
    cfg.delta = o.delta;
    cfg.ell = o.ell;
    cfg.gamma = o.gamma;
    params = bench::resolve_params(cfg, w.graph.vertex_count());
  }
  MatchingVerdict v = unique_perfect_matching(w.graph, o.seed, 8, params);
  std::cout << to_string(v.kind) << " attempts=" << v.attempts;
  if (v.kind == MatchingKind::kUnique) {
    std::cout << " matching=";
    for (std::size_t i = 0; i < v.matching.size(); ++i) std::cout << (i ? "," : "") << v.matching[i];
  }
  std::cout << '\n';
  return kOk;
}

// Self-check pass rate and fallback usage over consecutive seeds.
int cmd_selftest_stats(const Options& o) {
  bench::BenchConfig cfg = make_config(o);
  int passes = 0, with_fallback = 0;
  std::cout << "seed,self_check,fail_edge,fail_update,fallback_edges\n";
  bench::bench_run(cfg, o.seed, o.runs, o.threads, nullptr, [&](const bench::BenchRecord& r) {
    passes += r.self_check;
    with_fallback += r.fallback_edges > 0;
    std::cout << r.seed << ',' << (r.self_check ? "pass" : "fail") << ',' << r.fail_edge << ',' << r.fail_update
              << ',' << r.fallback_edges << '\n';
  });
  std::cout << "# pass " << passes << '/' << o.runs << " fallback_runs " << with_fallback << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decremental c-edge-connectivity via sparse certificates"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "run seeded deletion benchmarks and emit CSV");
  add_graph_flags(run, o);
  add_param_flags(run, o);
  run->add_option("--verify", o.verify, "none | checkpoints | every-step")
      ->check(CLI::IsMember({"none", "checkpoints", "every-step"}));
  run->add_option("--csv", o.csv, "CSV output path (default stdout)");
  run->add_option("--log", o.log, "event log path (suffixed by seed when --runs > 1)");
  run->add_option("--runs", o.runs, "number of consecutive seeds")->check(CLI::PositiveNumber);
  run->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--timing", o.timing, "add wall-time columns");

  auto* verify = app.add_subcommand("verify", "replay an event log against oracles");
  add_graph_flags(verify, o);
  verify->add_option("--log", o.log, "event log to check")->required();

  auto* matching = app.add_subcommand("matching", "decide whether the graph has a unique perfect matching");
  add_graph_flags(matching, o);
  add_param_flags(matching, o);

  auto* stats = app.add_subcommand("selftest-stats", "self-check pass rate over seeds");
  add_graph_flags(stats, o);
  add_param_flags(stats, o);
  stats->add_option("--runs", o.runs, "number of consecutive seeds")->check(CLI::PositiveNumber);
  stats->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }
  try {
    if (run->parsed()) return cmd_run(o);
    if (verify->parsed()) return cmd_verify(o);
    if (matching->parsed()) return cmd_matching(o);
    return cmd_selftest_stats(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMismatch;
  }
}
