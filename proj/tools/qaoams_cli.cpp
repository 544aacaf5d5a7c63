#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qaoams/bench.hpp"
#include "qaoams/error.hpp"
#include "qaoams/graph.hpp"
#include "qaoams/hamiltonian.hpp"
#include "qaoams/io.hpp"
#include "qaoams/method.hpp"
#include "qaoams/simulator.hpp"

namespace fs = std::filesystem;
using namespace qaoams;

namespace {

constexpr int kRuntimeFailure = 1;
constexpr int kUsageError = 2;

// Errors caused by what the user asked for rather than by the run itself.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

Json read_json(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// One point per line; numbers separated by commas or blanks; '#' starts a
// comment.
std::vector<Point> read_points(const std::string& path, std::size_t dim) {
  std::istringstream in(read_file(path));
  std::vector<Point> points;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream fields(line);
    Point p;
    std::string tok;
    while (fields >> tok) {
      try {
        std::size_t used = 0;
        p.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("warm-start value '" + tok + "' is not a number", lineno);
      }
    }
    if (p.empty()) continue;
    if (p.size() != dim) {
      throw ParseError("warm-start point has " + std::to_string(p.size()) + " values, expected " + std::to_string(dim),
                       lineno);
    }
    points.push_back(std::move(p));
  }
  return points;
}

struct GenOptions {
  std::vector<int> caveman;
  std::vector<int> partition;
  double p_in = 0.75;
  double p_out = 0.1;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenOptions& o) {
  if (o.caveman.empty() == o.partition.empty()) throw UsageError("give exactly one of --caveman or --partition");
  Graph g;
  try {
    g = o.caveman.empty() ? random_partition(o.partition, o.p_in, o.p_out, o.seed)
                          : connected_caveman(o.caveman[0], o.caveman[1]);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  } catch (const CapacityError& e) {
    throw UsageError(e.what());
  }
  write_file(o.out, write_edge_list(g));
  if (!o.out.empty() && o.out != "-") {
    std::cout << "vertices " << g.n_vertices() << " edges " << g.n_edges() << '\n';
  } else {
    std::cerr << "vertices " << g.n_vertices() << " edges " << g.n_edges() << '\n';
  }
  return 0;
}

struct LandscapeOptions {
  std::string graph;
  std::vector<int> res{100, 100};
  std::string out;
};

int cmd_landscape(const LandscapeOptions& o) {
  if (o.res[0] < 1 || o.res[1] < 1) throw UsageError("--res values must be >= 1");
  const Graph g = load_edge_list(o.graph);
  const CostDiagonal diag = cost_diagonal(g);
  const LandscapeGrid grid = landscape_grid(diag, o.res[0], o.res[1]);
  std::string text = "beta,gamma,f\n";
  for (int i = 0; i < grid.beta_points; ++i)
    for (int j = 0; j < grid.gamma_points; ++j)
      text += fmt(grid.beta_at(i)) + ',' + fmt(grid.gamma_at(j)) + ',' + fmt(grid.at(i, j)) + '\n';
  write_file(o.out, text);
  return 0;
}

struct OptimizeOptions {
  std::string graph;
  int p = 1;
  std::string method = "model-tr";
  std::size_t budget = 1000;
  std::uint64_t seed = 0;
  int shots = 0;
  double ftol = 1e-3;
  double xtol = 1e-2;
  std::size_t sample_batch = 16;
  double sigma = 2.0;
  std::size_t max_active_runs = 1;
  std::string warm_start;
  std::string out;
};

int cmd_optimize(const OptimizeOptions& o) {
  MethodSpec spec;
  try {
    spec = parse_method(o.method);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (o.p < 1) throw UsageError("--p must be >= 1");
  if (o.budget < 1) throw UsageError("--budget must be >= 1");
  if (o.shots < 0) throw UsageError("--shots must be >= 0");
  if (spec.kind == MethodSpec::Kind::kMultistart && (o.sample_batch < 1 || o.sample_batch > o.budget)) {
    throw UsageError("--sample-batch must be in [1, budget]");
  }

  const Bounds bounds = Bounds::qaoa(o.p);
  if (spec.kind == MethodSpec::Kind::kLocal && o.budget < min_budget(spec.local, bounds.dim())) {
    throw UsageError(spec.name() + " needs --budget >= " + std::to_string(min_budget(spec.local, bounds.dim())));
  }
  const Graph g = load_edge_list(o.graph);
  const CostDiagonal diag = cost_diagonal(g);

  MethodSettings settings;
  settings.local_stop = StopRule{o.ftol, o.xtol, o.budget};
  settings.budget = o.budget;
  settings.seed = o.seed;
  settings.sample_batch = o.sample_batch;
  settings.sigma = o.sigma;
  settings.max_active_runs = o.max_active_runs;
  if (!o.warm_start.empty()) settings.initial_points = read_points(o.warm_start, bounds.dim());

  const ObjectiveFn f = make_objective(diag, o.p, o.shots, o.seed);
  const MethodOutcome r = run_method(spec, f, bounds, settings);

  const QaoaParams best = QaoaParams::from_flat(r.history.best_point());
  const Json summary = {{"graph", o.graph},
                        {"p", o.p},
                        {"method", spec.name()},
                        {"budget", o.budget},
                        {"seed", o.seed},
                        {"shots", o.shots},
                        {"warm_starts", settings.initial_points.size()},
                        {"evals", r.history.size()},
                        {"runs", r.runs},
                        {"status", std::string(to_string(r.status))},
                        {"best_beta", best.beta},
                        {"best_gamma", best.gamma},
                        {"best_f", r.history.best_value()},
                        {"best_expectation", -r.history.best_value()},
                        {"max_modularity", diag.max()}};
  if (o.out.empty()) {
    std::cout << summary.dump(2) << '\n';
    return 0;
  }
  fs::create_directories(o.out);
  const bool tagged = spec.kind != MethodSpec::Kind::kLocal;
  write_file((fs::path(o.out) / "trace.csv").string(), tagged ? trace_csv(r.history, r.run_id) : trace_csv(r.history));
  write_file((fs::path(o.out) / "summary.json").string(), summary.dump(2) + '\n');
  std::cout << "best f " << fmt(r.history.best_value()) << " after " << r.history.size() << " evaluations\n";
  return 0;
}

struct ExperimentOptions {
  std::string config;
  std::string out;
  int workers = 1;
};

std::vector<SuiteGraph> suite_for(const std::vector<std::string>& paths) {
  return paths.empty() ? benchmark_graphs() : load_graphs(paths);
}

int cmd_bench(const ExperimentOptions& o, const std::string& mode) {
  FixedBudgetConfig config;
  try {
    if (!o.config.empty()) config = fixed_budget_config_from_json(config_section(read_json(o.config), "bench"));
    if (!mode.empty()) config.mode = parse_experiment_mode(mode);
    if (!o.out.empty()) config.out = o.out;
    if (config.out.empty()) throw InvalidArgument("no output directory (use --out or the config key 'out')");
    config.validate();
    for (const auto& m : config.methods) parse_method(m);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (o.workers < 1) throw UsageError("--workers must be >= 1");

  const ExperimentResult result = run_fixed_budget_experiment(suite_for(config.graphs), config, o.workers);
  write_experiment(result, config.out);
  for (const auto& c : result.cells)
    if (!c.error.empty())
      std::cerr << result.instances[c.instance].id << " p=" << result.instances[c.instance].p_steps << ' ' << c.method
                << " seed " << c.seed << ": " << c.error << '\n';
  for (const auto& s : result.summaries) {
    std::printf("p=%d %-24s solved %.3f  ratio median %.4f\n", s.p_steps, s.method.c_str(), s.solved_fraction,
                s.ratio.median);
  }
  return result.failures() == result.cells.size() ? kRuntimeFailure : 0;
}

int cmd_reuse(const ExperimentOptions& o) {
  ReuseConfig config;
  try {
    if (!o.config.empty()) config = reuse_config_from_json(config_section(read_json(o.config), "reuse"));
    if (!o.out.empty()) config.out = o.out;
    if (config.out.empty()) throw InvalidArgument("no output directory (use --out or the config key 'out')");
    config.validate();
    for (const auto& m : config.methods) parse_method(m);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (o.workers < 1) throw UsageError("--workers must be >= 1");

  const ReuseResult result = reuse_experiment(suite_for(config.graphs), config, o.workers);
  write_reuse(result, config.out);
  for (const auto& e : result.errors) std::cerr << e << '\n';
  for (const auto& s : result.summaries) {
    std::printf("%-10s %-24s %-4s rows %zu  median evals %s\n", to_string(s.mode).c_str(), s.method.c_str(),
                s.warm_start ? "warm" : "cold", s.rows,
                s.median_evals_to_tau ? fmt(*s.median_evals_to_tau).c_str() : "unsolved");
  }
  return !result.records.empty() && result.errors.size() >= result.records.size() ? kRuntimeFailure : 0;
}

int cmd_bruteforce(const std::string& graph) {
  const Graph g = load_edge_list(graph);
  const BestPartition best = best_partition_bruteforce(g);
  const Json out = {{"graph", graph},
                    {"n_vertices", g.n_vertices()},
                    {"n_edges", g.n_edges()},
                    {"basis_state", best.basis_state},
                    {"spins", best.spins},
                    {"modularity", best.modularity}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QAOA modularity clustering: simulation, optimization and benchmarks"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a benchmark graph as an edge list");
  gen_cmd->add_option("--caveman", gen.caveman, "Connected caveman: cliques and clique size")->expected(2);
  gen_cmd->add_option("--partition", gen.partition, "Planted partition community sizes")->expected(1, -1);
  gen_cmd->add_option("--p-in", gen.p_in, "Intra-community edge probability");
  gen_cmd->add_option("--p-out", gen.p_out, "Inter-community edge probability");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--out", gen.out, "Output file (stdout when omitted)");

  LandscapeOptions land;
  auto* land_cmd = app.add_subcommand("landscape", "p=1 objective on a (beta, gamma) grid as CSV");
  land_cmd->add_option("--graph", land.graph, "Edge-list file")->required();
  land_cmd->add_option("--res", land.res, "Grid points in beta and gamma")->expected(2);
  land_cmd->add_option("--out", land.out, "Output CSV (stdout when omitted)");

  OptimizeOptions opt;
  auto* opt_cmd = app.add_subcommand("optimize", "One optimization run");
  opt_cmd->add_option("--graph", opt.graph, "Edge-list file")->required();
  opt_cmd->add_option("--p", opt.p, "QAOA steps");
  opt_cmd->add_option("--method", opt.method, "Method: " + valid_method_names());
  opt_cmd->add_option("--budget", opt.budget, "Objective evaluations");
  opt_cmd->add_option("--seed", opt.seed, "Seed for starts, samples and shots");
  opt_cmd->add_option("--shots", opt.shots, "Measurements per evaluation (0 = exact)");
  opt_cmd->add_option("--ftol", opt.ftol, "Local stop: absolute f tolerance");
  opt_cmd->add_option("--xtol", opt.xtol, "Local stop: absolute x tolerance");
  opt_cmd->add_option("--sample-batch", opt.sample_batch, "Multistart points per batch");
  opt_cmd->add_option("--sigma", opt.sigma, "Multistart radius factor");
  opt_cmd->add_option("--max-active-runs", opt.max_active_runs, "Multistart concurrent local runs (0 = no limit)");
  opt_cmd->add_option("--warm-start", opt.warm_start, "File with starting points, one per line");
  opt_cmd->add_option("--out", opt.out, "Directory for trace.csv and summary.json");

  ExperimentOptions bench;
  std::string bench_mode;
  auto* bench_cmd = app.add_subcommand("bench", "Fixed-budget benchmark over the suite");
  bench_cmd->add_option("--config", bench.config, "JSON config or manifest");
  bench_cmd->add_option("--out", bench.out, "Output directory (overrides the config)");
  bench_cmd->add_option("--mode", bench_mode, "restart or zero-tol (overrides the config)");
  bench_cmd->add_option("--workers", bench.workers, "Parallel cells");

  ExperimentOptions reuse;
  auto* reuse_cmd = app.add_subcommand("reuse", "Parameter reuse after edge removal");
  reuse_cmd->add_option("--config", reuse.config, "JSON config or manifest");
  reuse_cmd->add_option("--out", reuse.out, "Output directory (overrides the config)");
  reuse_cmd->add_option("--workers", reuse.workers, "Parallel cells");

  std::string brute_graph;
  auto* brute_cmd = app.add_subcommand("bruteforce", "Best two-community modularity by enumeration");
  brute_cmd->add_option("--graph", brute_graph, "Edge-list file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*land_cmd) return cmd_landscape(land);
    if (*opt_cmd) return cmd_optimize(opt);
    if (*bench_cmd) return cmd_bench(bench, bench_mode);
    if (*reuse_cmd) return cmd_reuse(reuse);
    if (*brute_cmd) return cmd_bruteforce(brute_graph);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kUsageError;
}
