#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qaoams/graph.hpp"
#include "qaoams/hamiltonian.hpp"
#include "qaoams/localopt.hpp"
#include "qaoams/method.hpp"
#include "qaoams/multistart.hpp"

namespace qaoams {

struct SuiteGraph {
  std::string id;
  Graph graph;
};

// The six benchmark graphs: caveman(5,2), caveman(3,4), caveman(2,6) and
// three planted-partition graphs with p_in = 0.75, p_out = 0.1.
std::vector<SuiteGraph> benchmark_graphs();
// Edge-list files as suite graphs, id = file name without extension.
std::vector<SuiteGraph> load_graphs(const std::vector<std::string>& paths);

struct ProblemInstance {
  std::string id;
  Graph graph;
  int p_steps = 1;
  CostDiagonal diag;
  Bounds bounds;
  // Best value seen by any method on this instance; +inf until an experiment
  // has run.
  double best_known_f;
  // -C_max: no QAOA state can go below it.
  double variational_bound;
};

ProblemInstance make_instance(std::string id, Graph graph, int p_steps);
std::vector<ProblemInstance> benchmark_suite(const std::vector<int>& steps = {1, 2, 4});

// Smallest 1-indexed j with f(x0) - f(x_j) >= (1 - tau)(f(x0) - best_known).
std::optional<std::size_t> solved_after(std::span<const double> values, double x0_value,
                                        double best_known, double tau);
std::optional<std::size_t> solved_after(const EvalHistory& history, double x0_value,
                                        double best_known, double tau);

struct ProfileEntry {
  std::string problem;
  std::string method;
  int seed = 0;
  std::optional<std::size_t> evals;  // empty when unsolved
};

struct ProfileTable {
  double tau = 0.01;
  std::vector<ProfileEntry> entries;
};

struct ProfileCurve {
  std::string method;
  std::vector<std::size_t> alpha;
  std::vector<double> d;
};

// d_s(alpha) = fraction of (problem, seed) pairs method s solved within
// alpha evaluations. Methods appear in first-seen order.
std::vector<ProfileCurve> data_profile(const ProfileTable& table, std::span<const std::size_t> alpha_grid);

// (-found_f) / (-best_f); best_f must be negative.
double approximation_ratio(double found_f, double best_f);

// Linear interpolation between order statistics; q in [0, 1].
double quantile(std::vector<double> values, double q);

struct Quartiles {
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
};
Quartiles quartiles(const std::vector<double>& values);

enum class ExperimentMode { kZeroTol, kRestart };
std::string to_string(ExperimentMode m);
ExperimentMode parse_experiment_mode(std::string_view s);

struct FixedBudgetConfig {
  std::vector<int> steps{1, 2, 4};
  std::vector<std::string> methods{"nelder-mead", "pattern", "model-tr", "multistart:model-tr"};
  std::size_t budget = 1000;
  int seeds = 10;
  double tau = 0.01;
  ExperimentMode mode = ExperimentMode::kRestart;
  std::uint64_t seed = 2019;
  double ftol_abs = 1e-3;
  double xtol_abs = 1e-2;
  std::size_t sample_batch = 16;
  std::size_t max_active_runs = 1;
  double sigma = 2.0;
  int shots = 0;  // 0 = exact objective
  // Edge-list files to use instead of the built-in suite.
  std::vector<std::string> graphs;
  std::string out;

  void validate() const;
};

struct CellResult {
  std::size_t instance = 0;  // index into ExperimentResult::instances
  std::string method;
  int seed = 0;
  std::vector<double> values;
  std::size_t runs = 0;
  std::string error;  // nonempty when the cell failed
};

struct MethodSummary {
  int p_steps = 1;
  std::string method;
  double solved_fraction = 0.0;  // d(budget)
  Quartiles ratio;
};

struct ExperimentResult {
  FixedBudgetConfig config;
  std::vector<ProblemInstance> instances;
  std::vector<CellResult> cells;
  std::vector<MethodSummary> summaries;

  // Solved table for one p (problems are the instances with that p).
  ProfileTable profile(int p_steps) const;
  std::size_t failures() const;
};

// How a method named in an experiment is actually run: in restart mode plain
// local methods restart after convergence; in zero-tol mode they run once
// with zero tolerances. Multistart always keeps the configured tolerances.
MethodSpec experiment_method(const std::string& name, ExperimentMode mode);

// Objective for one cell. With shots > 0 each evaluation is sampled using a
// seed derived from (seed, evaluation count).
ObjectiveFn make_objective(const CostDiagonal& diag, int p_steps, int shots, std::uint64_t seed);

ExperimentResult run_fixed_budget_experiment(const std::vector<SuiteGraph>& graphs,
                                             const FixedBudgetConfig& config, int workers = 1);

// Restarting model-tr with the given tolerances until `budget` evaluations,
// then converged-run minimizers merged within xtol, ascending f.
std::vector<LocalOptimum> exhaustive_optima(const ProblemInstance& instance, std::size_t budget,
                                            std::uint64_t seed, double ftol_abs = 1e-3,
                                            double xtol_abs = 1e-2);

enum class ReuseMode { kRandom, kWorstCase };
std::string to_string(ReuseMode m);
ReuseMode parse_reuse_mode(std::string_view s);

struct ReuseConfig {
  int p_steps = 1;
  std::vector<std::string> methods{"model-tr", "multistart:model-tr"};
  std::vector<ReuseMode> modes{ReuseMode::kRandom, ReuseMode::kWorstCase};
  int n_random_edges = 5;
  std::size_t budget = 1000;
  int seeds = 10;
  double tau = 0.01;
  std::size_t exhaustive_budget = 100000;
  std::uint64_t seed = 2019;
  double ftol_abs = 1e-3;
  double xtol_abs = 1e-2;
  std::size_t sample_batch = 16;
  std::size_t max_active_runs = 1;
  double sigma = 2.0;
  std::vector<std::string> graphs;
  std::string out;

  void validate() const;
};

struct ReuseRecord {
  std::string base_graph;
  Edge removed_edge;
  ReuseMode mode = ReuseMode::kRandom;
  std::string method;
  bool warm_start = false;
  int seed = 0;
  std::optional<std::size_t> evals_to_tau;
  double final_ratio = 0.0;
  // Not part of the record proper; kept for traces and checks.
  double x0_value = 0.0;
  double best_known_f = 0.0;
  std::vector<double> values;
};

struct ReuseSummary {
  ReuseMode mode = ReuseMode::kRandom;
  std::string method;
  bool warm_start = false;
  std::size_t rows = 0;
  // Unsolved runs count as +inf; empty when the median itself is unsolved.
  std::optional<double> median_evals_to_tau;
  Quartiles ratio;
};

struct ReuseResult {
  ReuseConfig config;
  std::vector<std::string> graph_ids;
  // Per base graph: the harvested optima used for warm starts.
  std::vector<std::vector<LocalOptimum>> optima;
  std::vector<ReuseRecord> records;
  std::vector<ReuseSummary> summaries;
  std::vector<std::string> skipped;  // perturbations skipped, with reason
  std::vector<std::string> errors;
};

// For every base graph and removed edge, runs each method from the base
// graph's optima (warm) and from random starts (cold). Both arms share the
// seed; x0 for the convergence test is the cold arm's random start.
ReuseResult reuse_experiment(const std::vector<SuiteGraph>& graphs, const ReuseConfig& config,
                             int workers = 1);

// The edges removed in random mode: distinct, drawn with a seeded generator.
std::vector<Edge> random_edges(const Graph& g, int count, std::uint64_t seed);

// CSV writers. Outputs depend only on the result, never on worker count.
void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir);
void write_reuse(const ReuseResult& result, const std::filesystem::path& dir);

}  // namespace qaoams
