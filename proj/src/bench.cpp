#include "qaoams/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <thread>

#include "qaoams/io.hpp"
#include "qaoams/simulator.hpp"

namespace qaoams {

namespace {

constexpr double kPartitionPin = 0.75;
constexpr double kPartitionPout = 0.1;

// Runs body(i) for i in [0, n) on `workers` threads. Results must be stored
// by index; completion order is irrelevant.
template <class Body>
void parallel_for(std::size_t n, int workers, Body&& body) {
  const std::size_t threads = std::min<std::size_t>(std::max(workers, 1), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

std::vector<std::string> first_seen(const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& n : names)
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  return out;
}

}  // namespace

std::vector<SuiteGraph> benchmark_graphs() {
  std::vector<SuiteGraph> out;
  out.push_back({"caveman-5x2", connected_caveman(5, 2)});
  out.push_back({"caveman-3x4", connected_caveman(3, 4)});
  out.push_back({"caveman-2x6", connected_caveman(2, 6)});
  out.push_back({"partition-5-5", random_partition({5, 5}, kPartitionPin, kPartitionPout, 1)});
  out.push_back({"partition-6-5", random_partition({6, 5}, kPartitionPin, kPartitionPout, 2)});
  out.push_back({"partition-6-6", random_partition({6, 6}, kPartitionPin, kPartitionPout, 3)});
  return out;
}

std::vector<SuiteGraph> load_graphs(const std::vector<std::string>& paths) {
  std::vector<SuiteGraph> out;
  for (const auto& path : paths) out.push_back({std::filesystem::path(path).stem().string(), load_edge_list(path)});
  return out;
}

ProblemInstance make_instance(std::string id, Graph graph, int p_steps) {
  CostDiagonal diag = cost_diagonal(graph);
  const double bound = -diag.max();
  return ProblemInstance{std::move(id), std::move(graph), p_steps, std::move(diag), Bounds::qaoa(p_steps),
                         std::numeric_limits<double>::infinity(), bound};
}

std::vector<ProblemInstance> benchmark_suite(const std::vector<int>& steps) {
  std::vector<ProblemInstance> out;
  for (int p : steps) {
    for (auto& g : benchmark_graphs()) out.push_back(make_instance(g.id, std::move(g.graph), p));
  }
  return out;
}

std::optional<std::size_t> solved_after(std::span<const double> values, double x0_value,
                                        double best_known, double tau) {
  if (values.empty()) throw InvalidArgument("solved_after needs a nonempty history");
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidArgument("tau must lie in (0, 1)");
  const double target = (1.0 - tau) * (x0_value - best_known);
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (x0_value - values[j] >= target) return j + 1;
  }
  return std::nullopt;
}

std::optional<std::size_t> solved_after(const EvalHistory& history, double x0_value,
                                        double best_known, double tau) {
  return solved_after(history.values(), x0_value, best_known, tau);
}

std::vector<ProfileCurve> data_profile(const ProfileTable& table, std::span<const std::size_t> alpha_grid) {
  if (table.entries.empty()) throw InvalidArgument("data profile of an empty table");
  std::vector<std::string> names;
  for (const auto& e : table.entries) names.push_back(e.method);
  std::vector<ProfileCurve> curves;
  for (const auto& method : first_seen(names)) {
    std::vector<std::size_t> counts;
    for (const auto& e : table.entries) {
      if (e.method != method) continue;
      counts.push_back(e.evals ? *e.evals : std::numeric_limits<std::size_t>::max());
    }
    ProfileCurve c{method, {alpha_grid.begin(), alpha_grid.end()}, {}};
    for (std::size_t a : alpha_grid) {
      const auto hit = std::count_if(counts.begin(), counts.end(),
                                     [&](std::size_t t) { return t != std::numeric_limits<std::size_t>::max() && t <= a; });
      c.d.push_back(static_cast<double>(hit) / static_cast<double>(counts.size()));
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

double approximation_ratio(double found_f, double best_f) {
  if (!(best_f < 0.0)) throw InvalidArgument("approximation ratio undefined: best f is not negative");
  return -found_f / -best_f;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidArgument("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  if (frac == 0.0 || values[lo] == values[hi]) return values[lo];
  return values[lo] + frac * (values[hi] - values[lo]);
}

Quartiles quartiles(const std::vector<double>& values) {
  return {quantile(values, 0.25), quantile(values, 0.5), quantile(values, 0.75)};
}

std::string to_string(ExperimentMode m) { return m == ExperimentMode::kZeroTol ? "zero-tol" : "restart"; }

ExperimentMode parse_experiment_mode(std::string_view s) {
  if (s == "zero-tol") return ExperimentMode::kZeroTol;
  if (s == "restart") return ExperimentMode::kRestart;
  throw InvalidArgument("unknown mode '" + std::string(s) + "' (valid: zero-tol, restart)");
}

void FixedBudgetConfig::validate() const {
  if (steps.empty()) throw InvalidArgument("steps must not be empty");
  for (int p : steps)
    if (p < 1) throw InvalidArgument("steps must be >= 1");
  if (methods.empty()) throw InvalidArgument("methods must not be empty");
  for (const auto& m : methods) parse_method(m);
  if (budget < 1) throw InvalidArgument("budget must be >= 1");
  if (seeds < 1) throw InvalidArgument("seeds must be >= 1");
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidArgument("tau must lie in (0, 1)");
  StopRule{ftol_abs, xtol_abs, budget}.validate();
  if (sample_batch < 1 || sample_batch > budget) throw InvalidArgument("sample_batch must be in [1, budget]");
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be > 0");
  if (shots < 0) throw InvalidArgument("shots must be >= 0");
}

MethodSpec experiment_method(const std::string& name, ExperimentMode mode) {
  MethodSpec spec = parse_method(name);
  if (spec.kind == MethodSpec::Kind::kLocal && mode == ExperimentMode::kRestart) {
    spec.kind = MethodSpec::Kind::kRestarting;
  }
  return spec;
}

ObjectiveFn make_objective(const CostDiagonal& diag, int p_steps, int shots, std::uint64_t seed) {
  if (shots <= 0) return QaoaObjective(diag, p_steps);
  auto counter = std::make_shared<std::uint64_t>(0);
  return [&diag, p_steps, shots, seed, counter](std::span<const double> x) {
    if (static_cast<int>(x.size()) != 2 * p_steps) throw DimensionMismatch("wrong parameter count");
    return sampled_objective(diag, QaoaParams::from_flat(x), shots, derive_seed(seed, {(*counter)++})).f;
  };
}

namespace {

MethodSettings settings_for(const MethodSpec& spec, ExperimentMode mode, double ftol, double xtol,
                            std::size_t budget, std::uint64_t seed, std::size_t batch, std::size_t active,
                            double sigma) {
  MethodSettings s;
  const bool zero = mode == ExperimentMode::kZeroTol && spec.kind != MethodSpec::Kind::kMultistart;
  s.local_stop = zero ? StopRule::zero_tolerance(budget) : StopRule{ftol, xtol, budget};
  s.budget = budget;
  s.seed = seed;
  s.sample_batch = batch;
  s.max_active_runs = active;
  s.sigma = sigma;
  return s;
}

}  // namespace

ProfileTable ExperimentResult::profile(int p_steps) const {
  ProfileTable table{config.tau, {}};
  for (const auto& c : cells) {
    const auto& inst = instances[c.instance];
    if (inst.p_steps != p_steps || !c.error.empty()) continue;
    table.entries.push_back(
        {inst.id, c.method, c.seed, solved_after(c.values, c.values.front(), inst.best_known_f, config.tau)});
  }
  return table;
}

std::size_t ExperimentResult::failures() const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const auto& c) { return !c.error.empty(); }));
}

ExperimentResult run_fixed_budget_experiment(const std::vector<SuiteGraph>& graphs,
                                             const FixedBudgetConfig& config, int workers) {
  config.validate();
  ExperimentResult result;
  result.config = config;
  for (int p : config.steps)
    for (const auto& g : graphs) result.instances.push_back(make_instance(g.id, g.graph, p));

  for (std::size_t i = 0; i < result.instances.size(); ++i)
    for (const auto& m : config.methods)
      for (int s = 0; s < config.seeds; ++s) result.cells.push_back({i, m, s, {}, 0, {}});

  parallel_for(result.cells.size(), workers, [&](std::size_t k) {
    CellResult& cell = result.cells[k];
    const ProblemInstance& inst = result.instances[cell.instance];
    const std::size_t graph_index = cell.instance % graphs.size();
    // Shared by every method on this (problem, p, seed): common start points.
    const std::uint64_t seed = derive_seed(config.seed, {graph_index, static_cast<std::uint64_t>(inst.p_steps),
                                                         static_cast<std::uint64_t>(cell.seed)});
    try {
      const MethodSpec spec = experiment_method(cell.method, config.mode);
      const MethodSettings settings = settings_for(spec, config.mode, config.ftol_abs, config.xtol_abs,
                                                   config.budget, seed, config.sample_batch, config.max_active_runs, config.sigma);
      const ObjectiveFn f = make_objective(inst.diag, inst.p_steps, config.shots, derive_seed(seed, {1}));
      MethodOutcome out = run_method(spec, f, inst.bounds, settings);
      cell.values = out.history.values();
      cell.runs = out.runs;
    } catch (const std::exception& e) {
      cell.error = e.what();
      cell.values.clear();
    }
  });

  for (const auto& c : result.cells) {
    if (!c.error.empty()) continue;
    auto& best = result.instances[c.instance].best_known_f;
    for (double v : c.values) best = std::min(best, v);
  }

  for (int p : config.steps) {
    const ProfileTable table = result.profile(p);
    for (const auto& m : config.methods) {
      MethodSummary s{p, m, 0.0, {}};
      std::vector<double> ratios;
      std::size_t solved = 0, total = 0;
      for (const auto& e : table.entries) {
        if (e.method != m) continue;
        ++total;
        if (e.evals) ++solved;
      }
      for (const auto& c : result.cells) {
        const auto& inst = result.instances[c.instance];
        if (inst.p_steps != p || c.method != m || !c.error.empty()) continue;
        ratios.push_back(approximation_ratio(*std::min_element(c.values.begin(), c.values.end()), inst.best_known_f));
      }
      if (total > 0) s.solved_fraction = static_cast<double>(solved) / static_cast<double>(total);
      if (!ratios.empty()) s.ratio = quartiles(ratios);
      result.summaries.push_back(std::move(s));
    }
  }
  return result;
}

std::vector<LocalOptimum> exhaustive_optima(const ProblemInstance& instance, std::size_t budget,
                                            std::uint64_t seed, double ftol_abs, double xtol_abs) {
  const QaoaObjective f(instance.diag, instance.p_steps);
  const StopRule stop{ftol_abs, xtol_abs, budget};
  const RunResult r = restarting(LocalMethod::kModelTrustRegion, f, instance.bounds, stop, budget, seed);
  return harvest_local_optima(r, xtol_abs);
}

std::string to_string(ReuseMode m) { return m == ReuseMode::kRandom ? "random" : "worst-case"; }

ReuseMode parse_reuse_mode(std::string_view s) {
  if (s == "random") return ReuseMode::kRandom;
  if (s == "worst-case") return ReuseMode::kWorstCase;
  throw InvalidArgument("unknown reuse mode '" + std::string(s) + "' (valid: random, worst-case)");
}

void ReuseConfig::validate() const {
  if (p_steps < 1) throw InvalidArgument("p must be >= 1");
  if (methods.empty()) throw InvalidArgument("methods must not be empty");
  for (const auto& m : methods) parse_method(m);
  if (modes.empty()) throw InvalidArgument("modes must not be empty");
  if (n_random_edges < 1) throw InvalidArgument("n_random_edges must be >= 1");
  if (budget < 1) throw InvalidArgument("budget must be >= 1");
  if (seeds < 1) throw InvalidArgument("seeds must be >= 1");
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidArgument("tau must lie in (0, 1)");
  if (exhaustive_budget < 1) throw InvalidArgument("exhaustive_budget must be >= 1");
  StopRule{ftol_abs, xtol_abs, budget}.validate();
  if (sample_batch < 1 || sample_batch > budget) throw InvalidArgument("sample_batch must be in [1, budget]");
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be > 0");
}

std::vector<Edge> random_edges(const Graph& g, int count, std::uint64_t seed) {
  std::vector<Edge> pool = g.edges();
  Rng rng(seed);
  std::vector<Edge> out;
  while (static_cast<int>(out.size()) < count && !pool.empty()) {
    const auto k = rng.below(pool.size());
    out.push_back(pool[k]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return out;
}

ReuseResult reuse_experiment(const std::vector<SuiteGraph>& graphs, const ReuseConfig& config, int workers) {
  config.validate();
  ReuseResult result;
  result.config = config;
  const auto p = static_cast<std::uint64_t>(config.p_steps);

  for (const auto& g : graphs) result.graph_ids.push_back(g.id);
  result.optima.resize(graphs.size());
  parallel_for(graphs.size(), workers, [&](std::size_t g) {
    const ProblemInstance base = make_instance(graphs[g].id, graphs[g].graph, config.p_steps);
    result.optima[g] = exhaustive_optima(base, config.exhaustive_budget, derive_seed(config.seed, {g, p, 0}),
                                         config.ftol_abs, config.xtol_abs);
  });

  struct Perturbation {
    std::size_t graph;
    ReuseMode mode;
    Edge edge;
    std::unique_ptr<ProblemInstance> instance;
  };
  std::vector<Perturbation> perturbed;
  for (ReuseMode mode : config.modes) {
    for (std::size_t g = 0; g < graphs.size(); ++g) {
      const Graph& base = graphs[g].graph;
      std::vector<Edge> edges;
      if (mode == ReuseMode::kRandom) {
        edges = random_edges(base, config.n_random_edges, derive_seed(config.seed, {g, p, 1}));
      } else if (base.n_edges() > 0) {
        edges = {worst_case_edge(base)};
      }
      for (const Edge& e : edges) {
        Graph reduced = remove_edge(base, e);
        if (reduced.n_edges() == 0) {
          result.skipped.push_back(graphs[g].id + " minus (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                   "): no edges left");
          continue;
        }
        perturbed.push_back({g, mode, e, std::make_unique<ProblemInstance>(
                                              make_instance(graphs[g].id, std::move(reduced), config.p_steps))});
      }
    }
  }

  // One record per (perturbation, method, seed, arm); cold and warm adjacent.
  for (const auto& pert : perturbed)
    for (const auto& m : config.methods)
      for (int s = 0; s < config.seeds; ++s)
        for (bool warm : {false, true}) {
          ReuseRecord r;
          r.base_graph = graphs[pert.graph].id;
          r.removed_edge = pert.edge;
          r.mode = pert.mode;
          r.method = m;
          r.warm_start = warm;
          r.seed = s;
          result.records.push_back(std::move(r));
        }
  const std::size_t per_perturbation = config.methods.size() * static_cast<std::size_t>(config.seeds) * 2;
  std::vector<std::string> errors(result.records.size());

  parallel_for(result.records.size(), workers, [&](std::size_t k) {
    ReuseRecord& r = result.records[k];
    const Perturbation& pert = perturbed[k / per_perturbation];
    const ProblemInstance& inst = *pert.instance;
    const std::uint64_t seed = derive_seed(
        config.seed, {pert.graph, p, 2, static_cast<std::uint64_t>(pert.mode), static_cast<std::uint64_t>(pert.edge.u),
                      static_cast<std::uint64_t>(pert.edge.v), static_cast<std::uint64_t>(r.seed)});
    try {
      const MethodSpec spec = experiment_method(r.method, ExperimentMode::kRestart);
      MethodSettings settings = settings_for(spec, ExperimentMode::kRestart, config.ftol_abs, config.xtol_abs,
                                             config.budget, seed, config.sample_batch, config.max_active_runs, config.sigma);
      if (r.warm_start) {
        for (const auto& o : result.optima[pert.graph]) settings.initial_points.push_back(o.point);
      }
      const QaoaObjective f(inst.diag, inst.p_steps);
      r.values = run_method(spec, f, inst.bounds, settings).history.values();
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  });
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (!errors[k].empty()) result.errors.push_back(result.records[k].base_graph + ": " + errors[k]);
  }

  // f~ per perturbed instance over every method, seed and arm; x0 from the
  // cold arm of the same (method, seed).
  for (std::size_t pi = 0; pi < perturbed.size(); ++pi) {
    const std::size_t first = pi * per_perturbation;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = first; k < first + per_perturbation; ++k)
      for (double v : result.records[k].values) best = std::min(best, v);
    for (std::size_t k = first; k < first + per_perturbation; k += 2) {
      ReuseRecord& cold = result.records[k];
      ReuseRecord& warm = result.records[k + 1];
      if (cold.values.empty()) continue;
      const double x0 = cold.values.front();
      for (ReuseRecord* r : {&cold, &warm}) {
        if (r->values.empty()) continue;
        r->x0_value = x0;
        r->best_known_f = best;
        r->evals_to_tau = solved_after(r->values, x0, best, config.tau);
        r->final_ratio = approximation_ratio(*std::min_element(r->values.begin(), r->values.end()), best);
      }
    }
  }

  for (ReuseMode mode : config.modes) {
    for (const auto& m : config.methods) {
      for (bool warm : {true, false}) {
        ReuseSummary s{mode, m, warm, 0, std::nullopt, {}};
        std::vector<double> evals, ratios;
        for (const auto& r : result.records) {
          if (r.mode != mode || r.method != m || r.warm_start != warm || r.values.empty()) continue;
          evals.push_back(r.evals_to_tau ? static_cast<double>(*r.evals_to_tau)
                                         : std::numeric_limits<double>::infinity());
          ratios.push_back(r.final_ratio);
        }
        s.rows = evals.size();
        if (!evals.empty()) {
          const double med = quantile(evals, 0.5);
          if (std::isfinite(med)) s.median_evals_to_tau = med;
          s.ratio = quartiles(ratios);
        }
        result.summaries.push_back(std::move(s));
      }
    }
  }
  return result;
}

void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto& cfg = result.config;
  const std::string mode = to_string(cfg.mode);
  for (int p : cfg.steps) {
    const auto sub = dir / ("p" + std::to_string(p));
    std::filesystem::create_directories(sub);
    {
      auto out = open_out(sub / "runs.csv");
      out << "problem,p,method,seed,mode,eval_index,f\n";
      for (const auto& c : result.cells) {
        const auto& inst = result.instances[c.instance];
        if (inst.p_steps != p) continue;
        for (std::size_t j = 0; j < c.values.size(); ++j) {
          out << inst.id << ',' << p << ',' << c.method << ',' << c.seed << ',' << mode << ',' << j + 1 << ','
              << fmt(c.values[j]) << '\n';
        }
      }
    }
    const ProfileTable table = result.profile(p);
    if (!table.entries.empty()) {
      std::vector<std::size_t> alpha(cfg.budget);
      for (std::size_t a = 0; a < cfg.budget; ++a) alpha[a] = a + 1;
      auto out = open_out(sub / "profiles.csv");
      out << "method,alpha,d\n";
      for (const auto& curve : data_profile(table, alpha))
        for (std::size_t a = 0; a < curve.alpha.size(); ++a)
          out << curve.method << ',' << curve.alpha[a] << ',' << fmt(curve.d[a]) << '\n';
    }
    {
      auto out = open_out(sub / "ratios.csv");
      out << "problem,p,method,seed,ratio\n";
      for (const auto& c : result.cells) {
        const auto& inst = result.instances[c.instance];
        if (inst.p_steps != p || !c.error.empty()) continue;
        out << inst.id << ',' << p << ',' << c.method << ',' << c.seed << ','
            << fmt(approximation_ratio(*std::min_element(c.values.begin(), c.values.end()), inst.best_known_f))
            << '\n';
      }
    }
    {
      auto out = open_out(sub / "solved.csv");
      out << "problem,p,method,seed,evals_to_tau\n";
      for (const auto& e : table.entries) {
        out << e.problem << ',' << p << ',' << e.method << ',' << e.seed << ','
            << (e.evals ? std::to_string(*e.evals) : "unsolved") << '\n';
      }
    }
  }
  {
    auto out = open_out(dir / "summary.csv");
    out << "p,method,solved_fraction,ratio_q25,ratio_median,ratio_q75\n";
    for (const auto& s : result.summaries) {
      out << s.p_steps << ',' << s.method << ',' << fmt(s.solved_fraction) << ',' << fmt(s.ratio.q25) << ','
          << fmt(s.ratio.median) << ',' << fmt(s.ratio.q75) << '\n';
    }
  }
  {
    auto out = open_out(dir / "problems.csv");
    out << "problem,p,n_vertices,n_edges,best_known_f,variational_bound\n";
    for (const auto& inst : result.instances) {
      out << inst.id << ',' << inst.p_steps << ',' << inst.graph.n_vertices() << ',' << inst.graph.n_edges() << ','
          << fmt(inst.best_known_f) << ',' << fmt(inst.variational_bound) << '\n';
    }
  }
  auto out = open_out(dir / "manifest.json");
  out << experiment_manifest(result).dump(2) << '\n';
}

void write_reuse(const ReuseResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_out(dir / "reuse.csv");
    out << "base_graph,edge_u,edge_v,mode,method,warm_start,seed,evals_to_tau,final_ratio\n";
    for (const auto& r : result.records) {
      if (r.values.empty()) continue;
      out << r.base_graph << ',' << r.removed_edge.u << ',' << r.removed_edge.v << ',' << to_string(r.mode) << ','
          << r.method << ',' << (r.warm_start ? "true" : "false") << ',' << r.seed << ','
          << (r.evals_to_tau ? std::to_string(*r.evals_to_tau) : "unsolved") << ',' << fmt(r.final_ratio) << '\n';
    }
  }
  {
    auto out = open_out(dir / "reuse_summary.csv");
    out << "mode,method,warm_start,rows,median_evals_to_tau,ratio_q25,ratio_median,ratio_q75\n";
    for (const auto& s : result.summaries) {
      out << to_string(s.mode) << ',' << s.method << ',' << (s.warm_start ? "true" : "false") << ',' << s.rows << ','
          << (s.median_evals_to_tau ? fmt(*s.median_evals_to_tau) : "unsolved") << ',' << fmt(s.ratio.q25) << ','
          << fmt(s.ratio.median) << ',' << fmt(s.ratio.q75) << '\n';
    }
  }
  {
    auto out = open_out(dir / "optima.csv");
    out << "base_graph,rank,f,point\n";
    const auto graphs = result.optima.size();
    for (std::size_t g = 0; g < graphs; ++g) {
      for (std::size_t k = 0; k < result.optima[g].size(); ++k) {
        const auto& o = result.optima[g][k];
        out << result.graph_ids[g] << ',' << k + 1 << ',' << fmt(o.value) << ',';
        for (std::size_t i = 0; i < o.point.size(); ++i) out << (i ? " " : "") << fmt(o.point[i]);
        out << '\n';
      }
    }
  }
  auto out = open_out(dir / "manifest.json");
  out << reuse_manifest(result).dump(2) << '\n';
}

}  // namespace qaoams
