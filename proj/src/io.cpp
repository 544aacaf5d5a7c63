#include "qaoams/io.hpp"

#include <cstdio>
#include <set>

namespace qaoams {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Reads typed keys from a flat object and rejects anything unread.
class Reader {
 public:
  explicit Reader(const Json& j) : j_(j) {
    if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw InvalidArgument(std::string("config key '") + key + "' has the wrong type");
    }
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw InvalidArgument("unknown config key '" + key + "'");
    }
  }

 private:
  const Json& j_;
  std::set<std::string> seen_;
};

void check_unsigned(const Json& j, const char* key) {
  if (j.contains(key) && !j.at(key).is_number_unsigned()) {
    throw InvalidArgument(std::string("config key '") + key + "' must be a nonnegative integer");
  }
}

Json problem_json(const ProblemInstance& inst) {
  return {{"id", inst.id},
          {"p", inst.p_steps},
          {"label", inst.graph.label()},
          {"n_vertices", inst.graph.n_vertices()},
          {"n_edges", inst.graph.n_edges()}};
}

}  // namespace

Json to_json(const FixedBudgetConfig& c) {
  return {{"steps", c.steps},     {"methods", c.methods},   {"budget", c.budget},
          {"seeds", c.seeds},     {"tau", c.tau},           {"mode", to_string(c.mode)},
          {"seed", c.seed},       {"ftol_abs", c.ftol_abs}, {"xtol_abs", c.xtol_abs},
          {"sample_batch", c.sample_batch}, {"max_active_runs", c.max_active_runs},
          {"sigma", c.sigma}, {"shots", c.shots},
          {"graphs", c.graphs},   {"out", c.out}};
}

Json to_json(const ReuseConfig& c) {
  std::vector<std::string> modes;
  for (auto m : c.modes) modes.push_back(to_string(m));
  return {{"p", c.p_steps},           {"methods", c.methods},
          {"modes", modes},           {"n_random_edges", c.n_random_edges},
          {"budget", c.budget},       {"seeds", c.seeds},
          {"tau", c.tau},             {"exhaustive_budget", c.exhaustive_budget},
          {"seed", c.seed},           {"ftol_abs", c.ftol_abs},
          {"xtol_abs", c.xtol_abs},   {"sample_batch", c.sample_batch},
          {"max_active_runs", c.max_active_runs},
          {"sigma", c.sigma},         {"graphs", c.graphs},
          {"out", c.out}};
}

FixedBudgetConfig fixed_budget_config_from_json(const Json& j) {
  FixedBudgetConfig c;
  Reader r(j);
  for (const char* key : {"budget", "seed", "sample_batch", "max_active_runs"}) check_unsigned(j, key);
  std::string mode = to_string(c.mode);
  r.get("steps", c.steps);
  r.get("methods", c.methods);
  r.get("budget", c.budget);
  r.get("seeds", c.seeds);
  r.get("tau", c.tau);
  r.get("mode", mode);
  r.get("seed", c.seed);
  r.get("ftol_abs", c.ftol_abs);
  r.get("xtol_abs", c.xtol_abs);
  r.get("sample_batch", c.sample_batch);
  r.get("max_active_runs", c.max_active_runs);
  r.get("sigma", c.sigma);
  r.get("shots", c.shots);
  r.get("graphs", c.graphs);
  r.get("out", c.out);
  r.finish();
  c.mode = parse_experiment_mode(mode);
  c.validate();
  return c;
}

ReuseConfig reuse_config_from_json(const Json& j) {
  ReuseConfig c;
  Reader r(j);
  for (const char* key : {"budget", "seed", "sample_batch", "max_active_runs", "exhaustive_budget"}) check_unsigned(j, key);
  std::vector<std::string> modes;
  for (auto m : c.modes) modes.push_back(to_string(m));
  r.get("p", c.p_steps);
  r.get("methods", c.methods);
  r.get("modes", modes);
  r.get("n_random_edges", c.n_random_edges);
  r.get("budget", c.budget);
  r.get("seeds", c.seeds);
  r.get("tau", c.tau);
  r.get("exhaustive_budget", c.exhaustive_budget);
  r.get("seed", c.seed);
  r.get("ftol_abs", c.ftol_abs);
  r.get("xtol_abs", c.xtol_abs);
  r.get("sample_batch", c.sample_batch);
  r.get("max_active_runs", c.max_active_runs);
  r.get("sigma", c.sigma);
  r.get("graphs", c.graphs);
  r.get("out", c.out);
  r.finish();
  c.modes.clear();
  for (const auto& m : modes) c.modes.push_back(parse_reuse_mode(m));
  c.validate();
  return c;
}

Json experiment_manifest(const ExperimentResult& r) {
  Json problems = Json::array();
  for (const auto& inst : r.instances) problems.push_back(problem_json(inst));
  Json failures = Json::array();
  for (const auto& c : r.cells) {
    if (!c.error.empty()) {
      failures.push_back({{"problem", r.instances[c.instance].id},
                          {"p", r.instances[c.instance].p_steps},
                          {"method", c.method},
                          {"seed", c.seed},
                          {"error", c.error}});
    }
  }
  return {{"command", "bench"},
          {"config", to_json(r.config)},
          {"problems", problems},
          {"cells", r.cells.size()},
          {"failures", failures}};
}

Json reuse_manifest(const ReuseResult& r) {
  Json graphs = Json::array();
  for (std::size_t g = 0; g < r.graph_ids.size(); ++g) {
    graphs.push_back({{"id", r.graph_ids[g]}, {"optima", r.optima[g].size()}});
  }
  return {{"command", "reuse"},
          {"config", to_json(r.config)},
          {"base_graphs", graphs},
          {"records", r.records.size()},
          // Warm and cold arms of a record pair run with the same seed.
          {"arms_share_seeds", true},
          {"skipped", r.skipped},
          {"errors", r.errors}};
}

Json config_section(const Json& document, const std::string& command) {
  if (document.is_object() && document.contains("command") && document.contains("config")) {
    if (document.at("command") != command) {
      throw InvalidArgument("manifest was written by '" + document.at("command").get<std::string>() +
                            "', not '" + command + "'");
    }
    return document.at("config");
  }
  return document;
}

Json to_json(const RunResult& r) {
  Json points = Json::array();
  for (const auto& p : r.history.points()) points.push_back(p);
  Json out = {{"points", points},
              {"values", r.history.values()},
              {"status", std::string(to_string(r.status))},
              {"evals_used", r.evals_used}};
  if (!r.history.empty()) {
    out["best_point"] = r.history.best_point();
    out["best_value"] = r.history.best_value();
  }
  return out;
}

Json to_json(const MethodOutcome& r, const std::string& method) {
  Json points = Json::array();
  for (const auto& p : r.history.points()) points.push_back(p);
  Json out = {{"method", method},
              {"points", points},
              {"values", r.history.values()},
              {"run_id", r.run_id},
              {"runs", r.runs},
              {"status", std::string(to_string(r.status))},
              {"evals_used", r.history.size()}};
  if (!r.history.empty()) {
    out["best_point"] = r.history.best_point();
    out["best_value"] = r.history.best_value();
  }
  return out;
}

namespace {

std::string trace(const EvalHistory& h, const std::vector<int>* run_id) {
  const std::size_t d = h.empty() ? 0 : h.point(0).size();
  std::string out = "eval_index";
  if (run_id) out += ",run_id";
  for (std::size_t i = 0; i < d; ++i) out += ",x" + std::to_string(i);
  out += ",f\n";
  for (std::size_t k = 0; k < h.size(); ++k) {
    out += std::to_string(k + 1);
    if (run_id) out += "," + std::to_string((*run_id)[k]);
    for (double x : h.point(k)) out += "," + fmt(x);
    out += "," + fmt(h.value(k)) + "\n";
  }
  return out;
}

}  // namespace

std::string trace_csv(const EvalHistory& h) { return trace(h, nullptr); }

std::string trace_csv(const EvalHistory& h, const std::vector<int>& run_id) {
  if (run_id.size() != h.size()) throw DimensionMismatch("run_id length differs from history length");
  return trace(h, &run_id);
}

}  // namespace qaoams
