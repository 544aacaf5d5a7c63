#include "qaoams/method.hpp"

namespace qaoams {

std::string MethodSpec::name() const {
  const std::string local_name(to_string(local));
  switch (kind) {
    case Kind::kLocal: return local_name;
    case Kind::kRestarting: return "restarting:" + local_name;
    case Kind::kMultistart: return "multistart:" + local_name;
  }
  return local_name;
}

std::string valid_method_names() {
  return "nelder-mead, pattern, model-tr, restarting:<m>, multistart:<m> (m one of the first three)";
}

MethodSpec parse_method(std::string_view name) {
  auto local = [&](std::string_view s) {
    try {
      return parse_local_method(s);
    } catch (const InvalidArgument&) {
      throw InvalidArgument("unknown method '" + std::string(name) + "' (valid: " + valid_method_names() + ")");
    }
  };
  constexpr std::string_view kRestart = "restarting:";
  constexpr std::string_view kMulti = "multistart:";
  if (name.starts_with(kRestart)) return {MethodSpec::Kind::kRestarting, local(name.substr(kRestart.size()))};
  if (name.starts_with(kMulti)) return {MethodSpec::Kind::kMultistart, local(name.substr(kMulti.size()))};
  return {MethodSpec::Kind::kLocal, local(name)};
}

namespace {

MethodOutcome from_run(RunResult r) {
  MethodOutcome out;
  out.status = r.status;
  out.runs = r.segments.size();
  out.run_id.resize(r.history.size());
  for (std::size_t k = 0; k < r.segments.size(); ++k) {
    const auto& s = r.segments[k];
    for (std::size_t i = s.first; i < s.first + s.count; ++i) out.run_id[i] = static_cast<int>(k);
    if (s.converged()) out.local_optima.push_back({s.best_point, s.best_value});
  }
  out.history = std::move(r.history);
  return out;
}

}  // namespace

MethodOutcome run_method(const MethodSpec& method, const ObjectiveFn& f, const Bounds& bounds,
                         const MethodSettings& settings) {
  StopRule stop = settings.local_stop;
  switch (method.kind) {
    case MethodSpec::Kind::kLocal: {
      stop.max_evals = settings.budget;
      Point x0;
      if (settings.initial_points.empty()) {
        Rng rng(settings.seed);
        x0 = bounds.sample(rng);
      } else {
        x0 = bounds.project(settings.initial_points.front());
      }
      return from_run(local_minimize(method.local, f, std::move(x0), bounds, stop));
    }
    case MethodSpec::Kind::kRestarting: {
      stop.max_evals = std::max<std::size_t>(settings.budget, 1);
      return from_run(
          restarting(method.local, f, bounds, stop, settings.budget, settings.seed, settings.initial_points));
    }
    case MethodSpec::Kind::kMultistart: {
      MultistartConfig config;
      config.total_budget = settings.budget;
      config.sample_batch = settings.sample_batch;
      config.sigma = settings.sigma;
      config.local_stop = stop;
      config.local_stop.max_evals = std::max<std::size_t>(settings.budget, 1);
      config.seed = settings.seed;
      config.max_active_runs = settings.max_active_runs;
      config.initial_points = settings.initial_points;
      MultistartResult r = multistart_minimize(f, bounds, method.local, config);
      MethodOutcome out;
      out.history = std::move(r.history);
      out.run_id = std::move(r.run_of);
      out.runs = r.runs.size();
      out.status = r.runs.empty() ? Termination::kBudgetExhausted : r.runs.back().segment.status;
      out.local_optima = std::move(r.local_optima);
      return out;
    }
  }
  throw InvalidArgument("unknown method kind");
}

}  // namespace qaoams
