#include "qaoams/localopt.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "qaoams/simulator.hpp"

namespace qaoams {

Bounds::Bounds(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) throw DimensionMismatch("bounds dimensions differ");
  if (lower_.empty()) throw InvalidArgument("bounds must have at least one dimension");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) {
      throw InvalidArgument("lower bound must be below upper bound in coordinate " + std::to_string(i));
    }
  }
}

Bounds Bounds::qaoa(int steps) {
  if (steps < 1) throw InvalidArgument("QAOA needs at least one step");
  std::vector<double> lo(2 * steps, 0.0), hi(2 * steps);
  for (int i = 0; i < steps; ++i) {
    hi[i] = kPi;
    hi[steps + i] = 2.0 * kPi;
  }
  return Bounds(std::move(lo), std::move(hi));
}

double Bounds::min_width() const {
  double w = width(0);
  for (std::size_t i = 1; i < dim(); ++i) w = std::min(w, width(i));
  return w;
}

double Bounds::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < dim(); ++i) v *= width(i);
  return v;
}

bool Bounds::contains(std::span<const double> x) const {
  if (x.size() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!(x[i] >= lower_[i] && x[i] <= upper_[i])) return false;
  }
  return true;
}

Point Bounds::project(std::span<const double> x) const {
  if (x.size() != dim()) throw DimensionMismatch("point dimension does not match bounds");
  Point y(x.begin(), x.end());
  for (std::size_t i = 0; i < dim(); ++i) y[i] = std::clamp(y[i], lower_[i], upper_[i]);
  return y;
}

Point Bounds::sample(Rng& rng) const {
  Point x(dim());
  for (std::size_t i = 0; i < dim(); ++i) x[i] = rng.uniform(lower_[i], upper_[i]);
  return x;
}

void StopRule::validate() const {
  if (!(ftol_abs >= 0.0) || !(xtol_abs >= 0.0)) throw InvalidArgument("tolerances must be >= 0");
  if (max_evals < 1) throw InvalidArgument("max_evals must be >= 1");
}

void EvalHistory::push(Point point, double value) {
  points_.push_back(std::move(point));
  values_.push_back(value);
  if (values_.size() == 1 || value < values_[best_]) best_ = values_.size() - 1;
}

void EvalHistory::append(const EvalHistory& other) {
  for (std::size_t i = 0; i < other.size(); ++i) push(other.point(i), other.value(i));
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::kConvergedFtol: return "converged-by-ftol";
    case Termination::kConvergedXtol: return "converged-by-xtol";
    case Termination::kBudgetExhausted: return "budget-exhausted";
  }
  return "unknown";
}

std::string_view to_string(LocalMethod m) {
  switch (m) {
    case LocalMethod::kNelderMead: return "nelder-mead";
    case LocalMethod::kPatternSearch: return "pattern";
    case LocalMethod::kModelTrustRegion: return "model-tr";
  }
  return "unknown";
}

LocalMethod parse_local_method(std::string_view name) {
  if (name == "nelder-mead") return LocalMethod::kNelderMead;
  if (name == "pattern") return LocalMethod::kPatternSearch;
  if (name == "model-tr") return LocalMethod::kModelTrustRegion;
  throw InvalidArgument("unknown local method '" + std::string(name) +
                        "' (valid: nelder-mead, pattern, model-tr)");
}

std::size_t min_budget(LocalMethod m, std::size_t dim) {
  return m == LocalMethod::kModelTrustRegion ? 2 * dim + 1 : 1;
}

SolverTask make_solver_task(LocalMethod m, Point x0, const Bounds& bounds, const StopRule& stop) {
  switch (m) {
    case LocalMethod::kNelderMead: return nelder_mead_task(std::move(x0), bounds, stop);
    case LocalMethod::kPatternSearch: return pattern_search_task(std::move(x0), bounds, stop);
    case LocalMethod::kModelTrustRegion: return model_trust_region_task(std::move(x0), bounds, stop);
  }
  throw InvalidArgument("unknown local method");
}

LocalRun::LocalRun(LocalMethod method, Point x0, const Bounds& bounds, const StopRule& stop,
                   std::optional<double> known_start_value)
    : start_(x0), best_value_(std::numeric_limits<double>::infinity()) {
  stop.validate();
  if (!bounds.contains(x0)) throw InvalidArgument("start point outside bounds");
  task_ = make_solver_task(method, std::move(x0), bounds, stop);
  task_.start();
  if (known_start_value && !task_.done() && task_.request() == start_) {
    note(start_, *known_start_value);
    task_.reply(*known_start_value);
  }
}

void LocalRun::note(const Point& x, double value) {
  if (value < best_value_ || best_point_.empty()) {
    best_value_ = value;
    best_point_ = x;
  }
}

void LocalRun::tell(double value) {
  note(task_.request(), value);
  ++evaluations_;
  task_.reply(value);
}

namespace {

// Runs `run` until it finishes or `budget` evaluations have been added.
Termination drive(LocalRun& run, const ObjectiveFn& f, std::size_t budget, EvalHistory& history) {
  std::size_t used = 0;
  while (!run.finished() && used < budget) {
    const Point x = run.pending();
    double value;
    try {
      value = f(x);
    } catch (const std::exception& e) {
      throw ObjectiveFailure(e.what(), history);
    }
    history.push(x, value);
    ++used;
    run.tell(value);
  }
  return run.finished() ? run.status() : Termination::kBudgetExhausted;
}

RunSegment make_segment(const LocalRun& run, std::size_t first, std::size_t count, Termination t) {
  return {first, count, t, run.start(), run.best_point(), run.best_value()};
}

}  // namespace

RunResult local_minimize(LocalMethod m, const ObjectiveFn& f, Point x0, const Bounds& bounds,
                         const StopRule& stop) {
  stop.validate();
  if (stop.max_evals < min_budget(m, bounds.dim())) {
    throw InvalidArgument(std::string(to_string(m)) + " needs a budget of at least " +
                          std::to_string(min_budget(m, bounds.dim())) + " evaluations");
  }
  RunResult result;
  LocalRun run(m, std::move(x0), bounds, stop);
  result.status = drive(run, f, stop.max_evals, result.history);
  result.evals_used = result.history.size();
  result.segments.push_back(make_segment(run, 0, result.evals_used, result.status));
  return result;
}

RunResult nelder_mead(const ObjectiveFn& f, Point x0, const Bounds& bounds, const StopRule& stop) {
  return local_minimize(LocalMethod::kNelderMead, f, std::move(x0), bounds, stop);
}

RunResult pattern_search(const ObjectiveFn& f, Point x0, const Bounds& bounds, const StopRule& stop) {
  return local_minimize(LocalMethod::kPatternSearch, f, std::move(x0), bounds, stop);
}

RunResult model_trust_region(const ObjectiveFn& f, Point x0, const Bounds& bounds,
                             const StopRule& stop) {
  return local_minimize(LocalMethod::kModelTrustRegion, f, std::move(x0), bounds, stop);
}

RunResult restarting(LocalMethod m, const ObjectiveFn& f, const Bounds& bounds,
                     const StopRule& per_run, std::size_t total_budget, std::uint64_t seed,
                     const std::vector<Point>& initial_points) {
  per_run.validate();
  if (total_budget < 1) throw InvalidArgument("total_budget must be >= 1");
  Rng rng(seed);
  RunResult result;
  std::size_t next_initial = 0;
  while (result.history.size() < total_budget) {
    Point x0 = next_initial < initial_points.size() ? bounds.project(initial_points[next_initial++])
                                                    : bounds.sample(rng);
    const std::size_t first = result.history.size();
    const std::size_t allowance = std::min(per_run.max_evals, total_budget - first);
    LocalRun run(m, std::move(x0), bounds, per_run);
    const Termination t = drive(run, f, allowance, result.history);
    result.segments.push_back(make_segment(run, first, result.history.size() - first, t));
    result.status = t;
  }
  result.evals_used = result.history.size();
  return result;
}

}  // namespace qaoams
