#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qaoams/error.hpp"
#include "qaoams/rng.hpp"
#include "qaoams/solver_task.hpp"

namespace qaoams {

using Point = std::vector<double>;
using ObjectiveFn = std::function<double(std::span<const double>)>;

// Axis-aligned box, lower < upper in every coordinate.
class Bounds {
 public:
  Bounds(std::vector<double> lower, std::vector<double> upper);

  // ([0, pi] x [0, 2 pi])^p in the (beta..., gamma...) layout.
  static Bounds qaoa(int steps);

  std::size_t dim() const noexcept { return lower_.size(); }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }
  double width(std::size_t i) const { return upper_[i] - lower_[i]; }
  double min_width() const;
  double volume() const;

  bool contains(std::span<const double> x) const;
  Point project(std::span<const double> x) const;
  Point sample(Rng& rng) const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

struct StopRule {
  double ftol_abs = 1e-3;
  double xtol_abs = 1e-2;
  std::size_t max_evals = 1000;

  void validate() const;
  static StopRule zero_tolerance(std::size_t max_evals) { return {0.0, 0.0, max_evals}; }
};

class EvalHistory {
 public:
  void push(Point point, double value);

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  const std::vector<Point>& points() const noexcept { return points_; }
  const std::vector<double>& values() const noexcept { return values_; }
  const Point& point(std::size_t i) const { return points_[i]; }
  double value(std::size_t i) const { return values_[i]; }

  // Index of the first minimal value. Precondition: not empty.
  std::size_t best_index() const noexcept { return best_; }
  double best_value() const { return values_[best_]; }
  const Point& best_point() const { return points_[best_]; }

  void append(const EvalHistory& other);

 private:
  std::vector<Point> points_;
  std::vector<double> values_;
  std::size_t best_ = 0;
};

std::string_view to_string(Termination t);

// One local run inside a result: history[first, first + count).
struct RunSegment {
  std::size_t first = 0;
  std::size_t count = 0;
  Termination status = Termination::kBudgetExhausted;
  Point start;
  Point best_point;
  double best_value = 0.0;

  bool converged() const { return status != Termination::kBudgetExhausted; }
};

struct RunResult {
  EvalHistory history;
  Termination status = Termination::kBudgetExhausted;
  std::size_t evals_used = 0;
  std::vector<RunSegment> segments;
};

// The objective threw; carries everything evaluated before the failure.
class ObjectiveFailure : public Error {
 public:
  ObjectiveFailure(const std::string& what, EvalHistory history)
      : Error("objective evaluation failed: " + what), history_(std::move(history)) {}
  const EvalHistory& history() const noexcept { return history_; }

 private:
  EvalHistory history_;
};

enum class LocalMethod { kNelderMead, kPatternSearch, kModelTrustRegion };

std::string_view to_string(LocalMethod m);
// Accepts "nelder-mead", "pattern", "model-tr".
LocalMethod parse_local_method(std::string_view name);

// Minimum budget a method needs to complete its initial design.
std::size_t min_budget(LocalMethod m, std::size_t dim);

// Solver bodies. Each first requests x0, then one point per evaluation.
SolverTask nelder_mead_task(Point x0, Bounds bounds, StopRule stop);
SolverTask pattern_search_task(Point x0, Bounds bounds, StopRule stop);
SolverTask model_trust_region_task(Point x0, Bounds bounds, StopRule stop);
SolverTask make_solver_task(LocalMethod m, Point x0, const Bounds& bounds, const StopRule& stop);

// A local run advanced one evaluation at a time by an external driver.
class LocalRun {
 public:
  // With `known_start_value`, the solver's request for x0 is answered
  // without consuming an evaluation.
  LocalRun(LocalMethod method, Point x0, const Bounds& bounds, const StopRule& stop,
           std::optional<double> known_start_value = std::nullopt);

  bool finished() const { return task_.done(); }
  const Point& pending() const { return task_.request(); }
  void tell(double value);
  Termination status() const { return task_.result(); }

  const Point& start() const noexcept { return start_; }
  const Point& best_point() const noexcept { return best_point_; }
  double best_value() const noexcept { return best_value_; }
  // Evaluations supplied through tell().
  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  void note(const Point& x, double value);

  SolverTask task_;
  Point start_;
  Point best_point_;
  double best_value_;
  std::size_t evaluations_ = 0;
};

RunResult nelder_mead(const ObjectiveFn& f, Point x0, const Bounds& bounds, const StopRule& stop);
RunResult pattern_search(const ObjectiveFn& f, Point x0, const Bounds& bounds, const StopRule& stop);
RunResult model_trust_region(const ObjectiveFn& f, Point x0, const Bounds& bounds,
                             const StopRule& stop);
RunResult local_minimize(LocalMethod m, const ObjectiveFn& f, Point x0, const Bounds& bounds,
                         const StopRule& stop);

// Repeats the local method until total_budget evaluations are spent. Starts
// come from `initial_points` in order, then uniformly from the box.
RunResult restarting(LocalMethod m, const ObjectiveFn& f, const Bounds& bounds,
                     const StopRule& per_run, std::size_t total_budget, std::uint64_t seed,
                     const std::vector<Point>& initial_points = {});

}  // namespace qaoams
