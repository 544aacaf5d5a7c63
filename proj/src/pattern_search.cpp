#include <algorithm>

#include "qaoams/localopt.hpp"

namespace qaoams {

// Compass search: poll +-step_i e_i in coordinate order, move to the first
// strict improvement, halve every step after a fully failed poll. Poll points
// outside the box are skipped, never evaluated.
SolverTask pattern_search_task(Point x0, Bounds bounds, StopRule stop) {
  const std::size_t d = bounds.dim();
  std::vector<double> step(d);
  for (std::size_t i = 0; i < d; ++i) step[i] = 0.25 * bounds.width(i);

  Point x = std::move(x0);
  double fx = co_await Evaluate{x};
  for (;;) {
    if (*std::max_element(step.begin(), step.end()) < stop.xtol_abs) {
      co_return Termination::kConvergedXtol;
    }
    bool moved = false;
    for (std::size_t i = 0; i < d && !moved; ++i) {
      for (double sign : {1.0, -1.0}) {
        Point y = x;
        y[i] += sign * step[i];
        if (y[i] < bounds.lower()[i] || y[i] > bounds.upper()[i]) continue;
        const double fy = co_await Evaluate{y};
        if (fy < fx) {
          x = std::move(y);
          fx = fy;
          moved = true;
          break;
        }
      }
    }
    if (!moved) {
      for (double& s : step) s *= 0.5;
    }
  }
}

}  // namespace qaoams
