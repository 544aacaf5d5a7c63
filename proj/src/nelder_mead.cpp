#include <algorithm>
#include <cmath>
#include <numeric>

#include "qaoams/localopt.hpp"

namespace qaoams {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;
constexpr double kInitialStep = 0.1;  // fraction of each box width

// base + t * (dir - base), projected onto the box
Point along(const Bounds& b, const Point& base, const Point& dir, double t) {
  Point y(base.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = base[i] + t * (dir[i] - base[i]);
  return b.project(y);
}

}  // namespace

SolverTask nelder_mead_task(Point x0, Bounds bounds, StopRule stop) {
  const std::size_t d = bounds.dim();
  std::vector<Point> x(d + 1, x0);
  std::vector<double> fx(d + 1);
  fx[0] = co_await Evaluate{x0};
  for (std::size_t i = 0; i < d; ++i) {
    const double h = kInitialStep * bounds.width(i);
    x[i + 1][i] = x0[i] + h <= bounds.upper()[i] ? x0[i] + h : x0[i] - h;
    fx[i + 1] = co_await Evaluate{x[i + 1]};
  }

  std::vector<std::size_t> order(d + 1);
  for (;;) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return fx[a] < fx[b]; });
    {
      std::vector<Point> xs(d + 1);
      std::vector<double> fs(d + 1);
      for (std::size_t k = 0; k <= d; ++k) {
        xs[k] = std::move(x[order[k]]);
        fs[k] = fx[order[k]];
      }
      x = std::move(xs);
      fx = std::move(fs);
    }

    if (fx[d] - fx[0] < stop.ftol_abs) co_return Termination::kConvergedFtol;
    double diameter = 0.0;
    for (std::size_t k = 1; k <= d; ++k) {
      double sq = 0.0;
      for (std::size_t i = 0; i < d; ++i) sq += (x[k][i] - x[0][i]) * (x[k][i] - x[0][i]);
      diameter = std::max(diameter, std::sqrt(sq));
    }
    if (diameter < stop.xtol_abs) co_return Termination::kConvergedXtol;

    Point centroid(d, 0.0);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i) centroid[i] += x[k][i] / static_cast<double>(d);

    const Point xr = along(bounds, centroid, x[d], -kReflect);
    const double fr = co_await Evaluate{xr};
    if (fr < fx[0]) {
      const Point xe = along(bounds, centroid, x[d], -kExpand);
      const double fe = co_await Evaluate{xe};
      if (fe < fr) {
        x[d] = xe;
        fx[d] = fe;
      } else {
        x[d] = xr;
        fx[d] = fr;
      }
      continue;
    }
    if (fr < fx[d - 1]) {
      x[d] = xr;
      fx[d] = fr;
      continue;
    }

    const bool outside = fr < fx[d];
    const Point xc = outside ? along(bounds, centroid, xr, kContract) : along(bounds, centroid, x[d], kContract);
    const double fc = co_await Evaluate{xc};
    if (outside ? fc <= fr : fc < fx[d]) {
      x[d] = xc;
      fx[d] = fc;
      continue;
    }

    for (std::size_t k = 1; k <= d; ++k) {
      x[k] = along(bounds, x[0], x[k], kShrink);
      fx[k] = co_await Evaluate{x[k]};
    }
  }
}

}  // namespace qaoams
