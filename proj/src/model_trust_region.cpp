// Bound-constrained model-based trust-region method in the BOBYQA family.
//
// The quadratic model interpolates 2d+1 points. Whenever a point changes the
// model is updated by the least Frobenius-norm change of its Hessian that
// restores interpolation; the KKT system of that problem also yields the
// Lagrange functions used to keep the point set well poised.

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "qaoams/localopt.hpp"

namespace qaoams {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kEta1 = 0.1;
constexpr double kEta2 = 0.7;
constexpr double kShrink = 0.5;
constexpr double kExpand = 2.0;
constexpr double kInitialRadius = 0.1;  // in box-normalized units

// q(x) = c + g^T (x - base) + 1/2 (x - base)^T H (x - base)
struct Quadratic {
  VectorXd base;
  double c = 0.0;
  VectorXd g;
  MatrixXd h;

  double at(const VectorXd& x) const {
    const VectorXd s = x - base;
    return c + g.dot(s) + 0.5 * s.dot(h * s);
  }

  // Same function expressed about a new base point.
  void rebase(const VectorXd& to) {
    const VectorXd s = to - base;
    c += g.dot(s) + 0.5 * s.dot(h * s);
    g += h * s;
    base = to;
  }
};

// KKT matrix of the least-Frobenius-norm interpolation problem for points
// (y_j - center) / scale:
//   [ A  X^T ]   A_ij = 1/2 (u_i . u_j)^2
//   [ X  0   ]   X = [1 ... 1; u_1 ... u_m]
class InterpolationSystem {
 public:
  InterpolationSystem(const std::vector<VectorXd>& y, const VectorXd& center) : center_(center) {
    const auto m = static_cast<Eigen::Index>(y.size());
    const auto d = center.size();
    scale_ = 0.0;
    for (const auto& p : y) scale_ = std::max(scale_, (p - center).norm());
    if (scale_ == 0.0) scale_ = 1.0;
    u_.resize(d, m);
    for (Eigen::Index j = 0; j < m; ++j) u_.col(j) = (y[j] - center) / scale_;
    MatrixXd w = MatrixXd::Zero(m + d + 1, m + d + 1);
    const MatrixXd gram = u_.transpose() * u_;
    w.topLeftCorner(m, m) = 0.5 * gram.array().square().matrix();
    w.block(0, m, m, 1).setOnes();
    w.block(m, 0, 1, m).setOnes();
    w.block(0, m + 1, m, d) = u_.transpose();
    w.block(m + 1, 0, d, m) = u_;
    lu_.compute(w);
  }

  bool usable() const { return lu_.isInvertible(); }

  // Least-norm Hessian change making `model` interpolate `values` at the points.
  void update(Quadratic& model, const std::vector<VectorXd>& y, const std::vector<double>& values) const {
    const auto m = u_.cols();
    const auto d = u_.rows();
    model.rebase(center_);
    VectorXd rhs = VectorXd::Zero(m + d + 1);
    for (Eigen::Index j = 0; j < m; ++j) rhs(j) = values[j] - model.at(y[j]);
    const VectorXd sol = lu_.solve(rhs);
    if (!sol.allFinite()) return;
    // Coefficients are in scaled coordinates u = s / scale.
    const VectorXd lambda = sol.head(m);
    model.c += sol(m);
    model.g += sol.tail(d) / scale_;
    model.h += (u_ * lambda.asDiagonal() * u_.transpose()) / (scale_ * scale_);
  }

  // Values of all Lagrange functions at x.
  VectorXd lagrange_at(const VectorXd& x) const {
    const auto m = u_.cols();
    const auto d = u_.rows();
    const VectorXd ux = (x - center_) / scale_;
    VectorXd phi(m + d + 1);
    phi.head(m) = 0.5 * (u_.transpose() * ux).array().square().matrix();
    phi(m) = 1.0;
    phi.tail(d) = ux;
    return lu_.solve(phi).head(m);
  }

  // Lagrange function j as a quadratic about the center.
  Quadratic lagrange(Eigen::Index j) const {
    const auto m = u_.cols();
    const auto d = u_.rows();
    VectorXd e = VectorXd::Zero(m + d + 1);
    e(j) = 1.0;
    const VectorXd sol = lu_.solve(e);
    Quadratic q;
    q.base = center_;
    q.c = sol(m);
    q.g = sol.tail(d) / scale_;
    q.h = (u_ * sol.head(m).asDiagonal() * u_.transpose()) / (scale_ * scale_);
    return q;
  }

 private:
  VectorXd center_;
  double scale_ = 1.0;
  MatrixXd u_;
  Eigen::FullPivLU<MatrixXd> lu_;
};

// Approximately minimizes g^T s + 1/2 s^T H s over ||s|| <= radius and
// lo <= s <= hi (lo <= 0 <= hi): truncated conjugate gradients on the free
// variables, fixing a variable whenever the path reaches its bound.
VectorXd trust_region_step(const VectorXd& g, const MatrixXd& h, double radius, const VectorXd& lo,
                           const VectorXd& hi) {
  const auto d = g.size();
  VectorXd s = VectorXd::Zero(d);
  VectorXd grad = g;
  std::vector<bool> fixed(d, false);
  for (Eigen::Index i = 0; i < d; ++i) {
    if ((lo(i) >= 0.0 && grad(i) > 0.0) || (hi(i) <= 0.0 && grad(i) < 0.0)) fixed[i] = true;
  }
  auto free_part = [&](const VectorXd& v) {
    VectorXd out = v;
    for (Eigen::Index i = 0; i < d; ++i)
      if (fixed[i]) out(i) = 0.0;
    return out;
  };

  VectorXd dir = -free_part(grad);
  double gg = dir.squaredNorm();
  for (Eigen::Index iter = 0; iter < 4 * d + 4; ++iter) {
    if (gg <= 1e-30 * std::max(1.0, g.squaredNorm())) break;
    const VectorXd hd = h * dir;
    const double curvature = dir.dot(hd);
    const double slope = grad.dot(dir);
    if (slope >= 0.0) break;

    // Distance to the sphere along dir.
    const double a = dir.squaredNorm();
    const double b = s.dot(dir);
    const double c = s.squaredNorm() - radius * radius;
    const double alpha_tr = (-b + std::sqrt(std::max(0.0, b * b - a * c))) / a;

    double alpha_box = std::numeric_limits<double>::infinity();
    Eigen::Index blocking = -1;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (fixed[i] || dir(i) == 0.0) continue;
      const double limit = dir(i) > 0.0 ? (hi(i) - s(i)) / dir(i) : (lo(i) - s(i)) / dir(i);
      if (limit < alpha_box) {
        alpha_box = std::max(0.0, limit);
        blocking = i;
      }
    }
    const double alpha_cg =
        curvature > 0.0 ? -slope / curvature : std::numeric_limits<double>::infinity();

    const double alpha = std::min({alpha_tr, alpha_box, alpha_cg});
    s += alpha * dir;
    grad += alpha * hd;
    if (alpha == alpha_tr) break;
    if (alpha == alpha_box && blocking >= 0) {
      s(blocking) = dir(blocking) > 0.0 ? hi(blocking) : lo(blocking);
      fixed[blocking] = true;
      dir = -free_part(grad);
      gg = dir.squaredNorm();
      continue;
    }
    const VectorXd next = free_part(grad);
    const double gg_next = next.squaredNorm();
    dir = -next + (gg_next / gg) * dir;
    gg = gg_next;
  }
  for (Eigen::Index i = 0; i < d; ++i) s(i) = std::clamp(s(i), lo(i), hi(i));
  return s;
}

VectorXd to_eigen(const Point& p) { return Eigen::Map<const VectorXd>(p.data(), static_cast<Eigen::Index>(p.size())); }
std::span<const double> as_span(const VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

}  // namespace

SolverTask model_trust_region_task(Point x0, Bounds bounds, StopRule stop) {
  const auto d = static_cast<Eigen::Index>(bounds.dim());
  // Work in box-normalized coordinates z = (x - lower) / width.
  const VectorXd origin = to_eigen(bounds.lower());
  const VectorXd raw_upper = to_eigen(bounds.upper());
  const VectorXd scale = raw_upper - origin;
  const VectorXd lower = VectorXd::Zero(d);
  const VectorXd upper = VectorXd::Ones(d);
  const double xtol = stop.xtol_abs / scale.minCoeff();
  double radius = kInitialRadius;
  const double max_radius = 1.0;
  const double min_radius = 1e-12;
  auto to_raw = [&](const VectorXd& z) -> VectorXd {
    return (origin + scale.cwiseProduct(z)).cwiseMax(origin).cwiseMin(raw_upper);
  };

  // Initial design: x0 and two points per coordinate, at +-radius, shifted
  // to one side when the box is too close.
  std::vector<VectorXd> y;
  std::vector<double> fy;
  const VectorXd start =
      ((to_eigen(x0) - origin).array() / scale.array()).matrix().cwiseMax(lower).cwiseMin(upper);
  y.push_back(start);
  const double f0 = co_await Evaluate{x0};
  fy.push_back(f0);
  for (Eigen::Index i = 0; i < d; ++i) {
    double first = radius, second = -radius;
    if (start(i) + radius > upper(i)) {
      first = -radius;
      second = -2.0 * radius;
    } else if (start(i) - radius < lower(i)) {
      second = 2.0 * radius;
    }
    for (double offset : {first, second}) {
      VectorXd p = start;
      p(i) = std::clamp(p(i) + offset, lower(i), upper(i));
      y.push_back(p);
      const VectorXd raw = to_raw(p);
      const double fp = co_await Evaluate{as_span(raw)};
      fy.push_back(fp);
    }
  }
  const auto m = static_cast<Eigen::Index>(y.size());

  auto best_of = [&] {
    return static_cast<Eigen::Index>(std::min_element(fy.begin(), fy.end()) - fy.begin());
  };
  Eigen::Index best = best_of();

  Quadratic model{start, 0.0, VectorXd::Zero(d), MatrixXd::Zero(d, d)};
  InterpolationSystem(y, y[best]).update(model, y, fy);

  auto farthest = [&](double threshold) -> Eigen::Index {
    Eigen::Index far = -1;
    double dist = threshold;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (j == best) continue;
      const double dj = (y[j] - y[best]).norm();
      if (dj > dist) {
        dist = dj;
        far = j;
      }
    }
    return far;
  };

  auto too_close = [&](const VectorXd& x) {
    for (const auto& p : y)
      if ((p - x).norm() <= 1e-13) return true;
    return false;
  };

  bool repair_geometry = false;
  for (;;) {
    const VectorXd center = y[best];
    const VectorXd lo = lower - center;
    const VectorXd hi = upper - center;

    // Geometry step: move the farthest point to where its Lagrange function
    // is largest in magnitude inside the trust region.
    const Eigen::Index far = farthest(2.0 * radius);
    bool geometry_blocked = false;
    if (repair_geometry && far >= 0) {
      repair_geometry = false;
      const InterpolationSystem system(y, center);
      if (system.usable()) {
        Quadratic ell = system.lagrange(far);
        ell.rebase(center);
        const VectorXd up = trust_region_step(-ell.g, -ell.h, radius, lo, hi);
        const VectorXd down = trust_region_step(ell.g, ell.h, radius, lo, hi);
        const VectorXd a = center + up, b = center + down;
        VectorXd x = std::abs(ell.at(a)) >= std::abs(ell.at(b)) ? a : b;
        x = x.cwiseMax(lower).cwiseMin(upper);
        if (!too_close(x)) {
          const VectorXd raw = to_raw(x);
          const double fx = co_await Evaluate{as_span(raw)};
          y[far] = x;
          fy[far] = fx;
          best = best_of();
          const InterpolationSystem updated(y, y[best]);
          if (updated.usable()) updated.update(model, y, fy);
          continue;
        }
      }
      geometry_blocked = true;
    }

    model.rebase(center);
    const VectorXd step = trust_region_step(model.g, model.h, radius, lo, hi);
    const double predicted = -(model.g.dot(step) + 0.5 * step.dot(model.h * step));
    const double step_norm = step.norm();

    if (!(predicted > 0.0) || predicted < stop.ftol_abs || step_norm < 0.1 * radius) {
      if (far >= 0 && !geometry_blocked) {
        repair_geometry = true;
        continue;
      }
      // A small predicted decrease only counts once the region is near xtol.
      if (stop.ftol_abs > 0.0 && predicted < stop.ftol_abs && radius <= 10.0 * xtol)
        co_return Termination::kConvergedFtol;
      if (radius <= min_radius) {
        // Nothing left to refine; keep sampling around the best point so that
        // zero-tolerance runs still consume their budget meaningfully.
        radius = min_radius;
        const Eigen::Index j = farthest(-1.0);
        y[j] = center;
        y[j](j % d) = std::clamp(center(j % d) + radius, lower(j % d), upper(j % d));
        if (too_close(y[j])) y[j](j % d) = std::clamp(center(j % d) - radius, lower(j % d), upper(j % d));
        const VectorXd raw = to_raw(y[j]);
        const double fj = co_await Evaluate{as_span(raw)};
        fy[j] = fj;
        best = best_of();
        const InterpolationSystem updated(y, y[best]);
        if (updated.usable()) updated.update(model, y, fy);
        continue;
      }
      radius = std::max(kShrink * radius, min_radius);
      if (radius < xtol) co_return Termination::kConvergedXtol;
      continue;
    }

    VectorXd x = (center + step).cwiseMax(lower).cwiseMin(upper);
    const VectorXd raw = to_raw(x);
    const double fx = co_await Evaluate{as_span(raw)};
    const double ratio = (fy[best] - fx) / predicted;

    if (!too_close(x)) {
      // Replace the point whose Lagrange function at x is largest, weighted
      // towards points far from the current best.
      const InterpolationSystem system(y, center);
      Eigen::Index drop = -1;
      if (system.usable()) {
        const VectorXd ell = system.lagrange_at(x);
        double score = -1.0;
        for (Eigen::Index j = 0; j < m; ++j) {
          if (j == best && fx >= fy[best]) continue;
          const double dist = (y[j] - center).norm() / radius;
          const double s = std::abs(ell(j)) * std::max(1.0, dist * dist * dist * dist);
          if (s > score) {
            score = s;
            drop = j;
          }
        }
      } else {
        drop = farthest(-1.0);
      }
      if (drop >= 0) {
        y[drop] = x;
        fy[drop] = fx;
        best = best_of();
        const InterpolationSystem updated(y, y[best]);
        if (updated.usable()) updated.update(model, y, fy);
      }
    }

    if (ratio < kEta1) {
      if (farthest(2.0 * radius) >= 0) {
        repair_geometry = true;
      } else {
        radius = std::max(kShrink * radius, min_radius);
      }
    } else if (ratio > kEta2 && step_norm > 0.95 * radius) {
      radius = std::min(kExpand * radius, max_radius);
    }
    if (radius < xtol) co_return Termination::kConvergedXtol;
  }
}

}  // namespace qaoams
