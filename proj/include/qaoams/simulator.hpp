#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qaoams/hamiltonian.hpp"

namespace qaoams {

inline constexpr double kPi = 3.14159265358979323846;

// QAOA angles for p steps. As a flat optimization point the layout is
// (beta_1..beta_p, gamma_1..gamma_p).
struct QaoaParams {
  std::vector<double> beta;
  std::vector<double> gamma;

  int steps() const noexcept { return static_cast<int>(beta.size()); }
  std::vector<double> flat() const;
  static QaoaParams from_flat(std::span<const double> x);
};

using StateVector = std::vector<std::complex<double>>;

// |psi> = prod_l exp(-i beta_l H_M) exp(-i gamma_l H_C) |+>^n.
StateVector qaoa_state(const CostDiagonal& diag, const QaoaParams& params);

struct ObjectiveValue {
  double f = 0.0;   // -<H_C>
  int shots = 0;    // 0 when exact
};

ObjectiveValue objective(const CostDiagonal& diag, const QaoaParams& params);

// Estimate from `shots` measurements drawn with a seeded generator.
ObjectiveValue sampled_objective(const CostDiagonal& diag, const QaoaParams& params, int shots,
                                 std::uint64_t seed);

// p = 1 landscape over [0, pi] x [0, 2 pi] evaluated at cell centers,
// row-major with beta as the row index.
struct LandscapeGrid {
  int beta_points = 0;
  int gamma_points = 0;
  std::vector<double> f;

  double beta_at(int i) const { return (i + 0.5) * kPi / beta_points; }
  double gamma_at(int j) const { return (j + 0.5) * 2.0 * kPi / gamma_points; }
  double at(int i, int j) const { return f[static_cast<std::size_t>(i) * gamma_points + j]; }
};

LandscapeGrid landscape_grid(const CostDiagonal& diag, int beta_points, int gamma_points);

// Exact objective over flat points, for use as an optimizer callback.
// Reuses a thread-local state buffer, so concurrent calls are safe.
class QaoaObjective {
 public:
  QaoaObjective(const CostDiagonal& diag, int steps) : diag_(&diag), steps_(steps) {}
  double operator()(std::span<const double> x) const;
  int steps() const noexcept { return steps_; }
  int dimension() const noexcept { return 2 * steps_; }

 private:
  const CostDiagonal* diag_;
  int steps_;
};

}  // namespace qaoams
