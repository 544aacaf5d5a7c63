#include "qaoams/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "qaoams/error.hpp"
#include "qaoams/rng.hpp"

namespace qaoams {

std::vector<double> QaoaParams::flat() const {
  std::vector<double> x(beta);
  x.insert(x.end(), gamma.begin(), gamma.end());
  return x;
}

QaoaParams QaoaParams::from_flat(std::span<const double> x) {
  if (x.empty() || x.size() % 2 != 0) {
    throw DimensionMismatch("flat QAOA point must have even, nonzero length");
  }
  const std::size_t p = x.size() / 2;
  return {std::vector<double>(x.begin(), x.begin() + p), std::vector<double>(x.begin() + p, x.end())};
}

namespace {

void check(const CostDiagonal& diag, const QaoaParams& params) {
  if (diag.size() == 0) throw DimensionMismatch("empty cost diagonal");
  if (params.beta.size() != params.gamma.size()) {
    throw DimensionMismatch("beta has " + std::to_string(params.beta.size()) + " entries, gamma has " +
                            std::to_string(params.gamma.size()));
  }
  if (params.beta.empty()) throw InvalidArgument("QAOA needs at least one step");
}

// Amplitudes are kept as separate real and imaginary arrays so the inner
// loops vectorize.
struct Buffers {
  std::vector<double> re, im;
  std::vector<double> cos_phase, sin_phase;
};

void evolve(const CostDiagonal& diag, std::span<const double> beta, std::span<const double> gamma,
            Buffers& buf) {
  const std::size_t size = diag.size();
  const int n = diag.n_qubits();
  buf.re.assign(size, 1.0 / std::sqrt(static_cast<double>(size)));
  buf.im.assign(size, 0.0);
  const auto& levels = diag.levels();
  const auto& index = diag.level_index();
  buf.cos_phase.resize(levels.size());
  buf.sin_phase.resize(levels.size());
  double* re = buf.re.data();
  double* im = buf.im.data();

  for (std::size_t l = 0; l < beta.size(); ++l) {
    for (std::size_t k = 0; k < levels.size(); ++k) {
      buf.cos_phase[k] = std::cos(gamma[l] * levels[k]);
      buf.sin_phase[k] = -std::sin(gamma[l] * levels[k]);
    }
    for (std::size_t z = 0; z < size; ++z) {
      const double wr = buf.cos_phase[index[z]];
      const double wi = buf.sin_phase[index[z]];
      const double ar = re[z];
      const double ai = im[z];
      re[z] = ar * wr - ai * wi;
      im[z] = ar * wi + ai * wr;
    }

    // exp(-i beta X) on each qubit: [[c, -is], [-is, c]]
    const double c = std::cos(beta[l]);
    const double s = std::sin(beta[l]);
    for (int q = 0; q < n; ++q) {
      const std::size_t half = std::size_t{1} << q;
      for (std::size_t base = 0; base < size; base += 2 * half) {
        double* ar = re + base;
        double* ai = im + base;
        double* br = re + base + half;
        double* bi = im + base + half;
        for (std::size_t i = 0; i < half; ++i) {
          const double xr = ar[i], xi = ai[i], yr = br[i], yi = bi[i];
          ar[i] = c * xr + s * yi;
          ai[i] = c * xi - s * yr;
          br[i] = c * yr + s * xi;
          bi[i] = c * yi - s * xr;
        }
      }
    }
  }
}

double expectation(const CostDiagonal& diag, const Buffers& buf) {
  const auto& e = diag.energies();
  double sum = 0.0;
  for (std::size_t z = 0; z < e.size(); ++z) sum += (buf.re[z] * buf.re[z] + buf.im[z] * buf.im[z]) * e[z];
  return sum;
}

}  // namespace

StateVector qaoa_state(const CostDiagonal& diag, const QaoaParams& params) {
  check(diag, params);
  Buffers buf;
  evolve(diag, params.beta, params.gamma, buf);
  StateVector psi(buf.re.size());
  for (std::size_t z = 0; z < psi.size(); ++z) psi[z] = {buf.re[z], buf.im[z]};
  return psi;
}

ObjectiveValue objective(const CostDiagonal& diag, const QaoaParams& params) {
  check(diag, params);
  Buffers buf;
  evolve(diag, params.beta, params.gamma, buf);
  return {-expectation(diag, buf), 0};
}

ObjectiveValue sampled_objective(const CostDiagonal& diag, const QaoaParams& params, int shots,
                                 std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("sampled_objective needs shots >= 1; use objective() for exact values");
  const StateVector psi = qaoa_state(diag, params);
  std::vector<double> cdf(psi.size());
  double acc = 0.0;
  for (std::size_t z = 0; z < psi.size(); ++z) {
    acc += std::norm(psi[z]);
    cdf[z] = acc;
  }
  Rng rng(seed);
  double sum = 0.0;
  for (int k = 0; k < shots; ++k) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t z = std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1);
    sum += diag[z];
  }
  return {-sum / shots, shots};
}

LandscapeGrid landscape_grid(const CostDiagonal& diag, int beta_points, int gamma_points) {
  if (beta_points < 1 || gamma_points < 1) throw InvalidArgument("landscape grid must be at least 1x1");
  LandscapeGrid grid{beta_points, gamma_points, {}};
  grid.f.resize(static_cast<std::size_t>(beta_points) * gamma_points);
  const QaoaObjective f(diag, 1);
  for (int i = 0; i < beta_points; ++i) {
    for (int j = 0; j < gamma_points; ++j) {
      const double x[2] = {grid.beta_at(i), grid.gamma_at(j)};
      grid.f[static_cast<std::size_t>(i) * gamma_points + j] = f(x);
    }
  }
  return grid;
}

double QaoaObjective::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != 2 * steps_) {
    throw DimensionMismatch("expected " + std::to_string(2 * steps_) + " parameters, got " +
                            std::to_string(x.size()));
  }
  thread_local Buffers buf;
  evolve(*diag_, x.first(steps_), x.subspan(steps_), buf);
  return -expectation(*diag_, buf);
}

}  // namespace qaoams
