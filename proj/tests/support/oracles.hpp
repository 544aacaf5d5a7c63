#pragma once

// Reference implementations written straight from the formulas, with no code
// shared with the library beyond the Graph container, plus small generators
// for property tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "qaoams/graph.hpp"

namespace oracle {

using cd = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846;

inline Eigen::MatrixXd adjacency(const qaoams::Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n_vertices(), g.n_vertices());
  for (const auto& e : g.edges()) a(e.u, e.v) = a(e.v, e.u) = 1.0;
  return a;
}

// B_ij = A_ij - k_i k_j / (2m)
inline Eigen::MatrixXd modularity_matrix(const qaoams::Graph& g) {
  const Eigen::MatrixXd a = adjacency(g);
  const int n = g.n_vertices();
  const double m = g.n_edges();
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = a(i, j) - a.row(i).sum() * a.row(j).sum() / (2.0 * m);
  return b;
}

// C = 1/(4m) sum_ij B_ij s_i s_j
inline double modularity(const qaoams::Graph& g, const std::vector<int>& s) {
  const Eigen::MatrixXd b = modularity_matrix(g);
  double c = 0.0;
  for (int i = 0; i < g.n_vertices(); ++i)
    for (int j = 0; j < g.n_vertices(); ++j) c += b(i, j) * s[i] * s[j];
  return c / (4.0 * g.n_edges());
}

inline std::vector<int> spins(std::uint64_t z, int n) {
  std::vector<int> s(n);
  for (int i = 0; i < n; ++i) s[i] = ((z >> i) & 1U) ? -1 : 1;
  return s;
}

inline std::vector<double> energies(const qaoams::Graph& g) {
  std::vector<double> e(std::size_t{1} << g.n_vertices());
  for (std::uint64_t z = 0; z < e.size(); ++z) e[z] = modularity(g, spins(z, g.n_vertices()));
  return e;
}

inline double brute_force_max(const qaoams::Graph& g) {
  double best = -1e300;
  for (double v : energies(g)) best = std::max(best, v);
  return best;
}

// Pauli X on qubit q of an n-qubit register as a dense 2^n x 2^n matrix,
// qubit q being bit q of the basis index.
inline Eigen::MatrixXcd pauli_x(int n, int q) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index z = 0; z < dim; ++z) x(z ^ (Eigen::Index{1} << q), z) = 1.0;
  return x;
}

// prod_l exp(-i beta_l H_M) exp(-i gamma_l H_C) |+>^n with both exponentials
// taken of explicit dense matrices.
inline Eigen::VectorXcd qaoa_state(const std::vector<double>& diag, const std::vector<double>& beta,
                                   const std::vector<double>& gamma) {
  const auto dim = static_cast<Eigen::Index>(diag.size());
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  Eigen::MatrixXcd hc = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index z = 0; z < dim; ++z) hc(z, z) = diag[z];
  Eigen::MatrixXcd hm = Eigen::MatrixXcd::Zero(dim, dim);
  for (int q = 0; q < n; ++q) hm += pauli_x(n, q);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  const cd i(0.0, 1.0);
  for (std::size_t l = 0; l < beta.size(); ++l) {
    const Eigen::MatrixXcd uc = (-i * gamma[l] * hc).exp();
    const Eigen::MatrixXcd um = (-i * beta[l] * hm).exp();
    psi = um * (uc * psi);
  }
  return psi;
}

inline double objective(const std::vector<double>& diag, const std::vector<double>& beta,
                        const std::vector<double>& gamma) {
  const Eigen::VectorXcd psi = qaoa_state(diag, beta, gamma);
  double e = 0.0;
  for (Eigen::Index z = 0; z < psi.size(); ++z) e += std::norm(psi(z)) * diag[z];
  return -e;
}

// Smallest 1-indexed j with f0 - v_j >= (1 - tau)(f0 - best), or 0.
inline std::size_t solved_after(const std::vector<double>& values, double f0, double best, double tau) {
  for (std::size_t j = 0; j < values.size(); ++j)
    if (f0 - values[j] >= (1.0 - tau) * (f0 - best)) return j + 1;
  return 0;
}

// Hand-rolled generators.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  bool coin(double p) { return real(0.0, 1.0) < p; }

  // Connected graph on n vertices: a random spanning tree plus extra edges.
  qaoams::Graph connected_graph(int n, double extra = 0.3) {
    std::vector<qaoams::Edge> edges;
    for (int v = 1; v < n; ++v) edges.push_back(qaoams::make_edge(v, integer(0, v - 1)));
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        const auto e = qaoams::make_edge(u, v);
        if (std::find(edges.begin(), edges.end(), e) == edges.end() && coin(extra)) edges.push_back(e);
      }
    return qaoams::Graph(n, edges, "gen");
  }

  std::vector<double> angles(int p, double lo, double hi) {
    std::vector<double> a(p);
    for (auto& x : a) x = real(lo, hi);
    return a;
  }

 private:
  std::mt19937_64 eng_;
};

inline qaoams::Graph path(int n) {
  std::vector<qaoams::Edge> e;
  for (int v = 0; v + 1 < n; ++v) e.push_back({v, v + 1});
  return qaoams::Graph(n, e, "path");
}

inline qaoams::Graph cycle(int n) {
  std::vector<qaoams::Edge> e;
  for (int v = 0; v + 1 < n; ++v) e.push_back({v, v + 1});
  e.push_back({0, n - 1});
  return qaoams::Graph(n, e, "cycle");
}

inline qaoams::Graph complete(int n) {
  std::vector<qaoams::Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.push_back({u, v});
  return qaoams::Graph(n, e, "complete");
}

inline qaoams::Graph star(int n) {
  std::vector<qaoams::Edge> e;
  for (int v = 1; v < n; ++v) e.push_back({0, v});
  return qaoams::Graph(n, e, "star");
}

// The connected graphs with n <= 6 used for oracle equivalence.
inline std::vector<qaoams::Graph> small_fixtures() {
  std::vector<qaoams::Graph> out;
  for (int n = 2; n <= 6; ++n) out.push_back(path(n));
  for (int n = 3; n <= 6; ++n) {
    out.push_back(cycle(n));
    out.push_back(complete(n));
  }
  for (int n = 4; n <= 6; ++n) out.push_back(star(n));
  out.push_back(qaoams::connected_caveman(2, 2));
  out.push_back(qaoams::connected_caveman(2, 3));
  out.push_back(qaoams::connected_caveman(3, 2));
  Gen gen(20190611);
  for (int k = 0; k < 8; ++k) out.push_back(gen.connected_graph(3 + k % 4));
  return out;
}

}  // namespace oracle
