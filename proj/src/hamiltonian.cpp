#include "qaoams/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "qaoams/error.hpp"

namespace qaoams {

namespace {

void require_edges(const Graph& g) {
  if (g.n_edges() == 0) throw EmptyGraphError("modularity is undefined for a graph without edges");
}

void require_capacity(const Graph& g, int max_qubits) {
  if (g.n_vertices() > max_qubits || g.n_vertices() > 30) {
    throw CapacityError(std::to_string(g.n_vertices()) + " vertices exceed the limit of " +
                        std::to_string(max_qubits));
  }
}

// Integer W = 2|E| A - k k^T; C(s) = s^T W s / (8 |E|^2).
std::vector<std::int64_t> integer_weights(const Graph& g) {
  const int n = g.n_vertices();
  const std::int64_t m = g.n_edges();
  const auto k = g.degrees();
  std::vector<std::int64_t> w(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[i * n + j] = -static_cast<std::int64_t>(k[i]) * k[j];
  for (const auto& e : g.edges()) {
    w[e.u * n + e.v] += 2 * m;
    w[e.v * n + e.u] += 2 * m;
  }
  return w;
}

double scale_of(const Graph& g) {
  const double m = g.n_edges();
  return 1.0 / (8.0 * m * m);
}

}  // namespace

ModularityMatrix modularity_matrix(const Graph& g) {
  require_edges(g);
  const int n = g.n_vertices();
  const double two_m = 2.0 * g.n_edges();
  const auto k = g.degrees();
  ModularityMatrix out{g.adjacency(), g.n_edges()};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.b(i, j) -= static_cast<double>(k[i]) * k[j] / two_m;
  return out;
}

std::vector<int> spins_from_basis(std::uint64_t z, int n) {
  std::vector<int> s(n);
  for (int i = 0; i < n; ++i) s[i] = spin_of(z, i);
  return s;
}

double modularity(const Graph& g, std::span<const int> spins) {
  require_edges(g);
  if (static_cast<int>(spins.size()) != g.n_vertices()) {
    throw DimensionMismatch("spin vector has " + std::to_string(spins.size()) +
                            " entries, graph has " + std::to_string(g.n_vertices()) + " vertices");
  }
  for (int s : spins) {
    if (s != 1 && s != -1) throw InvalidArgument("spins must be +1 or -1");
  }
  // s^T W s = 4|E| sum_edges s_u s_v - (sum_i k_i s_i)^2
  const std::int64_t m = g.n_edges();
  std::int64_t agree = 0;
  for (const auto& e : g.edges()) agree += spins[e.u] * spins[e.v];
  const auto k = g.degrees();
  std::int64_t field = 0;
  for (int i = 0; i < g.n_vertices(); ++i) field += static_cast<std::int64_t>(k[i]) * spins[i];
  const std::int64_t numerator = 4 * m * agree - field * field;
  return static_cast<double>(numerator) * scale_of(g);
}

CostDiagonal::CostDiagonal(std::vector<double> energies) : energies_(std::move(energies)) {
  const std::size_t size = energies_.size();
  if (size == 0 || !std::has_single_bit(size)) {
    throw DimensionMismatch("cost diagonal length must be a power of two");
  }
  n_ = std::countr_zero(size);
  levels_ = energies_;
  std::sort(levels_.begin(), levels_.end());
  levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());
  level_index_.resize(size);
  for (std::size_t z = 0; z < size; ++z) {
    auto it = std::lower_bound(levels_.begin(), levels_.end(), energies_[z]);
    level_index_[z] = static_cast<std::uint32_t>(it - levels_.begin());
  }
}

double CostDiagonal::mean() const {
  double sum = 0.0;
  for (double e : energies_) sum += e;
  return sum / static_cast<double>(energies_.size());
}

CostDiagonal cost_diagonal(const Graph& g, int max_qubits) {
  require_edges(g);
  require_capacity(g, max_qubits);
  const int n = g.n_vertices();
  const auto w = integer_weights(g);
  const std::uint64_t size = std::uint64_t{1} << n;

  // Gray-code walk: flipping spin q changes s^T W s by
  // -4 s_q (field_q - W_qq s_q), field = W s. All integer, so no drift.
  std::vector<int> s(n, 1);
  std::vector<std::int64_t> field(n, 0);
  std::int64_t value = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) field[i] += w[i * n + j];
    value += field[i];
  }
  std::vector<std::int64_t> numerators(size);
  numerators[0] = value;
  std::uint64_t z = 0;
  for (std::uint64_t step = 1; step < size; ++step) {
    const int q = std::countr_zero(step);
    value += -4 * s[q] * (field[q] - w[q * n + q] * s[q]);
    for (int j = 0; j < n; ++j) field[j] -= 2 * w[j * n + q] * s[q];
    s[q] = -s[q];
    z ^= std::uint64_t{1} << q;
    numerators[z] = value;
  }

  const double scale = scale_of(g);
  std::vector<double> energies(size);
  for (std::uint64_t i = 0; i < size; ++i) energies[i] = static_cast<double>(numerators[i]) * scale;
  return CostDiagonal(std::move(energies));
}

BestPartition best_partition_bruteforce(const Graph& g, int max_qubits) {
  require_edges(g);
  require_capacity(g, max_qubits);
  const int n = g.n_vertices();
  const std::uint64_t size = std::uint64_t{1} << n;
  BestPartition best;
  best.modularity = -std::numeric_limits<double>::infinity();
  std::vector<int> s(n);
  for (std::uint64_t z = 0; z < size; ++z) {
    for (int i = 0; i < n; ++i) s[i] = spin_of(z, i);
    const double c = modularity(g, s);
    if (c > best.modularity) {
      best.modularity = c;
      best.basis_state = z;
    }
  }
  best.spins = spins_from_basis(best.basis_state, n);
  return best;
}

}  // namespace qaoams
