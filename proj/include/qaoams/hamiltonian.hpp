#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qaoams/graph.hpp"

namespace qaoams {

// B_ij = A_ij - k_i k_j / (2|E|), diagonal included.
struct ModularityMatrix {
  Eigen::MatrixXd b;
  int num_edges = 0;
};

ModularityMatrix modularity_matrix(const Graph& g);

// Spin of qubit i in basis state z: bit 0 -> +1, bit 1 -> -1 (bit i = qubit i).
inline int spin_of(std::uint64_t z, int i) { return ((z >> i) & 1U) ? -1 : +1; }
std::vector<int> spins_from_basis(std::uint64_t z, int n);

// Two-community modularity C = 1/(4|E|) sum_ij B_ij s_i s_j over all i, j.
// Evaluated as an exact integer numerator s^T (2|E| A - k k^T) s divided once
// by 8|E|^2, so the result is the correctly rounded value of the formula.
double modularity(const Graph& g, std::span<const int> spins);

// Diagonal of H_C in the computational basis, energies[z] = C(spins(z)).
// Energies take few distinct values; `levels` holds them sorted and
// `level_index[z]` points into it, which the simulator uses to share phases.
class CostDiagonal {
 public:
  CostDiagonal() = default;
  explicit CostDiagonal(std::vector<double> energies);

  int n_qubits() const noexcept { return n_; }
  std::size_t size() const noexcept { return energies_.size(); }
  const std::vector<double>& energies() const noexcept { return energies_; }
  double operator[](std::size_t z) const { return energies_[z]; }
  const std::vector<double>& levels() const noexcept { return levels_; }
  const std::vector<std::uint32_t>& level_index() const noexcept { return level_index_; }
  double max() const { return levels_.back(); }
  double min() const { return levels_.front(); }
  double mean() const;

 private:
  int n_ = 0;
  std::vector<double> energies_;
  std::vector<double> levels_;
  std::vector<std::uint32_t> level_index_;
};

CostDiagonal cost_diagonal(const Graph& g, int max_qubits = kMaxVertices);

struct BestPartition {
  std::vector<int> spins;
  std::uint64_t basis_state = 0;
  double modularity = 0.0;
};

// Exhaustive maximum of C over all 2^n assignments; ties go to the smallest z.
BestPartition best_partition_bruteforce(const Graph& g, int max_qubits = kMaxVertices);

}  // namespace qaoams
