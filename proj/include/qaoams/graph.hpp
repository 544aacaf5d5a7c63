#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qaoams {

// Largest graph the generators and dense enumerators accept by default.
inline constexpr int kMaxVertices = 24;

struct Edge {
  int u = 0;
  int v = 0;

  auto operator<=>(const Edge&) const = default;
};

// Normalizes an unordered pair so that u < v.
Edge make_edge(int a, int b);

// Undirected simple unweighted graph. Edges are kept sorted and unique.
class Graph {
 public:
  Graph() = default;
  // Throws InvalidArgument on self-loops, duplicate edges or out-of-range
  // endpoints.
  Graph(int n_vertices, std::vector<Edge> edges, std::string label = {});

  int n_vertices() const noexcept { return n_; }
  int n_edges() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  bool has_edge(Edge e) const;
  std::vector<int> degrees() const;
  Eigen::MatrixXd adjacency() const;
  bool is_connected() const;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::string label_;
};

// Ring of cliques. For clique_size >= 3 each clique loses the edge
// (s, s+1) and gains (s, s-1 mod N), s being its first vertex. A 2-clique
// keeps its only edge, otherwise the result would be a perfect matching.
Graph connected_caveman(int num_cliques, int clique_size, int max_vertices = kMaxVertices);

// Planted partition graph. Pairs are visited in lexicographic order with one
// uniform draw each. Disconnected draws are retried with seed+1, seed+2, ...
inline constexpr int kPartitionRetries = 100;
Graph random_partition(const std::vector<int>& community_sizes, double p_in, double p_out,
                       std::uint64_t seed, int max_vertices = kMaxVertices);

Graph remove_edge(const Graph& g, Edge e);

struct LaplacianSpectrum {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // column i pairs with eigenvalues[i]
};

Eigen::MatrixXd laplacian(const Graph& g);

// Eigen-decomposition of L = D - A. Every eigenvector is flipped so that its
// first component of (numerically) largest magnitude is positive.
LaplacianSpectrum laplacian_eigen(const Graph& g);

struct SpectralImpact {
  Edge edge;
  double distance = 0.0;
};

// Frobenius distance between the eigenvector matrices of L(g) and
// L(g - e). With degenerate eigenvalues the value depends on the basis the
// eigensolver returns; it is deterministic but not basis invariant.
SpectralImpact spectral_edge_impact(const Graph& g, Edge e);

// Edge of maximal spectral impact; near-ties (relative 1e-9) go to the
// lexicographically smallest edge.
Edge worst_case_edge(const Graph& g);

// Edge-list text: "u v" per line, '#' comments, optional "n <count>" header.
Graph read_edge_list(std::string_view text);
std::string write_edge_list(const Graph& g);

Graph load_edge_list(const std::string& path);
void save_edge_list(const Graph& g, const std::string& path);

}  // namespace qaoams
