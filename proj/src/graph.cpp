#include "qaoams/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "qaoams/error.hpp"
#include "qaoams/rng.hpp"

namespace qaoams {

Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

Graph::Graph(int n_vertices, std::vector<Edge> edges, std::string label)
    : n_(n_vertices), edges_(std::move(edges)), label_(std::move(label)) {
  if (n_ < 0) throw InvalidArgument("negative vertex count");
  for (auto& e : edges_) {
    if (e.u == e.v) throw InvalidArgument("self-loop at vertex " + std::to_string(e.u));
    e = make_edge(e.u, e.v);
    if (e.u < 0 || e.v >= n_) {
      throw InvalidArgument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") outside [0," + std::to_string(n_) + ")");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw InvalidArgument("duplicate edge (" + std::to_string(dup->u) + "," +
                          std::to_string(dup->v) + ")");
  }
}

bool Graph::has_edge(Edge e) const {
  e = make_edge(e.u, e.v);
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<int> Graph::degrees() const {
  std::vector<int> k(n_, 0);
  for (const auto& e : edges_) {
    ++k[e.u];
    ++k[e.v];
  }
  return k;
}

Eigen::MatrixXd Graph::adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (const auto& e : edges_) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  return a;
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  std::vector<int> parent(n_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n_;
  for (const auto& e : edges_) {
    int a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

Graph connected_caveman(int num_cliques, int clique_size, int max_vertices) {
  if (num_cliques < 2 || clique_size < 2) {
    throw InvalidArgument("connected_caveman needs num_cliques >= 2 and clique_size >= 2");
  }
  const long total = static_cast<long>(num_cliques) * clique_size;
  if (total > max_vertices) {
    throw CapacityError("connected_caveman(" + std::to_string(num_cliques) + "," +
                        std::to_string(clique_size) + ") has " + std::to_string(total) +
                        " vertices, limit is " + std::to_string(max_vertices));
  }
  const int n = static_cast<int>(total);
  std::vector<Edge> edges;
  for (int c = 0; c < num_cliques; ++c) {
    const int s = c * clique_size;
    for (int i = s; i < s + clique_size; ++i) {
      for (int j = i + 1; j < s + clique_size; ++j) {
        if (clique_size > 2 && i == s && j == s + 1) continue;  // rewired
        edges.push_back({i, j});
      }
    }
    edges.push_back(make_edge(s, (s - 1 + n) % n));
  }
  return Graph(n, std::move(edges),
               "caveman(" + std::to_string(num_cliques) + "," + std::to_string(clique_size) + ")");
}

Graph random_partition(const std::vector<int>& community_sizes, double p_in, double p_out,
                       std::uint64_t seed, int max_vertices) {
  if (community_sizes.empty()) throw InvalidArgument("random_partition needs communities");
  if (!(0.0 <= p_out && p_out <= p_in && p_in <= 1.0)) {
    throw InvalidArgument("random_partition needs 0 <= p_out <= p_in <= 1");
  }
  long total = 0;
  for (int s : community_sizes) {
    if (s < 1) throw InvalidArgument("community sizes must be positive");
    total += s;
  }
  if (total > max_vertices) {
    throw CapacityError("random_partition has " + std::to_string(total) +
                        " vertices, limit is " + std::to_string(max_vertices));
  }
  const int n = static_cast<int>(total);
  std::vector<int> community(n);
  for (int c = 0, v = 0; c < static_cast<int>(community_sizes.size()); ++c) {
    for (int i = 0; i < community_sizes[c]; ++i) community[v++] = c;
  }

  std::string sizes;
  for (int s : community_sizes) sizes += (sizes.empty() ? "" : ",") + std::to_string(s);

  std::uint64_t attempt_seed = seed;
  for (int attempt = 0; attempt <= kPartitionRetries; ++attempt) {
    attempt_seed = seed + static_cast<std::uint64_t>(attempt);
    Rng rng(attempt_seed);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        const double p = community[u] == community[v] ? p_in : p_out;
        if (rng.uniform() < p) edges.push_back({u, v});
      }
    }
    Graph g(n, std::move(edges), "partition([" + sizes + "]," + std::to_string(attempt_seed) + ")");
    if (g.is_connected()) return g;
  }
  throw GenerationFailed("random_partition produced only disconnected graphs (last seed " +
                             std::to_string(attempt_seed) + ")",
                         attempt_seed);
}

Graph remove_edge(const Graph& g, Edge e) {
  e = make_edge(e.u, e.v);
  if (!g.has_edge(e)) {
    throw NotFound("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") not in graph");
  }
  std::vector<Edge> edges;
  edges.reserve(g.edges().size() - 1);
  for (const auto& x : g.edges()) {
    if (x != e) edges.push_back(x);
  }
  return Graph(g.n_vertices(), std::move(edges), g.label());
}

Eigen::MatrixXd laplacian(const Graph& g) {
  Eigen::MatrixXd l = -g.adjacency();
  const auto k = g.degrees();
  for (int i = 0; i < g.n_vertices(); ++i) l(i, i) = k[i];
  return l;
}

LaplacianSpectrum laplacian_eigen(const Graph& g) {
  if (g.n_vertices() < 1) throw InvalidArgument("laplacian_eigen needs at least one vertex");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(g));
  LaplacianSpectrum out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index c = 0; c < out.eigenvectors.cols(); ++c) {
    auto col = out.eigenvectors.col(c);
    const double peak = col.cwiseAbs().maxCoeff();
    // "Largest" up to rounding, so that exact ties resolve to the first index.
    for (Eigen::Index r = 0; r < col.size(); ++r) {
      if (std::abs(col(r)) >= peak * (1.0 - 1e-9)) {
        if (col(r) < 0) col = -col;
        break;
      }
    }
  }
  return out;
}

SpectralImpact spectral_edge_impact(const Graph& g, Edge e) {
  e = make_edge(e.u, e.v);
  const Graph reduced = remove_edge(g, e);
  const auto before = laplacian_eigen(g);
  const auto after = laplacian_eigen(reduced);
  return {e, (before.eigenvectors - after.eigenvectors).norm()};
}

Edge worst_case_edge(const Graph& g) {
  if (g.n_edges() == 0) throw EmptyGraphError("worst_case_edge on a graph without edges");
  const auto before = laplacian_eigen(g);
  std::vector<double> distance;
  distance.reserve(g.edges().size());
  for (const auto& e : g.edges()) {
    const auto after = laplacian_eigen(remove_edge(g, e));
    distance.push_back((before.eigenvectors - after.eigenvectors).norm());
  }
  const double best = *std::max_element(distance.begin(), distance.end());
  const double slack = 1e-9 * std::max(1.0, best);
  for (std::size_t i = 0; i < distance.size(); ++i) {
    if (distance[i] >= best - slack) return g.edges()[i];
  }
  return g.edges().front();  // unreachable
}

namespace {

bool blank_or_comment(std::string_view line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Graph read_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  int declared_n = -1;
  int max_vertex = -1;
  int line_no = 0;
  std::string label = "edge-list";
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::pair<Edge, int>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) {
      // A leading "# text" line carries the provenance label.
      if (line_no == 1 && line.rfind("# ", 0) == 0) label = line.substr(2);
      continue;
    }
    std::istringstream fields(line);
    std::string first;
    fields >> first;
    if (first == "n") {
      long count;
      std::string rest;
      if (!(fields >> count) || (fields >> rest) || count < 0) {
        throw ParseError("malformed header, expected 'n <count>'", line_no);
      }
      if (declared_n >= 0) throw ParseError("duplicate 'n' header", line_no);
      declared_n = static_cast<int>(count);
      continue;
    }
    long a, b;
    std::string rest;
    std::istringstream pair(line);
    if (!(pair >> a >> b) || (pair >> rest)) {
      throw ParseError("expected two vertex indices", line_no);
    }
    if (a < 0 || b < 0) throw ParseError("negative vertex index", line_no);
    if (a == b) throw ParseError("self-loop at vertex " + std::to_string(a), line_no);
    if (a > 1'000'000 || b > 1'000'000) throw ParseError("vertex index too large", line_no);
    const Edge e = make_edge(static_cast<int>(a), static_cast<int>(b));
    edges.push_back(e);
    seen.emplace_back(e, line_no);
    max_vertex = std::max(max_vertex, e.v);
  }
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 1; i < seen.size(); ++i) {
    if (seen[i].first == seen[i - 1].first) throw ParseError("duplicate edge", seen[i].second);
  }
  int n = max_vertex + 1;
  if (declared_n >= 0) {
    if (declared_n < n) {
      throw ParseError("header declares " + std::to_string(declared_n) +
                           " vertices but edges reference vertex " + std::to_string(max_vertex),
                       line_no);
    }
    n = declared_n;
  }
  return Graph(n, std::move(edges), std::move(label));
}

std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  if (!g.label().empty()) out << "# " << g.label() << '\n';
  out << "n " << g.n_vertices() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFound("cannot open edge list '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return read_edge_list(buf.str());
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << write_edge_list(g);
}

}  // namespace qaoams
