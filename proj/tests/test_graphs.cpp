#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <set>

#include "oracles.hpp"
#include "qaoams/bench.hpp"
#include "qaoams/error.hpp"
#include "qaoams/graph.hpp"
#include "qaoams/hamiltonian.hpp"

using namespace qaoams;

namespace {

std::vector<double> sorted_degrees(const Graph& g) {
  auto d = g.degrees();
  return {d.begin(), d.end()};
}

}  // namespace

TEST_CASE("graph rejects self loops, duplicates and bad endpoints") {
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), InvalidArgument);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), InvalidArgument);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), InvalidArgument);
  const Graph g(3, {{2, 1}, {0, 1}});
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
}

TEST_CASE("caveman 2x2 is a four-cycle") {
  // Cliques {0,1} and {2,3}; each keeps its edge and links back to the
  // previous clique: 0-1, 2-3, 0-3, 2-1.
  const Graph g = connected_caveman(2, 2);
  CHECK(g.n_vertices() == 4);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}, {2, 3}});
  CHECK(g.is_connected());
  for (int d : g.degrees()) CHECK(d == 2);
}

TEST_CASE("caveman 4x4 and 3x4") {
  const Graph g = connected_caveman(4, 4);
  CHECK(g.n_vertices() == 16);
  CHECK(g.n_edges() == 24);
  CHECK(g.is_connected());
  for (int d : g.degrees()) CHECK(d >= 2);

  const Graph h = connected_caveman(3, 4);
  CHECK(h.n_vertices() == 12);
  CHECK(h.n_edges() == 18);
  CHECK(h.is_connected());
}

TEST_CASE("caveman construction matches the ring rule by hand") {
  const int k = 3, s = 4;
  std::set<Edge> expected;
  for (int c = 0; c < k; ++c) {
    const int first = c * s;
    for (int a = 0; a < s; ++a)
      for (int b = a + 1; b < s; ++b) expected.insert(make_edge(first + a, first + b));
    expected.erase(make_edge(first, first + 1));
    expected.insert(make_edge(first, (first - 1 + k * s) % (k * s)));
  }
  const Graph g = connected_caveman(k, s);
  CHECK(std::set<Edge>(g.edges().begin(), g.edges().end()) == expected);
}

TEST_CASE("caveman capacity guard") {
  CHECK_THROWS_AS(connected_caveman(5, 5), CapacityError);
  CHECK_THROWS_AS(connected_caveman(1, 4), InvalidArgument);
  CHECK_NOTHROW(connected_caveman(5, 5, 25));
}

TEST_CASE("random partition") {
  SUBCASE("p_out = 0 cannot connect the communities") {
    try {
      random_partition({3, 3}, 1.0, 0.0, 7);
      FAIL("expected GenerationFailed");
    } catch (const GenerationFailed& e) {
      CHECK(e.last_seed() == 7 + kPartitionRetries);
    }
  }
  SUBCASE("all probabilities one gives K10") {
    const Graph g = random_partition({5, 5}, 1.0, 1.0, 3);
    CHECK(g.n_edges() == 45);
  }
  SUBCASE("planted split is the modularity optimum") {
    const Graph g = random_partition({6, 6}, 0.8, 0.1, 42);
    CHECK(g.n_vertices() == 12);
    CHECK(g.is_connected());
    const auto best = best_partition_bruteforce(g);
    for (int i = 1; i < 6; ++i) CHECK(best.spins[i] == best.spins[0]);
    for (int i = 6; i < 12; ++i) CHECK(best.spins[i] == -best.spins[0]);
  }
  SUBCASE("deterministic given the seed") {
    CHECK(random_partition({5, 6}, 0.75, 0.1, 11) == random_partition({5, 6}, 0.75, 0.1, 11));
  }
  SUBCASE("argument checks") {
    CHECK_THROWS_AS(random_partition({5, 5}, 0.1, 0.5, 1), InvalidArgument);
    CHECK_THROWS_AS(random_partition({20, 20}, 0.5, 0.1, 1), CapacityError);
  }
}

TEST_CASE("laplacian spectra of small graphs") {
  const auto p2 = laplacian_eigen(oracle::path(2));
  CHECK(p2.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p2.eigenvalues(1) == doctest::Approx(2.0));

  const auto k3 = laplacian_eigen(oracle::complete(3));
  CHECK(std::abs(k3.eigenvalues(0)) < 1e-12);
  CHECK(k3.eigenvalues(1) == doctest::Approx(3.0));
  CHECK(k3.eigenvalues(2) == doctest::Approx(3.0));

  const auto cave = laplacian_eigen(connected_caveman(4, 4));
  CHECK(std::abs(cave.eigenvalues(0)) < 1e-9);
  const Eigen::VectorXd v0 = cave.eigenvectors.col(0);
  CHECK((v0.array() - 0.25).abs().maxCoeff() < 1e-9);
}

TEST_CASE("property: laplacian eigenpairs") {
  oracle::Gen gen(1);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = gen.connected_graph(gen.integer(2, 12), gen.real(0.0, 0.8));
    const auto s = laplacian_eigen(g);
    const Eigen::MatrixXd l = laplacian(g);
    const auto n = g.n_vertices();
    CHECK((l * s.eigenvectors - s.eigenvectors * s.eigenvalues.asDiagonal()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((s.eigenvectors.transpose() * s.eigenvectors - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <
          1e-9);
    CHECK(std::abs(s.eigenvalues(0)) < 1e-9);
    for (int i = 1; i < n; ++i) CHECK(s.eigenvalues(i) >= s.eigenvalues(i - 1));
    for (int i = 0; i < n; ++i) {
      const double peak = s.eigenvectors.col(i).cwiseAbs().maxCoeff();
      Eigen::Index first = 0;
      while (std::abs(s.eigenvectors(first, i)) < peak * (1.0 - 1e-9)) ++first;
      CHECK(s.eigenvectors(first, i) > 0.0);
    }
  }
}

TEST_CASE("spectral edge impact") {
  const Graph p3 = oracle::path(3);
  const double a = spectral_edge_impact(p3, {1, 0}).distance;
  const double b =
      (laplacian_eigen(p3).eigenvectors - laplacian_eigen(remove_edge(p3, {0, 1})).eigenvectors).norm();
  CHECK(a == b);
  CHECK(a >= 0.0);
  CHECK_THROWS_AS(spectral_edge_impact(p3, {0, 2}), NotFound);

  // Removing an edge and comparing the result to itself.
  const Graph cave = connected_caveman(3, 4);
  const Graph minus = remove_edge(cave, cave.edges()[3]);
  const auto s1 = laplacian_eigen(minus), s2 = laplacian_eigen(minus);
  CHECK((s1.eigenvectors - s2.eigenvectors).norm() == 0.0);

  // Repeated calls are bit-identical.
  for (const auto& e : cave.edges()) CHECK(spectral_edge_impact(cave, e).distance == spectral_edge_impact(cave, e).distance);
}

TEST_CASE("worst case edge is the exhaustive argmax") {
  CHECK_THROWS_AS(worst_case_edge(Graph(3, {})), EmptyGraphError);

  std::vector<Graph> graphs{oracle::path(3), oracle::complete(3), connected_caveman(4, 4), connected_caveman(3, 4)};
  oracle::Gen gen(5);
  for (int i = 0; i < 10; ++i) graphs.push_back(gen.connected_graph(gen.integer(3, 10), 0.4));
  for (const auto& g : graphs) {
    // Scan every edge independently: largest distance, first edge on ties.
    std::vector<double> dist;
    for (const auto& e : g.edges()) {
      const auto before = laplacian_eigen(g).eigenvectors;
      const auto after = laplacian_eigen(remove_edge(g, e)).eigenvectors;
      dist.push_back((before - after).norm());
    }
    const double top = *std::max_element(dist.begin(), dist.end());
    std::size_t arg = 0;
    while (dist[arg] < top * (1.0 - 1e-9)) ++arg;
    CHECK(worst_case_edge(g) == g.edges()[arg]);
  }
}

TEST_CASE("caveman 3x4 edge impacts rank consistently") {
  const Graph g = connected_caveman(3, 4);
  std::vector<std::pair<double, Edge>> ranked;
  for (const auto& e : g.edges()) ranked.push_back({spectral_edge_impact(g, e).distance, e});
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  CHECK(ranked.front().second == worst_case_edge(g));
  // The ring edges are the ones that join cliques.
  const std::set<Edge> ring{{0, 11}, {3, 4}, {7, 8}};
  int ring_seen = 0;
  for (const auto& [d, e] : ranked) {
    CHECK(d >= 0.0);
    ring_seen += ring.count(e);
  }
  CHECK(ring_seen == 3);
}

TEST_CASE("remove edge") {
  const Graph k3 = oracle::complete(3);
  const Graph p = remove_edge(k3, {0, 1});
  CHECK(p.n_edges() == 2);
  CHECK(p.n_vertices() == 3);
  CHECK(p.is_connected());
  CHECK_THROWS_AS(remove_edge(p, {0, 1}), NotFound);

  const Graph empty = remove_edge(oracle::path(2), {0, 1});
  CHECK(empty.n_edges() == 0);
  CHECK_THROWS_AS(modularity_matrix(empty), EmptyGraphError);
  CHECK_THROWS_AS(cost_diagonal(empty), EmptyGraphError);

  const Graph cave = connected_caveman(3, 4);
  CHECK(remove_edge(cave, worst_case_edge(cave)).n_edges() == 17);
}

TEST_CASE("edge list text") {
  const Graph p3 = read_edge_list("0 1\n1 2");
  CHECK(p3 == oracle::path(3));

  try {
    read_edge_list("# header\n0 1\n2 2\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(read_edge_list("0 1\n1 x\n"), ParseError);
  CHECK_THROWS_AS(read_edge_list("0 1\n0 1\n"), ParseError);
  CHECK_THROWS_AS(read_edge_list("0 1 2\n"), ParseError);

  const Graph isolated = read_edge_list("n 5\n0 1\n");
  CHECK(isolated.n_vertices() == 5);
  CHECK(write_edge_list(read_edge_list("2 1\n0 1\n")) == write_edge_list(read_edge_list("0 1\n1 2\n")));
}

TEST_CASE("property: edge list round trip") {
  oracle::Gen gen(9);
  for (int trial = 0; trial < 50; ++trial) {
    Graph g = gen.connected_graph(gen.integer(1, 20), gen.real(0.0, 1.0));
    if (gen.coin(0.3)) g = Graph(g.n_vertices() + gen.integer(1, 3), g.edges(), g.label());
    const Graph back = read_edge_list(write_edge_list(g));
    CHECK(back == g);
    CHECK(write_edge_list(back) == write_edge_list(g));
  }
}

TEST_CASE("suite fixtures match the generators") {
  const std::filesystem::path dir = QAOAMS_DATA_DIR "/suite";
  const auto graphs = benchmark_graphs();
  CHECK(graphs.size() == 6);
  for (const auto& s : graphs) {
    const Graph stored = load_edge_list((dir / (s.id + ".edges")).string());
    CHECK(stored == s.graph);
    CHECK(s.graph.is_connected());
    CHECK(s.graph.n_vertices() >= 10);
    CHECK(s.graph.n_vertices() <= 12);
  }
}
