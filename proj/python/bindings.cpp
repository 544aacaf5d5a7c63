#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qaoams/bench.hpp"
#include "qaoams/error.hpp"
#include "qaoams/graph.hpp"
#include "qaoams/hamiltonian.hpp"
#include "qaoams/method.hpp"
#include "qaoams/simulator.hpp"

namespace py = pybind11;
using namespace qaoams;

namespace {

std::vector<std::pair<int, int>> edge_pairs(const Graph& g) {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges, std::string label) {
  std::vector<Edge> es;
  for (const auto& [u, v] : edges) es.push_back(make_edge(u, v));
  return Graph(n, std::move(es), std::move(label));
}

py::dict outcome_dict(const MethodOutcome& r, const std::string& method) {
  py::dict d;
  d["method"] = method;
  d["points"] = r.history.points();
  d["values"] = r.history.values();
  d["run_id"] = r.run_id;
  d["runs"] = r.runs;
  d["status"] = std::string(to_string(r.status));
  d["best_point"] = r.history.best_point();
  d["best_value"] = r.history.best_value();
  std::vector<std::pair<Point, double>> optima;
  for (const auto& o : r.local_optima) optima.emplace_back(o.point, o.value);
  d["local_optima"] = optima;
  return d;
}

py::dict optimize(const Graph& g, int p, const std::string& method, std::size_t budget, std::uint64_t seed,
                  int shots, double ftol, double xtol, std::size_t sample_batch, std::size_t max_active_runs, double sigma,
                  const std::vector<Point>& initial_points) {
  const MethodSpec spec = parse_method(method);
  const CostDiagonal diag = cost_diagonal(g);
  MethodSettings settings;
  settings.local_stop = StopRule{ftol, xtol, budget};
  settings.budget = budget;
  settings.seed = seed;
  settings.sample_batch = sample_batch;
  settings.max_active_runs = max_active_runs;
  settings.sigma = sigma;
  settings.initial_points = initial_points;
  const ObjectiveFn f = make_objective(diag, p, shots, seed);
  MethodOutcome r;
  {
    py::gil_scoped_release release;
    r = run_method(spec, f, Bounds::qaoa(p), settings);
  }
  return outcome_dict(r, spec.name());
}

py::dict minimize(const std::function<double(const std::vector<double>&)>& py_f, const std::vector<double>& lower, const std::vector<double>& upper,
                  const std::string& method, std::size_t budget, std::uint64_t seed, double ftol, double xtol,
                  std::size_t sample_batch, std::size_t max_active_runs, double sigma, const std::vector<Point>& initial_points) {
  const MethodSpec spec = parse_method(method);
  MethodSettings settings;
  settings.local_stop = StopRule{ftol, xtol, budget};
  settings.budget = budget;
  settings.seed = seed;
  settings.sample_batch = sample_batch;
  settings.max_active_runs = max_active_runs;
  settings.sigma = sigma;
  settings.initial_points = initial_points;
  const ObjectiveFn f = [&](std::span<const double> x) { return py_f(std::vector<double>(x.begin(), x.end())); };
  return outcome_dict(run_method(spec, f, Bounds(lower, upper), settings), spec.name());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "QAOA modularity clustering core";

  // Translators run newest first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", PyExc_ValueError);
  py::register_exception<NotFound>(m, "NotFound", PyExc_LookupError);
  py::register_exception<EmptyGraphError>(m, "EmptyGraphError", PyExc_ValueError);
  py::register_exception<GenerationFailed>(m, "GenerationFailed", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n_vertices"), py::arg("edges"), py::arg("label") = "")
      .def_property_readonly("n_vertices", &Graph::n_vertices)
      .def_property_readonly("n_edges", &Graph::n_edges)
      .def_property_readonly("edges", &edge_pairs)
      .def_property_readonly("label", &Graph::label)
      .def("degrees", &Graph::degrees)
      .def("adjacency", &Graph::adjacency)
      .def("is_connected", &Graph::is_connected)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.n_vertices()) + " m=" + std::to_string(g.n_edges()) + ">";
      });

  m.def("connected_caveman", [](int k, int s) { return connected_caveman(k, s); }, py::arg("num_cliques"),
        py::arg("clique_size"));
  m.def("random_partition",
        [](const std::vector<int>& sizes, double p_in, double p_out, std::uint64_t seed) {
          return random_partition(sizes, p_in, p_out, seed);
        },
        py::arg("sizes"), py::arg("p_in"), py::arg("p_out"), py::arg("seed"));
  m.def("remove_edge", [](const Graph& g, int u, int v) { return remove_edge(g, make_edge(u, v)); });
  m.def("laplacian_eigen", [](const Graph& g) {
    auto s = laplacian_eigen(g);
    return py::make_tuple(s.eigenvalues, s.eigenvectors);
  });
  m.def("spectral_edge_impact",
        [](const Graph& g, int u, int v) { return spectral_edge_impact(g, make_edge(u, v)).distance; });
  m.def("worst_case_edge", [](const Graph& g) {
    const Edge e = worst_case_edge(g);
    return std::make_pair(e.u, e.v);
  });
  m.def("read_edge_list", [](const std::string& text) { return read_edge_list(text); });
  m.def("write_edge_list", &write_edge_list);
  m.def("benchmark_graphs", [] {
    std::vector<std::pair<std::string, Graph>> out;
    for (auto& s : benchmark_graphs()) out.emplace_back(s.id, s.graph);
    return out;
  });

  m.def("modularity", [](const Graph& g, const std::vector<int>& spins) { return modularity(g, spins); });
  m.def("modularity_matrix", [](const Graph& g) { return modularity_matrix(g).b; });
  m.def("cost_diagonal", [](const Graph& g) { return cost_diagonal(g).energies(); });
  m.def("best_partition_bruteforce", [](const Graph& g) {
    const auto b = best_partition_bruteforce(g);
    return py::make_tuple(b.spins, b.basis_state, b.modularity);
  });

  m.def("qaoa_state", [](const Graph& g, const std::vector<double>& beta, const std::vector<double>& gamma) {
    return qaoa_state(cost_diagonal(g), QaoaParams{beta, gamma});
  });
  m.def("objective",
        [](const Graph& g, const std::vector<double>& beta, const std::vector<double>& gamma, int shots,
           std::uint64_t seed) {
          const CostDiagonal diag = cost_diagonal(g);
          const QaoaParams params{beta, gamma};
          return shots > 0 ? sampled_objective(diag, params, shots, seed).f : objective(diag, params).f;
        },
        py::arg("graph"), py::arg("beta"), py::arg("gamma"), py::arg("shots") = 0, py::arg("seed") = 0);
  m.def("landscape", [](const Graph& g, int beta_points, int gamma_points) {
    const auto grid = landscape_grid(cost_diagonal(g), beta_points, gamma_points);
    return py::make_tuple(grid.beta_points, grid.gamma_points, grid.f);
  });

  m.def("valid_method_names", &valid_method_names);
  m.def("optimize", &optimize, py::arg("graph"), py::arg("p") = 1, py::arg("method") = "model-tr",
        py::arg("budget") = 1000, py::arg("seed") = 0, py::arg("shots") = 0, py::arg("ftol") = 1e-3,
        py::arg("xtol") = 1e-2, py::arg("sample_batch") = 16, py::arg("max_active_runs") = 1, py::arg("sigma") = 2.0,
        py::arg("initial_points") = std::vector<Point>{});
  m.def("minimize", &minimize, py::arg("f"), py::arg("lower"), py::arg("upper"), py::arg("method") = "model-tr",
        py::arg("budget") = 1000, py::arg("seed") = 0, py::arg("ftol") = 1e-3, py::arg("xtol") = 1e-2,
        py::arg("sample_batch") = 16, py::arg("max_active_runs") = 1, py::arg("sigma") = 2.0, py::arg("initial_points") = std::vector<Point>{});

  m.def("solved_after",
        [](const std::vector<double>& values, double x0_value, double best_known, double tau) {
          return solved_after(values, x0_value, best_known, tau);
        },
        py::arg("values"), py::arg("x0_value"), py::arg("best_known"), py::arg("tau") = 0.01);
  m.def("approximation_ratio", &approximation_ratio);
  m.def("quantile", &quantile);
}
