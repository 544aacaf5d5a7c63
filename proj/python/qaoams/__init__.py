"""QAOA modularity clustering: exact simulation and derivative-free optimization."""

from ._core import (
    CapacityError,
    DimensionMismatch,
    EmptyGraphError,
    Error,
    GenerationFailed,
    Graph,
    InvalidArgument,
    NotFound,
    ParseError,
    approximation_ratio,
    benchmark_graphs,
    best_partition_bruteforce,
    connected_caveman,
    cost_diagonal,
    landscape,
    laplacian_eigen,
    minimize,
    modularity,
    modularity_matrix,
    objective,
    optimize,
    qaoa_state,
    quantile,
    random_partition,
    read_edge_list,
    remove_edge,
    solved_after,
    spectral_edge_impact,
    valid_method_names,
    worst_case_edge,
    write_edge_list,
)

__version__ = "0.1.0"
