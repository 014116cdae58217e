"""Community search with outliers on undirected graphs."""
from .algorithms import (
    check_feasible,
    peel_max_min_deg_diam,
    peel_max_min_deg_dist,
    peel_min_diam,
    prune_by_distance,
    solve,
    solve_max_min_deg_diam,
    solve_max_min_deg_dist,
    solve_min_diam,
)
from .graph import (
    INFINITE,
    Graph,
    GraphParseError,
    bfs_distances,
    connected_components,
    diameter_exact,
    induced_subgraph,
    load_edge_list,
    min_degree,
    multi_source_distances,
)
from .oracle import OracleRefused, OracleResult, oracle_solve
from .problem import Candidate, PeelTrace, ProblemSpec, QuerySet, Removal, Solution, Variant

__version__ = "0.1.0"

__all__ = [
    "INFINITE", "Candidate", "Graph", "GraphParseError", "OracleRefused", "OracleResult", "PeelTrace",
    "ProblemSpec", "QuerySet", "Removal", "Solution", "Variant", "bfs_distances", "check_feasible",
    "connected_components", "diameter_exact", "induced_subgraph", "load_edge_list", "min_degree",
    "multi_source_distances", "oracle_solve", "peel_max_min_deg_diam", "peel_max_min_deg_dist",
    "peel_min_diam", "prune_by_distance", "solve", "solve_max_min_deg_diam", "solve_max_min_deg_dist",
    "solve_min_diam",
]
