"""Round-and-bipartize for weighted vertex cover, with exact ratio certificates."""

from .bounds import CaseTag, RatioReport, analyze, compute_alpha, theoretical_bound
from .graph import Graph, contract, cycle_graph, is_bipartite, odd_girth, shortest_odd_cycle
from .relax import DualSolution, normalize, recover_dual, solve_lp

__all__ = [
    "CaseTag",
    "DualSolution",
    "Graph",
    "RatioReport",
    "analyze",
    "compute_alpha",
    "contract",
    "cycle_graph",
    "is_bipartite",
    "normalize",
    "odd_girth",
    "recover_dual",
    "shortest_odd_cycle",
    "solve_lp",
    "theoretical_bound",
]
