"""Exact parallel k-clique counting over bit-encoded induced sub-graphs.

Two complementary engines share one task pipeline: a rank-ascending
traversal of the oriented graph, and a pivoting traversal that collapses
clique-dense regions into binomial contributions. Work is split per vertex
or per oriented edge and distributed to a fixed worker pool through an
atomic task cursor; every count is accumulated in 128 bits and checked.
"""

from ._bitops import value128
from .bitgraph import (
    BitGraph,
    extract_edge_induced,
    extract_vertex_induced,
    popcount,
    row_and,
)
from .cli import auto_select, main
from .engine_orient import NodeCounter, count_tcliques_orient
from .engine_pivot import (
    BinomialTable,
    binomial,
    count_tcliques_pivot,
    count_tcliques_pivot_all_t,
    find_pivot,
)
from .graph import EdgeList, Graph, ParseError, from_edges, load_edge_list, read_graph
from .oracle import brute_force_count, naive_recursive_count, triangle_count
from .orientation import CRITERIA, OrientedGraph, Ranking, compute_rank, orient
from .scheduler import (
    CountReport,
    LoadStats,
    RunConfig,
    WorkerScratch,
    load_stats,
    make_tasks,
    run_count,
)

__version__ = "0.1.0"

__all__ = [
    "BinomialTable",
    "BitGraph",
    "CRITERIA",
    "CountReport",
    "EdgeList",
    "Graph",
    "LoadStats",
    "NodeCounter",
    "OrientedGraph",
    "ParseError",
    "Ranking",
    "RunConfig",
    "WorkerScratch",
    "auto_select",
    "binomial",
    "brute_force_count",
    "compute_rank",
    "count_tcliques_orient",
    "count_tcliques_pivot",
    "count_tcliques_pivot_all_t",
    "extract_edge_induced",
    "extract_vertex_induced",
    "find_pivot",
    "from_edges",
    "load_edge_list",
    "load_stats",
    "main",
    "make_tasks",
    "naive_recursive_count",
    "orient",
    "popcount",
    "read_graph",
    "row_and",
    "run_count",
    "triangle_count",
    "value128",
    "__version__",
]
