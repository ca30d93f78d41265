# Temporal weighted multidigraph core
from .degree import DegreeHistogram, degree_histogram, graph_summary
from .subgraph import StaticDigraph, SubgraphResult, collapse_to_static, k_order_subgraph
from .twmdg import TemporalEdge, Twmdg, build_graph, successive_edges

__all__ = [
    "TemporalEdge",
    "Twmdg",
    "build_graph",
    "successive_edges",
    "StaticDigraph",
    "SubgraphResult",
    "collapse_to_static",
    "k_order_subgraph",
    "DegreeHistogram",
    "degree_histogram",
    "graph_summary",
]
