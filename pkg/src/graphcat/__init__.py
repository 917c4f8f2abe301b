"""Graph categories for properads: directed graphs with loose ends,
level graphs, graphical maps, properad operads, and Segal presheaves."""

from .digraph import (
    Graph,
    Vertex,
    OpenSubgraph,
    StructuredSubgraph,
    SubstitutionData,
    boundary,
    canonical_form,
    connected_components,
    corolla,
    edge_graph,
    graph,
    is_convex_open,
    linear_graph,
    multi_substitute,
    open_subgraph,
    strict_iso,
    structured_subgraphs,
    substitute,
    substitution_data,
    tilde_union,
    validate,
)
from .errors import GraphcatError, Violation

__all__ = [
    "Graph",
    "Vertex",
    "OpenSubgraph",
    "StructuredSubgraph",
    "SubstitutionData",
    "GraphcatError",
    "Violation",
    "boundary",
    "canonical_form",
    "connected_components",
    "corolla",
    "edge_graph",
    "graph",
    "is_convex_open",
    "linear_graph",
    "multi_substitute",
    "open_subgraph",
    "strict_iso",
    "structured_subgraphs",
    "substitute",
    "substitution_data",
    "tilde_union",
    "validate",
]

__version__ = "0.1.0"
