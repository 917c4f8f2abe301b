"""Directed graphs with loose ends and their subgraph calculus.

Run with:  python3 demos/01_graphs_and_subgraphs.py
"""

from graphcat.digraph import (
    boundary,
    is_convex_open,
    open_subgraph,
    strict_iso,
    structured_subgraphs,
    subgraph_witness,
    substitute,
    to_dot,
    validate,
)
from graphcat.zoo import three_vertex_graph

# A graph is a set of edges plus vertices with ordered in/out lists.
# Edges can dangle: unattached ends form the graph's inputs and outputs.
g3 = three_vertex_graph()
print("the three-vertex graph:", g3)
print("valid:", validate(g3) is None)
print("boundary:", boundary(g3))

# The subgraph on {u, v} can be collapsed to a single vertex without
# creating a directed cycle; the one on {u, w} cannot, because the path
# through v would have to re-enter the collapsed vertex.
print("\nconvexity:")
for pair in (("u", "v"), ("u", "w"), ("v", "w")):
    sub = open_subgraph(g3, pair)
    print(f"  {pair}: convex = {is_convex_open(sub)}")

# All structured subgraphs: each edge, each vertex's corolla, the two
# convex two-vertex subgraphs, and the whole graph -- eleven in total.
subs = structured_subgraphs(g3)
print(f"\n{len(subs)} structured subgraphs:")
for sub in subs:
    print("  edges", sorted(sub.edge_names), "vertices", sorted(sub.vertex_names_set))

# Every structured subgraph is the inner part of a substitution: we can
# collapse it to a vertex and substitute it back.
sub = next(s for s in subs if s.vertex_names_set == {"u", "v"})
data = subgraph_witness(sub)
print("\ncollapsed outer graph:", data.outer)
print("substituting back recovers the graph:", strict_iso(substitute(data), g3))

print("\nGraphViz form:")
print(to_dot(g3))
