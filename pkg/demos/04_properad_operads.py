"""Indexed ordered graphs, the operad they form, and free properads.

Run with:  python3 demos/04_properad_operads.py
"""

from graphcat.digraph import linear_graph
from graphcat.properad import (
    cartesian_lift_active,
    free_properad,
    identity_operation,
    prpd_compose,
    sigma_action,
    stabilizer,
    suboperad_member,
    theta,
    theta_object,
    zgraph_of_graph,
    OperadArrow,
)
from graphcat.zoo import closed_square_graph, two_component_graph

# Operations are connected acyclic graphs with total orderings and an
# indexing of the vertices; composition is graph substitution.
chain = zgraph_of_graph(linear_graph(2))
units = {z: identity_operation(1, 1) for z in range(chain.size)}
print("composing with identities is the identity:",
      prpd_compose(chain, units) == chain)

# The closed square with interleaved orderings is fixed by the double
# transposition: the governing operad has non-free symmetries.
x = zgraph_of_graph(closed_square_graph())
print("\nstabilizer of the closed square:", stabilizer(x))
print("swapping one pair moves it:", sigma_action(x, (1, 0, 2, 3)) != x)
print("suboperad flags:", suboperad_member(x))

# The free properad on a graph: elements are connected graphs with
# edges colored by the generating edges and vertices labeled by the
# generating vertices.  For the two-component generator the nonempty
# profiles fall into eight families.
P = free_properad(two_component_graph(), vertex_bound=4)
profiles = sorted(P.nonempty_profiles(min_vertices=1))
print(f"\n{len(profiles)} nonempty profiles at vertex bound 4:")
for ins, outs in profiles:
    print("  ", list(ins), "->", list(outs))

# A graphical map induces an operad morphism between vertex profiles;
# active operad morphisms lift back uniquely.
g = linear_graph(2)
inner = zgraph_of_graph(linear_graph(2))
arrow = OperadArrow(
    ((1, 1), (1, 1), (1, 1)),
    theta_object(g),
    (0, 0, 1),
    (inner, identity_operation(1, 1)),
)
lift = cartesian_lift_active(g, arrow)
print("\ncartesian lift target has", len(lift.target.vertices), "vertices")
print("round trip through theta:", theta(lift) == arrow)
