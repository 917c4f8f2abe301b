"""Level graphs: layered acyclic graphs, their components, and morphisms.

Run with:  python3 demos/02_level_graphs.py
"""

from graphcat.level import (
    elementary_corolla,
    factorize_L,
    hom_level,
    is_active_L,
    is_inert_L,
    level_graph,
    level_structure,
    linear_level_graph,
    membership,
    plus_minus,
    special_extension,
    underlying_graph,
    vertex_map_L,
)
from graphcat.zoo import three_vertex_graph

# A height-2 level graph: one splitter above two parallel vertices.
branching = level_graph(
    [["a"], ["b", "c"], ["d", "e"]],
    [
        [("u", ["a"], ["b", "c"])],
        [("v", ["b"], ["d"]), ("w", ["c"], ["e"])],
    ],
)
print("branching level graph:", branching)
print("membership flags:", membership(branching))

# The components functor assigns to each index pair the connected
# pieces of the corresponding slice; the graph is connected exactly
# when the widest component set is a singleton.
sf = special_extension(branching)
for pair in [(0, 0), (1, 1), (1, 2), (0, 2)]:
    print(f"components at {pair}:", len(sf.elements(pair)))

# Not every acyclic graph is layered: the three-vertex example has
# paths of different lengths between the same vertices.
print("\nlevel structure of the three-vertex graph:",
      level_structure(three_vertex_graph()))

# Morphisms factor as an active (boundary-preserving, component-
# bijective) map followed by an inert (interval) inclusion.
src = linear_level_graph(1)
for f in hom_level(src, branching):
    act, ine = factorize_L(f)
    print("\nmorphism over alpha =", f.alpha)
    print("  active part is active:", is_active_L(act))
    print("  inert part is inert:", is_inert_L(ine))
    vm = vertex_map_L(f)
    print("  vertex map:", dict(vm.pairs))

# Inserting a layer of unary vertices above or below a height-1 graph:
c = elementary_corolla(2, 3)
plus, minus = plus_minus(c)
print("\ncorolla with unary layer above:",
      [len(layer) for layer in plus.vertex_layers], "vertices per layer")
print("corolla with unary layer below:",
      [len(layer) for layer in minus.vertex_layers], "vertices per layer")
print("underlying graph of the corolla:", underlying_graph(c))
