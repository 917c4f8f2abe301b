"""Level graphs: layered acyclic graphs and their category.

A level graph of height n has edge sets at levels 0..n and vertex sets
at layers (i, i+1); every level-i edge is the input of exactly one
layer-i vertex (for i < n) and the output of exactly one layer-(i-1)
vertex (for i > 0).  Extending a level graph to all index pairs (i, j)
by pushouts yields its components functor, whose elements are the level
subgraphs.

Morphisms consist of a monotone height map together with layerwise
injections into the target's components, subject to a monomorphism and
a pullback (cartesianness) condition.  Active maps fix boundaries and
are bijective on components; inert maps are interval inclusions.  The
two classes form an orthogonal factorization system.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .digraph import (
    Graph,
    OpenSubgraph,
    Vertex,
    betti_number,
    promote,
    validate as validate_graph,
)
from .errors import (
    ConnectivityError,
    GraphcatError,
    HeightError,
    Violation,
)
from . import graphical
from .pointed import pointed_map


@dataclass(frozen=True)
class LevelGraph:
    """Edge layers 0..n and vertex layers (i, i+1) with incidence data.

    ``vertex_layers[i]`` holds vertices whose inputs lie in
    ``edge_layers[i]`` and outputs in ``edge_layers[i+1]``.
    """

    edge_layers: tuple
    vertex_layers: tuple

    @property
    def height(self):
        return len(self.edge_layers) - 1

    @cached_property
    def vertex_names(self):
        return tuple(
            v.name for layer in self.vertex_layers for v in layer
        )

    def layer_vertex(self, i, name):
        for v in self.vertex_layers[i]:
            if v.name == name:
                return v
        raise KeyError(name)

    def __repr__(self):
        return (
            f"LevelGraph(height={self.height}, "
            f"edges={[list(l) for l in self.edge_layers]})"
        )


def level_graph(edge_layers, vertex_layers):
    """Build a LevelGraph from layer lists of edge ids and vertex triples."""
    els = tuple(tuple(layer) for layer in edge_layers)
    vls = []
    for layer in vertex_layers:
        out = []
        for item in layer:
            if isinstance(item, Vertex):
                out.append(item)
            else:
                name, ins, outs = item
                out.append(Vertex(str(name), tuple(ins), tuple(outs)))
        vls.append(tuple(out))
    return LevelGraph(els, tuple(vls))


def elementary_edge(name="e"):
    """The height-0 level graph with a single edge."""
    return LevelGraph(((name,),), ())


def elementary_corolla(p, q, name="v"):
    """The height-1 level graph with one vertex, p inputs and q outputs."""
    ins = tuple(f"i{k}" for k in range(1, p + 1))
    outs = tuple(f"o{k}" for k in range(1, q + 1))
    return LevelGraph((ins, outs), ((Vertex(name, ins, outs),),))


def linear_level_graph(n):
    """The height-n level graph with a single edge at every level."""
    edge_layers = tuple((f"e{i}",) for i in range(n + 1))
    vls = tuple(
        (Vertex(f"v{i}", (f"e{i-1}",), (f"e{i}",)),) for i in range(1, n + 1)
    )
    return LevelGraph(edge_layers, vls)


def validate_level(lg):
    """Check the level graph axioms; return a Violation or None."""
    n = lg.height
    if n < 0:
        return Violation("HeightError", "no edge layers")
    if len(lg.vertex_layers) != n:
        return Violation(
            "HeightError",
            f"{len(lg.vertex_layers)} vertex layers for height {n}",
        )
    all_names = [e for layer in lg.edge_layers for e in layer] + [
        v.name for layer in lg.vertex_layers for v in layer
    ]
    if len(set(all_names)) != len(all_names):
        return Violation("DuplicateName", "edge/vertex names are not distinct")
    for i, layer in enumerate(lg.vertex_layers):
        covered_in, covered_out = [], []
        for v in layer:
            for e in v.ins:
                if e not in lg.edge_layers[i]:
                    return Violation(
                        "UnknownEdge",
                        f"in({v.name}) uses {e} outside level {i}",
                        (i, v.name, e),
                    )
            for e in v.outs:
                if e not in lg.edge_layers[i + 1]:
                    return Violation(
                        "UnknownEdge",
                        f"out({v.name}) uses {e} outside level {i+1}",
                        (i, v.name, e),
                    )
            covered_in.extend(v.ins)
            covered_out.extend(v.outs)
        if sorted(covered_in) != sorted(lg.edge_layers[i]):
            return Violation(
                "PartitionViolation",
                f"inputs of layer {i} vertices do not partition level {i} edges",
                (i,),
            )
        if sorted(covered_out) != sorted(lg.edge_layers[i + 1]):
            return Violation(
                "PartitionViolation",
                f"outputs of layer {i} vertices do not partition level {i+1} edges",
                (i,),
            )
    return validate_graph(underlying_graph(lg))


def underlying_graph(lg):
    """Forget levels: the plain directed graph with the same incidences."""
    edges = tuple(e for layer in lg.edge_layers for e in layer)
    vs = tuple(v for layer in lg.vertex_layers for v in layer)
    return Graph(edges, vs)


# ---------------------------------------------------------------------------
# the components functor (pushout extension)


class SpecialFunctor:
    """All components F_{i,j} of a level graph.

    F_{i,j} is the quotient of the edges at levels i..j and the vertices
    at layers i..j-1 by incidence; its elements (the level subgraphs)
    are represented by their least atom.  Atoms are ("e", level, name)
    or ("v", layer, name) tuples.
    """

    def __init__(self, lg):
        self.lg = lg
        n = lg.height
        self._reps = {}
        for i in range(n + 1):
            for j in range(i, n + 1):
                self._reps[(i, j)] = self._component_reps(i, j)

    def _atoms(self, i, j):
        atoms = []
        for k in range(i, j + 1):
            atoms.extend(("e", k, e) for e in self.lg.edge_layers[k])
        for k in range(i, j):
            atoms.extend(("v", k, v.name) for v in self.lg.vertex_layers[k])
        return atoms

    def _component_reps(self, i, j):
        parent = {a: a for a in self._atoms(i, j)}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                if rb < ra:
                    ra, rb = rb, ra
                parent[rb] = ra

        for k in range(i, j):
            for v in self.lg.vertex_layers[k]:
                va = ("v", k, v.name)
                for e in v.ins:
                    union(va, ("e", k, e))
                for e in v.outs:
                    union(va, ("e", k + 1, e))
        return {a: find(a) for a in parent}

    def cls(self, pair, atom):
        """Representative of the class of ``atom`` in F at ``pair``."""
        return self._reps[pair][atom]

    def elements(self, pair):
        return tuple(sorted(set(self._reps[pair].values())))

    def members(self, pair, rep):
        return tuple(
            sorted(a for a, r in self._reps[pair].items() if r == rep)
        )

    def lift(self, small, big, rep):
        """Image of a class under F(small) -> F(big) for nested intervals."""
        return self._reps[big][rep]


@lru_cache(maxsize=None)
def special_extension(lg):
    return SpecialFunctor(lg)


def is_connected_level(lg):
    sf = special_extension(lg)
    return len(sf.elements((0, lg.height))) == 1


def level_subgraph(lg, pair, rep):
    """The connected level graph carried by a single component element."""
    sf = special_extension(lg)
    i, j = pair
    members = set(sf.members(pair, rep))
    edge_layers = tuple(
        tuple(e for e in lg.edge_layers[k] if ("e", k, e) in members)
        for k in range(i, j + 1)
    )
    vls = tuple(
        tuple(v for v in lg.vertex_layers[k] if ("v", k, v.name) in members)
        for k in range(i, j)
    )
    return LevelGraph(edge_layers, vls)


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class LevelMorphism:
    """A morphism of level graphs over a monotone map ``alpha``.

    ``eta_e[i]`` maps level-i edges to edges at level alpha[i] of the
    target; ``eta_v[i]`` maps layer-i vertices to component
    representatives of the target at (alpha[i], alpha[i+1]).
    """

    source: LevelGraph
    target: LevelGraph
    alpha: tuple
    eta_e: tuple
    eta_v: tuple

    @cached_property
    def edge_maps(self):
        return tuple(dict(layer) for layer in self.eta_e)

    @cached_property
    def vertex_maps(self):
        return tuple(dict(layer) for layer in self.eta_v)

    def sort_key(self):
        return (self.alpha, self.eta_e, self.eta_v)


def level_morphism(source, target, alpha, edge_maps, vertex_maps):
    return LevelMorphism(
        source,
        target,
        tuple(alpha),
        tuple(tuple(sorted(m.items())) for m in edge_maps),
        tuple(tuple(sorted(m.items())) for m in vertex_maps),
    )


def identity_level(lg):
    sf = special_extension(lg)
    edge_maps = [{e: e for e in layer} for layer in lg.edge_layers]
    vertex_maps = [
        {v.name: sf.cls((i, i + 1), ("v", i, v.name)) for v in layer}
        for i, layer in enumerate(lg.vertex_layers)
    ]
    return level_morphism(
        lg, lg, tuple(range(lg.height + 1)), edge_maps, vertex_maps
    )


def derived_class_map(f, pair):
    """The induced map on components at a source index pair.

    Returns a dict from source representatives at ``pair`` to target
    representatives at (alpha[i], alpha[j]), or raises GraphcatError if
    the layerwise data is not natural.
    """
    i, j = pair
    sf_s = special_extension(f.source)
    sf_t = special_extension(f.target)
    tpair = (f.alpha[i], f.alpha[j])
    emaps, vmaps = f.edge_maps, f.vertex_maps
    out = {}
    for atom in sf_s._atoms(i, j):
        kind, k, name = atom
        if kind == "e":
            timage = ("e", f.alpha[k], emaps[k][name])
        else:
            timage = vmaps[k][name]  # already a representative atom
        target_rep = sf_t.cls(tpair, timage)
        source_rep = sf_s.cls(pair, atom)
        if source_rep in out and out[source_rep] != target_rep:
            raise GraphcatError(
                f"map is not natural at {pair}: class {source_rep} has two images"
            )
        out[source_rep] = target_rep
    return out


def validate_level_morphism(f):
    """Check monotonicity, naturality, monomorphy, cartesianness."""
    G, H = f.source, f.target
    n, m = G.height, H.height
    if len(f.alpha) != n + 1 or any(
        f.alpha[i] > f.alpha[i + 1] for i in range(n)
    ) or f.alpha[0] < 0 or f.alpha[-1] > m:
        return Violation("AlphaError", f"alpha {f.alpha} is not monotone into [0,{m}]")
    sf_t = special_extension(H)
    emaps, vmaps = f.edge_maps, f.vertex_maps
    for i, layer in enumerate(G.edge_layers):
        if sorted(emaps[i]) != sorted(layer):
            return Violation("EdgeMapError", f"edge map at level {i} is not total", (i,))
        for e, y in emaps[i].items():
            if y not in H.edge_layers[f.alpha[i]]:
                return Violation(
                    "EdgeMapError", f"{e} maps outside level {f.alpha[i]}", (i, e)
                )
    for i, layer in enumerate(G.vertex_layers):
        tpair = (f.alpha[i], f.alpha[i + 1])
        elements = set(sf_t.elements(tpair))
        if sorted(vmaps[i]) != sorted(v.name for v in layer):
            return Violation("VertexMapError", f"vertex map at layer {i} is not total", (i,))
        for v in layer:
            c = vmaps[i][v.name]
            if c not in elements:
                return Violation(
                    "VertexMapError",
                    f"{v.name} maps to {c} which is not a component at {tpair}",
                    (i, v.name),
                )
            for e in v.ins:
                if sf_t.cls(tpair, ("e", f.alpha[i], emaps[i][e])) != c:
                    return Violation(
                        "Naturality",
                        f"in-edge {e} of {v.name} lands outside its component",
                        (i, v.name, e),
                    )
            for e in v.outs:
                if sf_t.cls(tpair, ("e", f.alpha[i + 1], emaps[i + 1][e])) != c:
                    return Violation(
                        "Naturality",
                        f"out-edge {e} of {v.name} lands outside its component",
                        (i, v.name, e),
                    )
    sf_s = special_extension(G)
    for i in range(n + 1):
        for j in range(i, n + 1):
            try:
                dmap = derived_class_map(f, (i, j))
            except GraphcatError as exc:
                return Violation("Naturality", str(exc), (i, j))
            images = list(dmap.values())
            if len(set(images)) != len(images):
                return Violation(
                    "MonoViolation",
                    f"component map at ({i},{j}) is not injective",
                    (i, j),
                )
    # cartesianness against the terminal pair; smaller squares follow by
    # pullback cancellation
    full = derived_class_map(f, (0, n))
    im_full = set(full.values())
    tfull = (f.alpha[0], f.alpha[n])
    for i in range(n + 1):
        for j in range(i, n + 1):
            dmap = derived_class_map(f, (i, j))
            im = set(dmap.values())
            tpair = (f.alpha[i], f.alpha[j])
            for y in sf_t.elements(tpair):
                if sf_t.lift(tpair, tfull, y) in im_full and y not in im:
                    return Violation(
                        "CartesianViolation",
                        f"component {y} at {tpair} misses the image",
                        (i, j, 0, n),
                    )
    return None


def compose_level(f, g):
    """The composite of f: G -> H followed by g: H -> K."""
    if f.target != g.source:
        raise GraphcatError("morphisms are not composable")
    alpha = tuple(g.alpha[a] for a in f.alpha)
    emaps = [
        {e: g.edge_maps[f.alpha[i]][y] for e, y in layer.items()}
        for i, layer in enumerate(f.edge_maps)
    ]
    vmaps = []
    for i, layer in enumerate(f.vertex_maps):
        pair = (f.alpha[i], f.alpha[i + 1])
        dmap = derived_class_map(g, pair)
        vmaps.append({v: dmap[c] for v, c in layer.items()})
    return level_morphism(f.source, g.target, alpha, emaps, vmaps)


# ---------------------------------------------------------------------------
# active / inert and factorization


def is_inert_L(f):
    """Interval inclusions: alpha(t) = c + t."""
    return all(
        f.alpha[i + 1] == f.alpha[i] + 1 for i in range(len(f.alpha) - 1)
    )


def is_active_L(f):
    """Boundary-preserving with bijective top component.

    Uses the criterion that only the (0, n) component map need be a
    bijection; cartesianness then forces all of them to be.
    """
    G, H = f.source, f.target
    if f.alpha[0] != 0 or f.alpha[-1] != H.height:
        return False
    dmap = derived_class_map(f, (0, G.height))
    target = special_extension(H).elements((0, H.height))
    return len(dmap) == len(target) and set(dmap.values()) == set(target)


def is_active_L_full(f):
    """The unabbreviated active condition: every component map bijective."""
    G, H = f.source, f.target
    if f.alpha[0] != 0 or f.alpha[-1] != H.height:
        return False
    sf_t = special_extension(H)
    n = G.height
    for i in range(n + 1):
        for j in range(i, n + 1):
            dmap = derived_class_map(f, (i, j))
            tgt = sf_t.elements((f.alpha[i], f.alpha[j]))
            if len(dmap) != len(tgt) or set(dmap.values()) != set(tgt):
                return False
    return True


def factorize_L(f):
    """Factor as an active map followed by an inert one.

    The middle object is carved out of the target: it spans the levels
    hit by alpha and keeps exactly the atoms lying over components in
    the image of the top component map.
    """
    G, H = f.source, f.target
    n = G.height
    t = f.alpha[0]
    p = f.alpha[-1] - t
    sf_t = special_extension(H)
    tfull = (t, t + p)
    full = derived_class_map(f, (0, n))
    im_full = set(full.values())

    def keep_edge(level, e):
        return sf_t.lift((level, level), tfull, ("e", level, e)) in im_full

    def keep_vertex(layer, name):
        return sf_t.lift((layer, layer + 1), tfull, ("v", layer, name)) in im_full

    edge_layers = tuple(
        tuple(e for e in H.edge_layers[t + i] if keep_edge(t + i, e))
        for i in range(p + 1)
    )
    vls = tuple(
        tuple(v for v in H.vertex_layers[t + i] if keep_vertex(t + i, v.name))
        for i in range(p)
    )
    middle = LevelGraph(edge_layers, vls)
    sf_m = special_extension(middle)

    gamma = tuple(a - t for a in f.alpha)
    act_emaps = [dict(layer) for layer in f.edge_maps]
    act_vmaps = []
    for i, layer in enumerate(f.vertex_maps):
        # the H-representative of a class need not survive into the middle
        # object's atom set, so recompute representatives there
        out = {}
        for v, c in layer.items():
            pair = (f.alpha[i], f.alpha[i + 1])
            member = next(
                a for a in sf_t.members(pair, c)
                if (a[0] == "e" and a[2] in middle.edge_layers[a[1] - t])
                or (a[0] == "v" and any(
                    w.name == a[2] for w in middle.vertex_layers[a[1] - t]))
            )
            out[v] = sf_m.cls((pair[0] - t, pair[1] - t),
                              (member[0], member[1] - t, member[2]))
        act_vmaps.append(out)
    active = level_morphism(G, middle, gamma, act_emaps, act_vmaps)

    beta = tuple(range(t, t + p + 1))
    in_emaps = [{e: e for e in layer} for layer in middle.edge_layers]
    in_vmaps = [
        {v.name: sf_t.cls((t + i, t + i + 1), ("v", t + i, v.name)) for v in layer}
        for i, layer in enumerate(middle.vertex_layers)
    ]
    inert = level_morphism(middle, H, beta, in_emaps, in_vmaps)
    return active, inert


# ---------------------------------------------------------------------------
# the vertex functor


def vertex_map_L(f):
    """The pointed map V(target) -> V(source) induced by a morphism.

    A target vertex goes to the source vertex whose component image
    contains it, and to the basepoint when no layer of the source maps
    over its layer or its component misses the image.
    """
    G, H = f.source, f.target
    sf_t = special_extension(H)
    n = G.height
    mapping = {}
    for k, layer in enumerate(H.vertex_layers):
        i = next(
            (i for i in range(n) if f.alpha[i] <= k and k + 1 <= f.alpha[i + 1]),
            None,
        )
        for w in layer:
            if i is None:
                mapping[w.name] = None
                continue
            tpair = (f.alpha[i], f.alpha[i + 1])
            c = sf_t.cls(tpair, ("v", k, w.name))
            hit = [v for v, cc in f.vertex_maps[i].items() if cc == c]
            mapping[w.name] = hit[0] if hit else None
    return pointed_map(H.vertex_names, G.vertex_names, mapping)


# ---------------------------------------------------------------------------
# membership predicates


def membership(lg):
    """Flags locating the level graph in the subcategory lattice."""
    g = underlying_graph(lg)
    connected = is_connected_level(lg)
    zero_type = betti_number(g) == 0 and (len(g.edges) + len(g.vertices)) > 0
    vertices = [v for layer in lg.vertex_layers for v in layer]
    out = all(len(v.outs) >= 1 for v in vertices)
    inp = all(len(v.ins) >= 1 for v in vertices)
    forest = all(len(v.outs) == 1 for v in vertices)
    tree = forest and len(lg.edge_layers[-1]) == 1
    linear = all(len(layer) == 1 for layer in lg.edge_layers)
    return {
        "connected": connected,
        "simply_connected": connected and zero_type,
        "zero_type": zero_type,
        "out": out,
        "input": inp,
        "forest": forest,
        "tree": tree,
        "linear": linear,
    }


# ---------------------------------------------------------------------------
# reindexing, degeneracy insertions, segmentation


def cartesian_reindex(lg, alpha):
    """Restrict along a monotone map: the cartesian lift over ``alpha``.

    Builds the level graph with layers F_{alpha(i), alpha(j)} and the
    projection morphism to ``lg``.  When alpha repeats a level, the
    corresponding vertex layer consists of the level's edges, seen as
    unary vertices.
    """
    sf = special_extension(lg)
    m = len(alpha) - 1

    def edge_copy(i, e):
        return f"L{i}_{e}"

    edge_layers = tuple(
        tuple(edge_copy(i, e) for e in lg.edge_layers[alpha[i]])
        for i in range(m + 1)
    )
    vls = []
    vertex_maps = []
    for i in range(m):
        pair = (alpha[i], alpha[i + 1])
        layer = []
        vmap = {}
        for rep in sf.elements(pair):
            name = f"L{i}.{rep[0]}{rep[1]}.{rep[2]}"
            ins = tuple(
                edge_copy(i, e)
                for e in lg.edge_layers[alpha[i]]
                if sf.cls(pair, ("e", alpha[i], e)) == rep
            )
            outs = tuple(
                edge_copy(i + 1, e)
                for e in lg.edge_layers[alpha[i + 1]]
                if sf.cls(pair, ("e", alpha[i + 1], e)) == rep
            )
            layer.append(Vertex(name, ins, outs))
            vmap[name] = rep
        vls.append(tuple(layer))
        vertex_maps.append(vmap)
    reindexed = LevelGraph(edge_layers, tuple(vls))
    edge_maps = [
        {edge_copy(i, e): e for e in lg.edge_layers[alpha[i]]}
        for i in range(m + 1)
    ]
    proj = level_morphism(reindexed, lg, alpha, edge_maps, vertex_maps)
    return reindexed, proj


def plus_minus(i1):
    """Insert a layer of unary vertices above, resp. below, a height-1 graph.

    These are the restrictions along the two surjections [2] -> [1]; the
    projection morphisms collapse the inserted layer again.
    """
    if i1.height != 1:
        raise HeightError(f"expected height 1, got {i1.height}")
    plus, _ = cartesian_reindex(i1, (0, 0, 1))
    minus, _ = cartesian_reindex(i1, (0, 1, 1))
    return plus, minus


def segmentation_pieces(lg):
    """Height-1 slices and their height-0 interfaces, with inclusions.

    Returns (pieces, interfaces): ``pieces[i]`` is the restriction to
    layers (i, i+1) with its inert inclusion, ``interfaces`` the
    interior level restrictions.  A height-0 graph is its own single
    piece.
    """
    n = lg.height
    sf = special_extension(lg)
    if n == 0:
        return [(lg, identity_level(lg))], []
    pieces = []
    for i in range(n):
        piece = LevelGraph(
            (lg.edge_layers[i], lg.edge_layers[i + 1]),
            (lg.vertex_layers[i],),
        )
        emaps = [
            {e: e for e in lg.edge_layers[i]},
            {e: e for e in lg.edge_layers[i + 1]},
        ]
        vmaps = [
            {v.name: sf.cls((i, i + 1), ("v", i, v.name))
             for v in lg.vertex_layers[i]}
        ]
        pieces.append(
            (piece, level_morphism(piece, lg, (i, i + 1), emaps, vmaps))
        )
    interfaces = []
    for i in range(1, n):
        interface = LevelGraph((lg.edge_layers[i],), ())
        emaps = [{e: e for e in lg.edge_layers[i]}]
        interfaces.append(
            (interface, level_morphism(interface, lg, (i,), emaps, []))
        )
    return pieces, interfaces


# ---------------------------------------------------------------------------
# from connected level graphs to graphical maps


def tau(f):
    """Forget levels: the graphical map underlying a morphism of
    connected level graphs.

    Edges map by the levelwise edge maps; a vertex goes to the
    structured subgraph carried by its component image.
    """
    G, H = f.source, f.target
    if not is_connected_level(G) or not is_connected_level(H):
        raise ConnectivityError("tau is defined on connected level graphs")
    tgt = underlying_graph(H)
    sf_t = special_extension(H)
    f0 = {}
    for i, layer in enumerate(f.edge_maps):
        f0.update(layer)
    f1v = {}
    for i, layer in enumerate(f.vertex_maps):
        tpair = (f.alpha[i], f.alpha[i + 1])
        for vname, rep in layer.items():
            members = sf_t.members(tpair, rep)
            edges = frozenset(a[2] for a in members if a[0] == "e")
            vnames = frozenset(a[2] for a in members if a[0] == "v")
            sub = OpenSubgraph(tgt, edges, vnames)
            promoted = promote(sub)
            if promoted is None:
                raise GraphcatError(
                    f"component image of {vname} is not a structured subgraph"
                )
            f1v[vname] = promoted
    return graphical.graphical_morphism(underlying_graph(G), tgt, f0, f1v)


# ---------------------------------------------------------------------------
# hom enumeration


def _monotone_maps(n, m):
    """All monotone functions [n] -> [m] as (n+1)-tuples."""
    return [
        tuple(c)
        for c in itertools.combinations_with_replacement(range(m + 1), n + 1)
    ]


def hom_level(G, H):
    """All morphisms G -> H, enumerated by backtracking.

    Vertices are assigned component images first, then edges are filled
    in compatibly; the full validator prunes anything that slips
    through.
    """
    sf_t = special_extension(H)
    results = []
    n = G.height
    for alpha in _monotone_maps(n, H.height):
        vertex_slots = [
            (i, v) for i, layer in enumerate(G.vertex_layers) for v in layer
        ]
        edge_slots = [
            (i, e) for i, layer in enumerate(G.edge_layers) for e in layer
        ]

        def assign_edges(idx, emaps, vmaps):
            if idx == len(edge_slots):
                cand = level_morphism(G, H, alpha, emaps, vmaps)
                if validate_level_morphism(cand) is None:
                    results.append(cand)
                return
            i, e = edge_slots[idx]
            used = set(emaps[i].values())
            for y in H.edge_layers[alpha[i]]:
                if y in used:
                    continue
                ok = True
                if i < n:
                    v = next(v for v in G.vertex_layers[i] if e in v.ins)
                    pair = (alpha[i], alpha[i + 1])
                    if sf_t.cls(pair, ("e", alpha[i], y)) != vmaps[i][v.name]:
                        ok = False
                if ok and i > 0:
                    w = next(
                        (w for w in G.vertex_layers[i - 1] if e in w.outs), None
                    )
                    if w is not None:
                        pair = (alpha[i - 1], alpha[i])
                        if sf_t.cls(pair, ("e", alpha[i], y)) != vmaps[i - 1][w.name]:
                            ok = False
                if ok:
                    emaps[i][e] = y
                    assign_edges(idx + 1, emaps, vmaps)
                    del emaps[i][e]

        def assign_vertices(idx, vmaps):
            if idx == len(vertex_slots):
                assign_edges(0, [dict() for _ in range(n + 1)], vmaps)
                return
            i, v = vertex_slots[idx]
            pair = (alpha[i], alpha[i + 1])
            used = set(vmaps[i].values())
            for rep in sf_t.elements(pair):
                if rep in used:
                    continue
                vmaps[i][v.name] = rep
                assign_vertices(idx + 1, vmaps)
                del vmaps[i][v.name]

        assign_vertices(0, [dict() for _ in range(max(n, 0))])
    results.sort(key=lambda f: f.sort_key())
    return tuple(results)


# ---------------------------------------------------------------------------
# recovering a level structure


def level_structure(g, height=None):
    """Find level assignments for a plain graph, or None.

    Vertex levels are forced along shared edges; components containing
    a graph input are anchored at the bottom, components containing a
    graph output are anchored at the top, and closed components float
    as low as possible.  Returns None when the constraints conflict.
    """
    from .digraph import connected_components

    comps = connected_components(g)
    solved = []
    for comp, _ in comps:
        if not comp.vertices:
            # a loose edge forces height zero
            solved.append(("loose", comp, {}))
            continue
        rel = {comp.vertices[0].name: 0}
        queue = [comp.vertices[0].name]
        while queue:
            name = queue.pop()
            v = comp.vertex(name)
            for e in v.outs:
                w = comp.in_vertex.get(e)
                if w is None:
                    continue
                expected = rel[name] + 1
                if w in rel:
                    if rel[w] != expected:
                        return None
                else:
                    rel[w] = expected
                    queue.append(w)
            for e in v.ins:
                w = comp.out_vertex.get(e)
                if w is None:
                    continue
                expected = rel[name] - 1
                if w in rel:
                    if rel[w] != expected:
                        return None
                else:
                    rel[w] = expected
                    queue.append(w)
        lo = min(rel.values())
        rel = {k: val - lo + 1 for k, val in rel.items()}
        span = max(rel.values())
        has_input = any(e in comp.inputs and comp.in_vertex.get(e) for e in comp.edges)
        has_output = any(e in comp.outputs and comp.out_vertex.get(e) for e in comp.edges)
        # graph inputs force their consumer to level 1 (already normalized);
        # graph outputs force their producer to the top level
        if has_input:
            if any(
                rel[comp.in_vertex[e]] != 1
                for e in comp.inputs
                if comp.in_vertex.get(e)
            ):
                return None
        solved.append(("anchored" if has_input else "floating", comp, rel, span, has_output))

    if any(tag == "loose" for tag, *_ in solved):
        if any(tag != "loose" for tag, *_ in solved):
            return None
        n = 0 if height is None else height
        if n != 0:
            return None
        edges = [e for _, comp, _ in solved for e in comp.edges]
        return LevelGraph((tuple(edges),), ())

    spans = [item[3] for item in solved]
    outputs_at = []
    for tag, comp, rel, span, has_output in solved:
        if has_output:
            if tag == "anchored":
                outputs_at.append(span)
    n = height
    if n is None:
        candidates = [s for s in spans]
        n = max(outputs_at) if outputs_at else max(candidates)
        n = max(n, max(spans))
    levels = {}
    for tag, comp, rel, span, has_output in solved:
        offset = 0
        if tag == "anchored":
            if has_output and span != n:
                return None
        else:
            if has_output:
                offset = n - span
        for name, lvl in rel.items():
            lvl = lvl + offset
            if lvl < 1 or lvl > n:
                return None
            levels[name] = lvl
        for e in comp.edges:
            v_in = comp.in_vertex.get(e)
            v_out = comp.out_vertex.get(e)
            if v_in is None and v_out is not None and levels[v_out] != n:
                return None  # graph output not at the top
            if v_out is None and v_in is not None and levels[v_in] != 1:
                return None  # graph input not at the bottom

    edge_layers = [[] for _ in range(n + 1)]
    vertex_layers = [[] for _ in range(n)]
    for e in g.edges:
        if g.out_vertex.get(e) is not None:
            edge_layers[levels[g.out_vertex[e]]].append(e)
        else:
            edge_layers[levels[g.in_vertex[e]] - 1].append(e)
    for v in g.vertices:
        vertex_layers[levels[v.name] - 1].append(v)
    lg = LevelGraph(
        tuple(tuple(l) for l in edge_layers),
        tuple(tuple(l) for l in vertex_layers),
    )
    if validate_level(lg) is not None:
        return None
    return lg


# ---------------------------------------------------------------------------
# serialization


def level_to_json(lg):
    return {
        "height": lg.height,
        "edge_layers": [list(layer) for layer in lg.edge_layers],
        "vertex_layers": [
            [{"name": v.name, "in": list(v.ins), "out": list(v.outs)}
             for v in layer]
            for layer in lg.vertex_layers
        ],
    }


def level_from_json(data):
    return level_graph(
        [[str(e) for e in layer] for layer in data["edge_layers"]],
        [
            [(v["name"], [str(e) for e in v["in"]], [str(e) for e in v["out"]])
             for v in layer]
            for layer in data["vertex_layers"]
        ],
    )


def load_level(path):
    with open(path) as fh:
        return level_from_json(json.load(fh))


def morphism_to_json(f):
    return {
        "alpha": list(f.alpha),
        "source": level_to_json(f.source),
        "target": level_to_json(f.target),
        "edge_maps": [dict(layer) for layer in f.eta_e],
        "vertex_maps": [
            {v: list(rep) for v, rep in layer} for layer in f.eta_v
        ],
    }


def morphism_from_json(data):
    return level_morphism(
        level_from_json(data["source"]),
        level_from_json(data["target"]),
        tuple(data["alpha"]),
        [dict(m) for m in data["edge_maps"]],
        [
            {v: (rep[0], int(rep[1]), str(rep[2])) for v, rep in m.items()}
            for m in data["vertex_maps"]
        ],
    )
