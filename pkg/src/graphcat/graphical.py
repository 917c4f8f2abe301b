"""The category of connected acyclic graphs and graphical maps.

A morphism sends edges to edges and vertices to structured subgraphs so
that boundaries match, and the assembled substitution of all the image
subgraphs embeds into the target with convex open image.  Morphisms are
determined by their edge map.  Active maps cover the whole target;
inert maps are the structured subgraph inclusions.  These classes form
an orthogonal factorization system whose middle object is the
substitution of the image subgraphs into the source.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from . import digraph
from .digraph import (
    Graph,
    StructuredSubgraph,
    edge_subgraph,
    is_connected,
    is_convex_open,
    multi_substitute,
    open_union,
    promote,
    structured_subgraphs,
    vertex_corolla,
    whole_subgraph,
)
from .errors import GraphcatError, SizeLimit, Violation
from .pointed import pointed_map


@dataclass(frozen=True)
class GraphicalMorphism:
    """A graphical map, stored as the edge map plus per-vertex subgraphs."""

    source: Graph
    target: Graph
    f0_pairs: tuple
    f1v_pairs: tuple

    @cached_property
    def f0(self):
        return dict(self.f0_pairs)

    @cached_property
    def f1v(self):
        return {
            v: StructuredSubgraph(self.target, frozenset(edges), frozenset(vs))
            for v, (edges, vs) in self.f1v_pairs
        }

    def sort_key(self):
        return self.f0_pairs

    def __repr__(self):
        return f"GraphicalMorphism({dict(self.f0_pairs)})"


def graphical_morphism(source, target, f0, f1v):
    """Build a morphism from an edge map and vertex-to-subgraph map."""
    pairs = []
    for v, sub in f1v.items():
        if isinstance(sub, StructuredSubgraph):
            pairs.append((v, sub.key()))
        else:
            pairs.append((v, (tuple(sorted(sub[0])), tuple(sorted(sub[1])))))
    return GraphicalMorphism(
        source, target, tuple(sorted(f0.items())), tuple(sorted(pairs))
    )


def identity_graphical(g):
    return graphical_morphism(
        g, g, {e: e for e in g.edges},
        {v: vertex_corolla(g, v) for v in g.vertex_names},
    )


def _multiset(items):
    return tuple(sorted(items))


def assembly(f):
    """Substitute every image subgraph into the source and map the
    result into the target.

    Returns (assembled graph, correspondence, edge map to target,
    vertex map to target).  The boundary bijections are induced by the
    edge map, so this is the induced etale comparison with the target.
    """
    assignment = {}
    for v in f.source.vertex_names:
        h = f.f1v[v]
        vert = f.source.vertex(v)
        bij_in = {e: f.f0[e] for e in vert.ins}
        bij_out = {e: f.f0[e] for e in vert.outs}
        assignment[v] = (h.as_graph, bij_in, bij_out)
    assembled, corr = multi_substitute(f.source, assignment)
    edge_to_target = {}
    for e in f.source.edges:
        res = corr.outer_edge[e]
        prev = edge_to_target.setdefault(res, f.f0[e])
        if prev != f.f0[e]:
            raise GraphcatError("inconsistent edge images in assembly")
    for (v, inner_e), res in corr.inner_edge.items():
        # internal edges of an image subgraph are already target edges
        prev = edge_to_target.setdefault(res, inner_e)
        if prev != inner_e:
            raise GraphcatError("inconsistent edge images in assembly")
    vertex_to_target = {
        res: inner_v for (v, inner_v), res in corr.inner_vertex.items()
    }
    return assembled, corr, edge_to_target, vertex_to_target


def validate_graphical(f):
    """Check boundary compatibility and the convex open image condition."""
    G, K = f.source, f.target
    if not is_connected(G) or not is_connected(K):
        return Violation("ConnectivityError", "source and target must be connected")
    if sorted(f.f0) != sorted(G.edges):
        return Violation("EdgeMapError", "edge map is not total")
    for e, y in f.f0.items():
        if y not in K.edge_set:
            return Violation("EdgeMapError", f"{e} maps to unknown edge {y}", (e,))
    for v in G.vertex_names:
        if v not in f.f1v:
            return Violation("VertexMapError", f"no image subgraph for {v}", (v,))
        h = f.f1v[v]
        sub = h.as_open
        if not sub.is_open() or not is_convex_open(sub):
            return Violation(
                "NotConvexOpenImage", f"image of {v} is not structured", (v,)
            )
        vert = G.vertex(v)
        if _multiset(f.f0[e] for e in vert.ins) != _multiset(h.inputs):
            return Violation(
                "BoundaryMismatch", f"inputs of {v} do not match its image", (v,)
            )
        if _multiset(f.f0[e] for e in vert.outs) != _multiset(h.outputs):
            return Violation(
                "BoundaryMismatch", f"outputs of {v} do not match its image", (v,)
            )
    try:
        assembled, corr, e_map, v_map = assembly(f)
    except GraphcatError as exc:
        return Violation("NotConvexOpenImage", str(exc))
    if len(set(v_map.values())) != len(v_map):
        return Violation(
            "NotConvexOpenImage", "image subgraphs share vertices"
        )
    if len(set(e_map.values())) != len(e_map):
        return Violation(
            "NotConvexOpenImage", "assembled edge comparison is not injective"
        )
    image = digraph.OpenSubgraph(
        K, frozenset(e_map.values()), frozenset(v_map.values())
    )
    if not image.is_open() or not is_convex_open(image):
        return Violation(
            "NotConvexOpenImage", "total image is not a structured subgraph"
        )
    return None


def check_graphical(f):
    report = validate_graphical(f)
    if report is not None:
        raise GraphcatError(str(report))
    return f


def f1_on_subgraph(f, j):
    """The derived action on structured subgraphs.

    A single edge goes to the edge subgraph on its image; otherwise the
    image is the union of the per-vertex subgraphs.
    """
    if j.is_edge():
        (e,) = j.edge_names
        return edge_subgraph(f.target, f.f0[e])
    current = None
    for v in sorted(j.vertex_names_set):
        sub = f.f1v[v].as_open
        current = sub if current is None else open_union(current, sub)
    out = promote(current)
    if out is None:
        raise GraphcatError("image of a structured subgraph is not structured")
    return out


def compose_graphical(g, f):
    """The composite of g: H -> G followed by f: G -> K."""
    if g.target != f.source:
        raise GraphcatError("morphisms are not composable")
    f0 = {e: f.f0[y] for e, y in g.f0.items()}
    f1v = {w: f1_on_subgraph(f, g.f1v[w]) for w in g.source.vertex_names}
    return graphical_morphism(g.source, f.target, f0, f1v)


# ---------------------------------------------------------------------------
# active / inert and factorization


def boundary_bijective(f):
    """Does the edge map restrict to bijections on inputs and outputs?"""
    G, K = f.source, f.target
    ins = [f.f0[e] for e in G.inputs]
    outs = [f.f0[e] for e in G.outputs]
    return (
        len(set(ins)) == len(ins)
        and len(set(outs)) == len(outs)
        and set(ins) == set(K.inputs)
        and set(outs) == set(K.outputs)
    )


def is_active_G(f):
    """The total image is the whole target."""
    whole = f1_on_subgraph(f, whole_subgraph(f.source))
    return (
        whole.edge_names == f.target.edge_set
        and whole.vertex_names_set == frozenset(f.target.vertex_names)
    )


def is_inert_G(f):
    """Isomorphic to a structured subgraph inclusion: edge-injective
    with every vertex landing on a corolla."""
    if len(set(f.f0.values())) != len(f.f0):
        return False
    return all(f.f1v[v].is_corolla() for v in f.source.vertex_names)


def factorize_G(f):
    """Factor as an active map onto the assembled middle object followed
    by an inert inclusion into the target."""
    assembled, corr, e_map, v_map = assembly(f)
    G, K = f.source, f.target
    active_f0 = {e: corr.outer_edge[e] for e in G.edges}
    active_f1v = {}
    for v in G.vertex_names:
        h = f.f1v[v]
        edges = frozenset(
            corr.inner_edge[(v, e)] for e in h.as_graph.edges
        )
        vs = frozenset(
            corr.inner_vertex[(v, w)] for w in h.as_graph.vertex_names
        )
        active_f1v[v] = StructuredSubgraph(assembled, edges, vs)
    active = graphical_morphism(G, assembled, active_f0, active_f1v)
    inert_f0 = dict(e_map)
    inert_f1v = {
        res: vertex_corolla(K, kv) for res, kv in v_map.items()
    }
    inert = graphical_morphism(assembled, K, inert_f0, inert_f1v)
    return active, inert


def vertex_map_G(f):
    """The pointed map V(target) -> V(source): a target vertex goes to
    the unique source vertex whose image subgraph contains it."""
    mapping = {}
    for x in f.target.vertex_names:
        hits = [
            v for v in f.source.vertex_names
            if x in f.f1v[v].vertex_names_set
        ]
        mapping[x] = hits[0] if hits else None
    return pointed_map(f.target.vertex_names, f.source.vertex_names, mapping)


# ---------------------------------------------------------------------------
# hom enumeration


def hom_set(G, K, max_vertices=10):
    """All graphical maps G -> K by backtracking over vertex images.

    Candidates are pruned by boundary arity before the per-vertex
    boundary bijections are enumerated; every completed edge map is run
    through the validator.
    """
    if len(G.vertices) > max_vertices or len(K.vertices) > max_vertices:
        raise SizeLimit("hom enumeration bound exceeded")
    if not G.vertices:
        out = [
            graphical_morphism(G, K, {G.edges[0]: y}, {}) for y in K.edges
        ]
        return tuple(m for m in out if validate_graphical(m) is None)
    by_arity = {}
    for sub in structured_subgraphs(K):
        by_arity.setdefault(
            (len(sub.inputs), len(sub.outputs)), []
        ).append(sub)
    results = []
    vnames = G.vertex_names

    def backtrack(idx, f0, f1v):
        if idx == len(vnames):
            cand = graphical_morphism(G, K, f0, f1v)
            if validate_graphical(cand) is None:
                results.append(cand)
            return
        v = vnames[idx]
        vert = G.vertex(v)
        for sub in by_arity.get(vert.biarity(), ()):
            ins, outs = sub.inputs, sub.outputs
            for in_perm in itertools.permutations(ins):
                conflict = False
                for e, y in zip(vert.ins, in_perm):
                    if f0.get(e, y) != y:
                        conflict = True
                        break
                if conflict:
                    continue
                for out_perm in itertools.permutations(outs):
                    trial = dict(f0)
                    ok = True
                    for e, y in zip(vert.ins, in_perm):
                        trial[e] = y
                    for e, y in zip(vert.outs, out_perm):
                        if trial.get(e, y) != y:
                            ok = False
                            break
                        trial[e] = y
                    if not ok:
                        continue
                    f1v[v] = sub
                    backtrack(idx + 1, trial, f1v)
                    del f1v[v]

    backtrack(0, {}, {})
    results.sort(key=lambda m: m.sort_key())
    return tuple(results)


def iso_set(G, K):
    """All isomorphisms G -> K in the graphical category."""
    if len(G.edges) != len(K.edges) or len(G.vertices) != len(K.vertices):
        return ()
    return tuple(
        m for m in hom_set(G, K)
        if is_active_G(m) and is_inert_G(m)
    )


# ---------------------------------------------------------------------------
# membership predicates


def membership_G(g):
    """Flags locating a connected graph in the subcategory lattice."""
    sc = digraph.is_simply_connected(g)
    out = all(len(v.outs) >= 1 for v in g.vertices)
    omega = sc and all(len(v.outs) == 1 for v in g.vertices)
    linear = sc and all(v.biarity() == (1, 1) for v in g.vertices)
    return {"out": out, "sc": sc, "omega": omega, "linear": linear}


# ---------------------------------------------------------------------------
# serialization


def morphism_to_json(f):
    return {
        "f0": dict(f.f0_pairs),
        "f1": {
            v: {"edges": list(edges), "vertices": list(vs)}
            for v, (edges, vs) in f.f1v_pairs
        },
    }


def morphism_from_json(source, target, data):
    f0 = {str(k): str(v) for k, v in data["f0"].items()}
    f1v = {
        str(v): (tuple(val["edges"]), tuple(val["vertices"]))
        for v, val in data["f1"].items()
    }
    return graphical_morphism(source, target, f0, f1v)
