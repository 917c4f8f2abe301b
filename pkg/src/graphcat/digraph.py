"""Finite directed acyclic graphs with loose ends.

A graph is a finite set of edges together with vertices carrying ordered
lists of input and output edges.  Edges need not be attached to a vertex
on either side; the unattached sides form the inputs and outputs of the
graph itself.  No edge may be the input (or output) of two different
vertices, and the vertex-level relation "some output of v is an input of
w" must be acyclic.

This module provides the subgraph calculus (open subgraphs, convexity,
structured subgraphs, the partial join), graph substitution, and a
canonical form deciding strict isomorphism of ordered graphs.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    ConnectivityError,
    GraphcatError,
    OpennessViolation,
    ProfileMismatch,
    SizeLimit,
    Violation,
)


@dataclass(frozen=True)
class Vertex:
    """A vertex with ordered input and output edge lists."""

    name: str
    ins: tuple
    outs: tuple

    def biarity(self):
        return (len(self.ins), len(self.outs))


@dataclass(frozen=True)
class Graph:
    """An ordered directed graph with loose ends.

    ``edges`` fixes a reference order on edge identifiers; each vertex
    carries its own in/out orderings.  Values are immutable; all
    operations in this module are pure.
    """

    edges: tuple
    vertices: tuple

    @cached_property
    def edge_set(self):
        return frozenset(self.edges)

    @cached_property
    def vertex_names(self):
        return tuple(v.name for v in self.vertices)

    @cached_property
    def vertex_by_name(self):
        return {v.name: v for v in self.vertices}

    @cached_property
    def in_vertex(self):
        """edge -> name of the vertex having it as an input, if any."""
        table = {}
        for v in self.vertices:
            for e in v.ins:
                table[e] = v.name
        return table

    @cached_property
    def out_vertex(self):
        """edge -> name of the vertex having it as an output, if any."""
        table = {}
        for v in self.vertices:
            for e in v.outs:
                table[e] = v.name
        return table

    @cached_property
    def inputs(self):
        """Edges that are not the output of any vertex."""
        return tuple(e for e in self.edges if e not in self.out_vertex)

    @cached_property
    def outputs(self):
        """Edges that are not the input of any vertex."""
        return tuple(e for e in self.edges if e not in self.in_vertex)

    def vertex(self, name):
        return self.vertex_by_name[name]

    def __repr__(self):
        vs = ", ".join(
            f"{v.name}:{list(v.ins)}->{list(v.outs)}" for v in self.vertices
        )
        return f"Graph(edges={list(self.edges)}, vertices=[{vs}])"


def graph(edges, vertices):
    """Build a Graph from edge ids and (name, ins, outs) triples."""
    vs = []
    for item in vertices:
        if isinstance(item, Vertex):
            vs.append(item)
        else:
            name, ins, outs = item
            vs.append(Vertex(str(name), tuple(ins), tuple(outs)))
    return Graph(tuple(edges), tuple(vs))


def edge_graph(name="e"):
    """The graph with a single loose edge and no vertices."""
    return Graph((name,), ())


def corolla(m, n, name="v", prefix=""):
    """The one-vertex graph with m inputs and n outputs."""
    ins = tuple(f"{prefix}i{k}" for k in range(1, m + 1))
    outs = tuple(f"{prefix}o{k}" for k in range(1, n + 1))
    return Graph(ins + outs, (Vertex(name, ins, outs),))


def linear_graph(k):
    """A chain of k vertices, each with one input and one output."""
    edges = tuple(f"e{i}" for i in range(k + 1))
    vs = tuple(
        Vertex(f"v{i}", (f"e{i-1}",), (f"e{i}",)) for i in range(1, k + 1)
    )
    return Graph(edges, vs)


# ---------------------------------------------------------------------------
# validation


def validate(g):
    """Check the graph invariants; return a Violation or None.

    The first violated invariant is reported: unknown or duplicated
    identifiers, an edge used twice as input or twice as output
    (MonoViolation), or a directed cycle among vertices (CycleViolation).
    """
    if len(set(g.edges)) != len(g.edges):
        return Violation("DuplicateEdge", "edge list contains duplicates")
    names = [v.name for v in g.vertices]
    if len(set(names)) != len(names):
        return Violation("DuplicateVertex", "vertex names are not distinct")
    seen_in, seen_out = {}, {}
    for v in g.vertices:
        for side, listed in (("in", v.ins), ("out", v.outs)):
            if len(set(listed)) != len(listed):
                return Violation(
                    "DuplicateEdge",
                    f"duplicate edge in {side}({v.name})",
                    (v.name,),
                )
            for e in listed:
                if e not in g.edge_set:
                    return Violation(
                        "UnknownEdge", f"{e} in {side}({v.name})", (v.name, e)
                    )
        for e in v.ins:
            if e in seen_in:
                return Violation(
                    "MonoViolation",
                    f"edge {e} is an input of both {seen_in[e]} and {v.name}",
                    (e,),
                )
            seen_in[e] = v.name
        for e in v.outs:
            if e in seen_out:
                return Violation(
                    "MonoViolation",
                    f"edge {e} is an output of both {seen_out[e]} and {v.name}",
                    (e,),
                )
            seen_out[e] = v.name
    cycle = _find_cycle(g)
    if cycle is not None:
        return Violation(
            "CycleViolation", f"directed cycle through {cycle}", tuple(cycle)
        )
    return None


def check(g):
    """Raise GraphcatError if ``g`` is not a valid graph."""
    report = validate(g)
    if report is not None:
        raise GraphcatError(str(report))
    return g


def _successors(g, vname):
    found = []
    for e in g.vertex(vname).outs:
        w = g.in_vertex.get(e)
        if w is not None:
            found.append(w)
    return found


def _find_cycle(g):
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {v.name: WHITE for v in g.vertices}
    for start in g.vertex_names:
        if color[start] != WHITE:
            continue
        stack = [(start, iter(_successors(g, start)))]
        color[start] = GRAY
        trail = [start]
        while stack:
            node, it = stack[-1]
            advanced = False
            for w in it:
                if color[w] == GRAY:
                    return trail[trail.index(w):] if w in trail else [w]
                if color[w] == WHITE:
                    color[w] = GRAY
                    trail.append(w)
                    stack.append((w, iter(_successors(g, w))))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                trail.pop()
                stack.pop()
    return None


def boundary(g):
    """Input and output edges of the graph, in edge-list order."""
    return g.inputs, g.outputs


def topological_vertices(g):
    """Vertex names in an order compatible with the direction of edges."""
    indeg = {v.name: 0 for v in g.vertices}
    for v in g.vertices:
        for e in v.ins:
            if e in g.out_vertex:
                indeg[v.name] += 1
    ready = [v.name for v in g.vertices if indeg[v.name] == 0]
    order = []
    while ready:
        name = ready.pop(0)
        order.append(name)
        for w in _successors(g, name):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    if len(order) != len(g.vertices):
        raise GraphcatError("graph has a directed cycle")
    return order


# ---------------------------------------------------------------------------
# connectivity


def _incidence_neighbours(g):
    """Undirected adjacency on the disjoint union of edges and vertices."""
    adj = {("e", e): [] for e in g.edges}
    for v in g.vertices:
        node = ("v", v.name)
        adj[node] = []
        for e in itertools.chain(v.ins, v.outs):
            adj[node].append(("e", e))
            adj[("e", e)].append(node)
    return adj


def _component_atoms(g):
    adj = _incidence_neighbours(g)
    seen = set()
    comps = []
    for atom in adj:
        if atom in seen:
            continue
        comp = set()
        stack = [atom]
        seen.add(atom)
        while stack:
            a = stack.pop()
            comp.add(a)
            for b in adj[a]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        comps.append(comp)
    return comps


def is_connected(g):
    if not g.edges and not g.vertices:
        return False
    return len(_component_atoms(g)) == 1


def connected_components(g):
    """Split into components; returns (component, embedding) pairs.

    The embedding maps component edge/vertex names to the parent's (the
    identity on names, recorded for uniformity).
    """
    out = []
    for comp in _component_atoms(g):
        edges = tuple(e for e in g.edges if ("e", e) in comp)
        vs = tuple(v for v in g.vertices if ("v", v.name) in comp)
        emb = {e: e for e in edges}
        emb.update({v.name: v.name for v in vs})
        out.append((Graph(edges, vs), emb))
    return out


def betti_number(g):
    """First Betti number of the underlying undirected incidence structure."""
    incidences = sum(len(v.ins) + len(v.outs) for v in g.vertices)
    atoms = len(g.edges) + len(g.vertices)
    return incidences - atoms + len(_component_atoms(g)) if atoms else 0


def is_simply_connected(g):
    return is_connected(g) and betti_number(g) == 0


# ---------------------------------------------------------------------------
# subgraphs


@dataclass(frozen=True)
class OpenSubgraph:
    """A subset of edges and vertices inheriting full incidence.

    Openness: every edge incident to a member vertex is itself a member.
    """

    parent: Graph
    edge_names: frozenset
    vertex_names_set: frozenset

    def is_open(self):
        for name in self.vertex_names_set:
            v = self.parent.vertex(name)
            for e in itertools.chain(v.ins, v.outs):
                if e not in self.edge_names:
                    return False
        return self.edge_names <= self.parent.edge_set

    @cached_property
    def as_graph(self):
        """The subgraph as a Graph, inheriting the parent's orderings."""
        edges = tuple(e for e in self.parent.edges if e in self.edge_names)
        vs = tuple(
            v for v in self.parent.vertices if v.name in self.vertex_names_set
        )
        return Graph(edges, vs)

    def key(self):
        return (tuple(sorted(self.edge_names)), tuple(sorted(self.vertex_names_set)))


def open_subgraph(parent, vertices=(), extra_edges=()):
    """The open subgraph spanned by ``vertices`` plus any extra loose edges."""
    vset = frozenset(vertices)
    eset = set(extra_edges)
    for name in vset:
        v = parent.vertex(name)
        eset.update(v.ins)
        eset.update(v.outs)
    return OpenSubgraph(parent, frozenset(eset), vset)


def open_intersection(h1, h2):
    if h1.parent is not h2.parent and h1.parent != h2.parent:
        raise GraphcatError("subgraphs of different parents")
    return OpenSubgraph(
        h1.parent,
        h1.edge_names & h2.edge_names,
        h1.vertex_names_set & h2.vertex_names_set,
    )


def open_union(h1, h2):
    if h1.parent is not h2.parent and h1.parent != h2.parent:
        raise GraphcatError("subgraphs of different parents")
    return OpenSubgraph(
        h1.parent,
        h1.edge_names | h2.edge_names,
        h1.vertex_names_set | h2.vertex_names_set,
    )


def is_convex_open(sub):
    """Is the open subgraph connected and closed under directed paths?

    Convexity is decided by search: starting from each member vertex,
    follow directed paths through non-member vertices only; if such a
    path re-enters the subgraph, a directed path of the parent starts
    and ends inside the subgraph while leaving it, so it is not convex.
    """
    if not sub.is_open():
        raise OpennessViolation(
            "subset is not open: missing edges incident to member vertices"
        )
    if not is_connected(sub.as_graph):
        return False
    parent = sub.parent
    outside_reachable = set()
    frontier = []
    for name in sub.vertex_names_set:
        for w in _successors(parent, name):
            if w not in sub.vertex_names_set and w not in outside_reachable:
                outside_reachable.add(w)
                frontier.append(w)
    while frontier:
        u = frontier.pop()
        for w in _successors(parent, u):
            if w in sub.vertex_names_set:
                return False
            if w not in outside_reachable:
                outside_reachable.add(w)
                frontier.append(w)
    return True


@dataclass(frozen=True)
class StructuredSubgraph:
    """A connected, convex open subgraph of a connected acyclic graph.

    Exactly these subgraphs arise from collapsing a vertex via graph
    substitution, so each admits substitution data exhibiting the parent
    as a substitution into a smaller graph (see ``subgraph_witness``).
    """

    parent: Graph
    edge_names: frozenset
    vertex_names_set: frozenset

    @cached_property
    def as_open(self):
        return OpenSubgraph(self.parent, self.edge_names, self.vertex_names_set)

    @cached_property
    def as_graph(self):
        return self.as_open.as_graph

    @cached_property
    def inputs(self):
        return self.as_graph.inputs

    @cached_property
    def outputs(self):
        return self.as_graph.outputs

    def is_edge(self):
        return not self.vertex_names_set

    def is_corolla(self):
        return len(self.vertex_names_set) == 1

    def key(self):
        return (tuple(sorted(self.edge_names)), tuple(sorted(self.vertex_names_set)))

    def __le__(self, other):
        return (
            self.edge_names <= other.edge_names
            and self.vertex_names_set <= other.vertex_names_set
        )


def promote(sub):
    """Promote an open subgraph to a StructuredSubgraph, or return None."""
    if not is_convex_open(sub):
        return None
    return StructuredSubgraph(sub.parent, sub.edge_names, sub.vertex_names_set)


def edge_subgraph(parent, e):
    return StructuredSubgraph(parent, frozenset((e,)), frozenset())


def vertex_corolla(parent, name):
    v = parent.vertex(name)
    return StructuredSubgraph(
        parent, frozenset(itertools.chain(v.ins, v.outs)), frozenset((name,))
    )


def whole_subgraph(parent):
    return StructuredSubgraph(
        parent, parent.edge_set, frozenset(parent.vertex_names)
    )


def structured_subgraphs(g, max_vertices=16):
    """All structured subgraphs of a connected graph, in a stable order.

    Single edges come first (in edge order), then vertex-spanned
    subgraphs by size and name.  Every subgraph with at least one vertex
    is spanned by its vertex set, so enumeration ranges over connected,
    convex vertex subsets.
    """
    if not is_connected(g):
        raise ConnectivityError("structured subgraphs require a connected parent")
    if len(g.vertices) > max_vertices:
        raise SizeLimit(f"too many vertices ({len(g.vertices)} > {max_vertices})")
    found = [edge_subgraph(g, e) for e in g.edges]
    names = g.vertex_names
    spanned = []
    for r in range(1, len(names) + 1):
        for combo in itertools.combinations(names, r):
            sub = open_subgraph(g, combo)
            if is_convex_open(sub):
                spanned.append(StructuredSubgraph(g, sub.edge_names, sub.vertex_names_set))
    spanned.sort(key=lambda s: (len(s.vertex_names_set), sorted(s.vertex_names_set)))
    return tuple(found + spanned)


def tilde_union(h1, h2):
    """Join of structured subgraphs when the plain union is structured.

    Returns None when the union is not connected-convex ("does not
    exist"); when it exists it is the least upper bound under inclusion.
    """
    union = open_union(h1.as_open, h2.as_open)
    return promote(union)


# ---------------------------------------------------------------------------
# substitution


@dataclass(frozen=True)
class SubstitutionData:
    """Data for substituting ``inner`` at ``vertex`` of ``outer``.

    ``bij_in`` maps in(vertex) bijectively onto the inputs of ``inner``,
    and ``bij_out`` maps out(vertex) onto its outputs.
    """

    outer: Graph
    inner: Graph
    vertex: str
    bij_in: tuple
    bij_out: tuple

    def in_map(self):
        return dict(self.bij_in)

    def out_map(self):
        return dict(self.bij_out)


def substitution_data(outer, inner, vertex, bij_in=None, bij_out=None):
    """Build SubstitutionData; default bijections pair edges by position."""
    v = outer.vertex(vertex)
    if bij_in is None:
        bij_in = tuple(zip(v.ins, inner.inputs))
    else:
        bij_in = tuple(sorted(bij_in.items()) if isinstance(bij_in, dict) else bij_in)
    if bij_out is None:
        bij_out = tuple(zip(v.outs, inner.outputs))
    else:
        bij_out = tuple(sorted(bij_out.items()) if isinstance(bij_out, dict) else bij_out)
    return SubstitutionData(outer, inner, vertex, bij_in, bij_out)


class Correspondence:
    """Tracks where edges and vertices land after substitution.

    ``outer_edge`` maps edges of the outer graph to result edges,
    ``inner_edge`` maps (vertex, inner edge) pairs, and ``inner_vertex``
    maps (vertex, inner vertex) pairs to result vertex names.
    """

    def __init__(self, outer_edge, inner_edge, inner_vertex, outer_vertex):
        self.outer_edge = outer_edge
        self.inner_edge = inner_edge
        self.inner_vertex = inner_vertex
        self.outer_vertex = outer_vertex


def _check_substitution(data):
    v = data.outer.vertex(data.vertex)
    inner = data.inner
    in_map, out_map = data.in_map(), data.out_map()
    if sorted(in_map) != sorted(v.ins) or sorted(in_map.values()) != sorted(inner.inputs):
        raise ProfileMismatch(
            f"in({data.vertex}) does not match the inputs of the inner graph"
        )
    if sorted(out_map) != sorted(v.outs) or sorted(out_map.values()) != sorted(inner.outputs):
        raise ProfileMismatch(
            f"out({data.vertex}) does not match the outputs of the inner graph"
        )
    if not is_connected(inner):
        raise ConnectivityError("inner graph must be connected")


def _fresh(name, used):
    while name in used:
        name = name + "'"
    return name


def substitute(data):
    """Replace a vertex by a graph with matching boundary.

    Internal edges and vertices of the inner graph are renamed
    ``<vertex>.<name>``; boundary edges keep the outer identifiers.
    When the inner graph is a single edge, the input and output edge of
    the removed vertex merge and the merged edge keeps the outer
    *input*-side identifier.
    """
    g, corr = substitute_with_correspondence(data)
    return g


def substitute_with_correspondence(data):
    _check_substitution(data)
    outer, inner, vname = data.outer, data.inner, data.vertex
    in_map, out_map = data.in_map(), data.out_map()

    if not inner.vertices:
        # single loose edge: delete the vertex and merge its two edges
        e_in = next(iter(in_map))
        e_out = next(iter(out_map))
        edges = tuple(e for e in outer.edges if e != e_out)
        vs = []
        for w in outer.vertices:
            if w.name == vname:
                continue
            ins = tuple(e_in if e == e_out else e for e in w.ins)
            outs = tuple(e_in if e == e_out else e for e in w.outs)
            vs.append(Vertex(w.name, ins, outs))
        result = Graph(edges, tuple(vs))
        outer_edge = {e: (e_in if e == e_out else e) for e in outer.edges}
        inner_edge = {(vname, inner.edges[0]): e_in}
        outer_vertex = {w.name: w.name for w in vs}
        return result, Correspondence(outer_edge, inner_edge, {}, outer_vertex)

    used = set(outer.edges) | set(outer.vertex_names)
    rename_e, rename_v = {}, {}
    inv_in = {ie: oe for oe, ie in in_map.items()}
    inv_out = {ie: oe for oe, ie in out_map.items()}
    for e in inner.edges:
        if e in inv_in:
            rename_e[e] = inv_in[e]
        elif e in inv_out:
            rename_e[e] = inv_out[e]
        else:
            fresh = _fresh(f"{vname}.{e}", used)
            used.add(fresh)
            rename_e[e] = fresh
    for w in inner.vertices:
        fresh = _fresh(f"{vname}.{w.name}", used)
        used.add(fresh)
        rename_v[w.name] = fresh

    edges = tuple(outer.edges) + tuple(
        rename_e[e] for e in inner.edges if e not in inv_in and e not in inv_out
    )
    vs = []
    for w in outer.vertices:
        if w.name == vname:
            for u in inner.vertices:
                vs.append(
                    Vertex(
                        rename_v[u.name],
                        tuple(rename_e[e] for e in u.ins),
                        tuple(rename_e[e] for e in u.outs),
                    )
                )
        else:
            vs.append(w)
    result = Graph(edges, tuple(vs))
    corr = Correspondence(
        {e: e for e in outer.edges},
        {(vname, e): rename_e[e] for e in inner.edges},
        {(vname, w.name): rename_v[w.name] for w in inner.vertices},
        {w.name: w.name for w in outer.vertices if w.name != vname},
    )
    return result, corr


def multi_substitute(outer, assignment):
    """Substitute a graph for every vertex in the assignment.

    ``assignment`` maps vertex names to either a Graph (boundaries are
    then paired by position) or SubstitutionData-like triples
    ``(graph, bij_in, bij_out)``.  Substitutions are applied in the
    outer graph's vertex order; the result does not depend on that
    order up to strict isomorphism, and the returned correspondence
    composes the individual ones.
    """
    current = outer
    outer_edge = {e: e for e in outer.edges}
    inner_edge = {}
    inner_vertex = {}
    outer_vertex = {v.name: v.name for v in outer.vertices if v.name not in assignment}
    for vname in outer.vertex_names:
        if vname not in assignment:
            continue
        spec = assignment[vname]
        if isinstance(spec, Graph):
            data = substitution_data(current, spec, vname)
        else:
            # remap bijection keys through merges performed so far
            inner, bij_in, bij_out = spec
            bij_in = {outer_edge[e]: x for e, x in dict(bij_in).items()}
            bij_out = {outer_edge[e]: x for e, x in dict(bij_out).items()}
            data = substitution_data(current, inner, vname, bij_in, bij_out)
        current, corr = substitute_with_correspondence(data)
        outer_edge = {e: corr.outer_edge[x] for e, x in outer_edge.items()}
        inner_edge = {k: corr.outer_edge[x] for k, x in inner_edge.items()}
        inner_edge.update(corr.inner_edge)
        inner_vertex.update(corr.inner_vertex)
    return current, Correspondence(outer_edge, inner_edge, inner_vertex, outer_vertex)


def subgraph_witness(h):
    """Substitution data realizing the parent as a substitution onto h.

    Collapses the subgraph to a fresh vertex; substituting ``h`` back in
    returns a graph strictly isomorphic to the parent.
    """
    parent = h.parent
    used = set(parent.edges) | set(parent.vertex_names)
    vname = _fresh("w", used)
    if h.is_edge():
        # split the edge in two around a new (1,1)-vertex
        (e,) = h.edge_names
        e_new = _fresh(e + "_", used)
        vs = []
        for v in parent.vertices:
            ins = tuple(e_new if x == e else x for x in v.ins)
            vs.append(Vertex(v.name, ins, v.outs))
        vs.append(Vertex(vname, (e,), (e_new,)))
        collapsed = Graph(tuple(parent.edges) + (e_new,), tuple(vs))
        return substitution_data(
            collapsed, h.as_graph, vname,
            bij_in=((e, e),), bij_out=((e_new, e),),
        )
    ins = tuple(h.inputs)
    outs = tuple(h.outputs)
    internal = h.edge_names - set(ins) - set(outs)
    edges = tuple(e for e in parent.edges if e not in internal)
    vs = []
    placed = False
    for v in parent.vertices:
        if v.name in h.vertex_names_set:
            if not placed:
                vs.append(Vertex(vname, ins, outs))
                placed = True
            continue
        vs.append(v)
    if not placed:
        vs.append(Vertex(vname, ins, outs))
    collapsed = Graph(edges, tuple(vs))
    return substitution_data(
        collapsed,
        h.as_graph,
        vname,
        bij_in=tuple((e, e) for e in ins),
        bij_out=tuple((e, e) for e in outs),
    )


# ---------------------------------------------------------------------------
# canonical form


def _refine_classes(g, classes, order_sensitive=True):
    """One round of neighbourhood refinement of a vertex partition."""
    idx = {}
    for ci, cls in enumerate(classes):
        for name in cls:
            idx[name] = ci

    def edge_sig(e, side):
        other = g.out_vertex.get(e) if side == "in" else g.in_vertex.get(e)
        return idx[other] if other is not None else -1

    sigs = {}
    for v in g.vertices:
        ins = tuple(edge_sig(e, "in") for e in v.ins)
        outs = tuple(edge_sig(e, "out") for e in v.outs)
        if not order_sensitive:
            ins, outs = tuple(sorted(ins)), tuple(sorted(outs))
        sigs[v.name] = (idx[v.name], ins, outs)
    buckets = {}
    for name, s in sigs.items():
        buckets.setdefault(s, []).append(name)
    return [sorted(b) for _, b in sorted(buckets.items())]


def _initial_classes(g, vertex_label):
    buckets = {}
    for v in g.vertices:
        lab = repr(vertex_label(v.name)) if vertex_label else ""
        buckets.setdefault((lab, len(v.ins), len(v.outs)), []).append(v.name)
    return [sorted(b) for _, b in sorted(buckets.items())]


def _certificate(g, vorder, edge_label, in_order, out_order):
    vpos = {name: i for i, name in enumerate(vorder)}
    eid = {}
    counter = itertools.count(1)
    for name in vorder:
        for e in g.vertex(name).outs:
            eid[e] = next(counter)
    attached_inputs = sorted(
        (vpos[g.in_vertex[e]], g.vertex(g.in_vertex[e]).ins.index(e), e)
        for e in g.inputs
        if e in g.in_vertex
    )
    for _, _, e in attached_inputs:
        eid[e] = next(counter)
    loose = [e for e in g.edges if e not in eid]
    if edge_label:
        loose.sort(key=lambda e: repr(edge_label(e)))
    for e in loose:
        eid[e] = next(counter)
    rows = tuple(
        (
            tuple(eid[e] for e in g.vertex(name).ins),
            tuple(eid[e] for e in g.vertex(name).outs),
        )
        for name in vorder
    )
    labels = ()
    if edge_label:
        labels = tuple(
            repr(edge_label(e)) for e, _ in sorted(eid.items(), key=lambda kv: kv[1])
        )
    bnd_in = tuple(eid[e] for e in in_order) if in_order is not None else ()
    bnd_out = tuple(eid[e] for e in out_order) if out_order is not None else ()
    return (len(g.edges), rows, bnd_in, bnd_out, labels), eid


def canonical_form(
    g,
    vertex_label=None,
    edge_label=None,
    in_order=None,
    out_order=None,
    vertex_order=None,
    max_candidates=50000,
):
    """A deterministic representative of the strict isomorphism class.

    Two graphs receive equal canonical forms exactly when there is an
    isomorphism preserving per-vertex orderings, the optional labels,
    and the optional boundary orderings.  ``vertex_order`` pins the
    vertex enumeration (used for indexed graphs); otherwise a
    backtracking search over refinement-compatible orders picks the
    lexicographically least certificate.

    Returns (canonical graph, edge renaming, vertex renaming).
    """
    if vertex_order is not None:
        orders = [tuple(vertex_order)]
    else:
        classes = _initial_classes(g, vertex_label)
        for _ in range(len(g.vertices)):
            refined = _refine_classes(g, classes)
            if len(refined) == len(classes):
                break
            classes = refined
        count = 1
        for cls in classes:
            for k in range(2, len(cls) + 1):
                count *= k
            if count > max_candidates:
                raise SizeLimit("canonical form search space too large")
        pools = [itertools.permutations(cls) for cls in classes]
        orders = [
            tuple(itertools.chain.from_iterable(combo))
            for combo in itertools.product(*pools)
        ]
    best = None
    for order in orders:
        cert, eid = _certificate(g, order, edge_label, in_order, out_order)
        if best is None or cert < best[0]:
            best = (cert, order, eid)
    _, order, eid = best
    edge_map = {e: f"e{eid[e]}" for e in g.edges}
    vertex_map = {name: f"v{i+1}" for i, name in enumerate(order)}
    edges = tuple(f"e{k}" for k in range(1, len(g.edges) + 1))
    vs = tuple(
        Vertex(
            vertex_map[name],
            tuple(edge_map[e] for e in g.vertex(name).ins),
            tuple(edge_map[e] for e in g.vertex(name).outs),
        )
        for name in order
    )
    return Graph(edges, vs), edge_map, vertex_map


def strict_iso(g1, g2, **kwargs):
    """Are the two ordered graphs strictly isomorphic?"""
    if len(g1.edges) != len(g2.edges) or len(g1.vertices) != len(g2.vertices):
        return False
    c1, _, _ = canonical_form(g1, **kwargs)
    c2, _, _ = canonical_form(g2, **kwargs)
    return c1 == c2


# ---------------------------------------------------------------------------
# serialization


def graph_to_json(g):
    return {
        "edges": list(g.edges),
        "vertices": [
            {"name": v.name, "in": list(v.ins), "out": list(v.outs)}
            for v in g.vertices
        ],
    }


def graph_from_json(data):
    return graph(
        [str(e) for e in data["edges"]],
        [(v["name"], [str(e) for e in v["in"]], [str(e) for e in v["out"]])
         for v in data["vertices"]],
    )


def load_graph(path):
    with open(path) as fh:
        return graph_from_json(json.load(fh))


def to_dot(g, name="G"):
    """GraphViz rendering: circles for vertices, points for loose ends."""
    lines = [f"digraph {name} {{", "  rankdir=TB;"]
    for v in g.vertices:
        lines.append(f'  "{v.name}" [shape=circle];')
    for e in g.edges:
        src = g.out_vertex.get(e)
        dst = g.in_vertex.get(e)
        if src is None:
            lines.append(f'  "in_{e}" [shape=point, label=""];')
            src_name = f"in_{e}"
        else:
            src_name = src
        if dst is None:
            lines.append(f'  "out_{e}" [shape=point, label=""];')
            dst_name = f"out_{e}"
        else:
            dst_name = dst
        lines.append(f'  "{src_name}" -> "{dst_name}" [label="{e}"];')
    lines.append("}")
    return "\n".join(lines)
