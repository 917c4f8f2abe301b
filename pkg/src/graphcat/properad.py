"""Set-valued colored properads and the operads governing them.

Operations of the governing operad are indexed ordered graphs: connected
acyclic graphs with total orderings on every vertex boundary and on the
graph boundary, vertices enumerated by an index set, taken up to the
unique order-preserving isomorphism.  Operadic composition is graph
substitution along order-preserving boundary identifications.

Finite properads are presented through an evaluation interface: a
properad knows its colors, its operation sets per profile, identities,
boundary permutations, and how to evaluate a decorated graph.  Free
properads on a graph and function properads on finite sets implement
the interface; the nerve machinery consumes it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .digraph import (
    Graph,
    StructuredSubgraph,
    Vertex,
    canonical_form,
    is_connected,
    is_simply_connected,
    multi_substitute,
    topological_vertices,
    validate as validate_graph,
)
from .errors import (
    ColorMismatch,
    GraphcatError,
    ProfileMismatch,
    SizeLimit,
)
from .graphical import graphical_morphism, vertex_map_G


# ---------------------------------------------------------------------------
# indexed ordered graphs


@dataclass(frozen=True)
class ZGraph:
    """A connected ordered graph with indexed vertices, in normal form.

    The vertex tuple order is the indexing; ``in_order`` and
    ``out_order`` are the boundary orderings. ``colors`` assigns a color
    to every edge (aligned with the edge tuple) or is None.
    """

    graph: Graph
    in_order: tuple
    out_order: tuple
    colors: tuple = None

    @property
    def size(self):
        return len(self.graph.vertices)

    def biarity(self):
        return (len(self.in_order), len(self.out_order))

    def vertex_biarities(self):
        return tuple(v.biarity() for v in self.graph.vertices)

    @cached_property
    def color_of(self):
        if self.colors is None:
            return None
        return dict(zip(self.graph.edges, self.colors))

    def profile(self):
        """(input colors, output colors) in boundary order, or arities."""
        if self.colors is None:
            return (len(self.in_order), len(self.out_order))
        cof = self.color_of
        return (
            tuple(cof[e] for e in self.in_order),
            tuple(cof[e] for e in self.out_order),
        )

    def vertex_profile(self, z):
        v = self.graph.vertices[z]
        if self.colors is None:
            return v.biarity()
        cof = self.color_of
        return (tuple(cof[e] for e in v.ins), tuple(cof[e] for e in v.outs))


def zgraph(graph, in_order, out_order, colors=None):
    """Normalize indexed-graph data to its canonical representative.

    The vertex order is preserved (it is the indexing); edges are
    renamed deterministically, so two inputs yield equal values exactly
    when the unique order-preserving comparison is an isomorphism.
    """
    report = validate_graph(graph)
    if report is not None:
        raise GraphcatError(str(report))
    if not is_connected(graph):
        raise GraphcatError("indexed graphs must be connected")
    if sorted(in_order) != sorted(graph.inputs):
        raise ProfileMismatch("in_order must enumerate the graph inputs")
    if sorted(out_order) != sorted(graph.outputs):
        raise ProfileMismatch("out_order must enumerate the graph outputs")
    color_map = dict(colors) if isinstance(colors, dict) else (
        dict(zip(graph.edges, colors)) if colors is not None else None
    )
    canon, emap, vmap = canonical_form(
        graph,
        edge_label=(color_map.get if color_map else None),
        in_order=tuple(in_order),
        out_order=tuple(out_order),
        vertex_order=graph.vertex_names,
    )
    new_colors = None
    if color_map is not None:
        inv = {emap[e]: color_map[e] for e in graph.edges}
        new_colors = tuple(inv[e] for e in canon.edges)
    return ZGraph(
        canon,
        tuple(emap[e] for e in in_order),
        tuple(emap[e] for e in out_order),
        new_colors,
    )


def identity_operation(m, n, in_colors=None, out_colors=None):
    """The identity corolla: both boundary orderings match the vertex's."""
    ins = tuple(f"i{k}" for k in range(m))
    outs = tuple(f"o{k}" for k in range(n))
    g = Graph(ins + outs, (Vertex("v", ins, outs),))
    colors = None
    if in_colors is not None or out_colors is not None:
        colors = dict(zip(ins, in_colors)) | dict(zip(outs, out_colors))
    return zgraph(g, ins, outs, colors)


def zgraph_of_graph(g, in_order=None, out_order=None, colors=None):
    """Index a plain ordered graph by its own vertex order."""
    return zgraph(
        g,
        tuple(in_order) if in_order is not None else g.inputs,
        tuple(out_order) if out_order is not None else g.outputs,
        colors,
    )


def prpd_compose(outer, inner):
    """Operadic composition: substitute an operation for every vertex.

    ``inner`` maps each vertex index to an operation whose profile
    matches that vertex; gluing uses the order-preserving boundary
    identifications.  The result is indexed by the concatenation of the
    inner indexings in outer order.
    """
    if sorted(inner) != list(range(outer.size)):
        raise ProfileMismatch("inner family must cover every vertex index")
    assignment = {}
    for z in range(outer.size):
        op = inner[z]
        v = outer.graph.vertices[z]
        if op.biarity() != v.biarity():
            raise ProfileMismatch(
                f"operation at index {z} has biarity {op.biarity()}, "
                f"vertex needs {v.biarity()}"
            )
        if outer.colors is not None:
            if outer.vertex_profile(z) != op.profile():
                raise ColorMismatch(f"colors disagree at index {z}")
        bij_in = tuple(zip(v.ins, op.in_order))
        bij_out = tuple(zip(v.outs, op.out_order))
        assignment[v.name] = (op.graph, bij_in, bij_out)
    result, corr = multi_substitute(outer.graph, assignment)
    order = []
    for z in range(outer.size):
        vname = outer.graph.vertices[z].name
        for w in inner[z].graph.vertices:
            order.append(corr.inner_vertex[(vname, w.name)])
    by_name = {v.name: v for v in result.vertices}
    reordered = Graph(result.edges, tuple(by_name[name] for name in order))
    colors = None
    if outer.colors is not None:
        colors = {}
        for e in outer.graph.edges:
            colors[corr.outer_edge[e]] = outer.color_of[e]
        for z in range(outer.size):
            op = inner[z]
            vname = outer.graph.vertices[z].name
            for e in op.graph.edges:
                res = corr.inner_edge[(vname, e)]
                prev = colors.setdefault(res, op.color_of[e])
                if prev != op.color_of[e]:
                    raise ColorMismatch(f"merged edge {res} has two colors")
    return zgraph(
        reordered,
        tuple(corr.outer_edge[e] for e in outer.in_order),
        tuple(corr.outer_edge[e] for e in outer.out_order),
        colors,
    )


def sigma_action(op, perm=None, in_perm=None, out_perm=None):
    """Reindex vertices and permute the boundary orderings.

    ``perm[z]`` is the old index placed at new index z; ``in_perm`` and
    ``out_perm`` act the same way on the boundary orderings.
    """
    g = op.graph
    vertices = g.vertices
    if perm is not None:
        if sorted(perm) != list(range(op.size)):
            raise ProfileMismatch("not a permutation of the index set")
        vertices = tuple(g.vertices[perm[z]] for z in range(op.size))
    in_order = op.in_order
    if in_perm is not None:
        in_order = tuple(op.in_order[in_perm[i]] for i in range(len(in_order)))
    out_order = op.out_order
    if out_perm is not None:
        out_order = tuple(op.out_order[out_perm[j]] for j in range(len(out_order)))
    colors = dict(zip(g.edges, op.colors)) if op.colors is not None else None
    return zgraph(Graph(g.edges, vertices), in_order, out_order, colors)


def stabilizer(op, max_size=8):
    """All index permutations fixing the operation, by brute force."""
    n = op.size
    if n > max_size:
        raise SizeLimit(f"stabilizer search bound exceeded ({n} > {max_size})")
    found = []
    for perm in itertools.permutations(range(n)):
        if any(
            op.vertex_profile(perm[z]) != op.vertex_profile(z) for z in range(n)
        ):
            continue
        if sigma_action(op, perm) == op:
            found.append(perm)
    return tuple(found)


def suboperad_member(op):
    """Membership flags for the governing operad's suboperads."""
    g = op.graph
    sc = is_simply_connected(g)
    out = len(op.out_order) >= 1 and all(len(v.outs) >= 1 for v in g.vertices)
    operad = len(op.out_order) == 1 and all(len(v.outs) == 1 for v in g.vertices)
    cat = (
        op.biarity() == (1, 1)
        and all(v.biarity() == (1, 1) for v in g.vertices)
    )
    return {"dioperad": sc, "out": out, "operad": operad, "cat": cat}


def all_operations(biarities, orderings="canonical"):
    """All operations with the given indexed vertex biarities.

    Enumerates stub matchings (acyclic, connected); boundary orderings
    are the canonical ones, or all of them with ``orderings="all"``.
    """
    stubs_out, stubs_in = [], []
    for z, (m, n) in enumerate(biarities):
        stubs_in.extend((z, k) for k in range(m))
        stubs_out.extend((z, k) for k in range(n))

    results = []

    def build(matching):
        edges, vs = [], []
        edge_of_in = {}
        edge_of_out = {}
        for idx, (so, si) in enumerate(matching):
            name = f"m{idx}"
            edges.append(name)
            edge_of_out[so] = name
            edge_of_in[si] = name
        for z, k in stubs_in:
            if (z, k) not in edge_of_in:
                name = f"in{z}_{k}"
                edges.append(name)
                edge_of_in[(z, k)] = name
        for z, k in stubs_out:
            if (z, k) not in edge_of_out:
                name = f"out{z}_{k}"
                edges.append(name)
                edge_of_out[(z, k)] = name
        for z, (m, n) in enumerate(biarities):
            vs.append(
                Vertex(
                    f"z{z}",
                    tuple(edge_of_in[(z, k)] for k in range(m)),
                    tuple(edge_of_out[(z, k)] for k in range(n)),
                )
            )
        g = Graph(tuple(edges), tuple(vs))
        if validate_graph(g) is not None or not is_connected(g):
            return
        if orderings == "all":
            for ip in itertools.permutations(g.inputs):
                for op_ in itertools.permutations(g.outputs):
                    results.append(zgraph(g, ip, op_))
        else:
            results.append(zgraph(g, g.inputs, g.outputs))

    def match(i, used, acc):
        if i == len(stubs_in):
            build(acc)
            return
        si = stubs_in[i]
        match(i + 1, used, acc)
        for so in stubs_out:
            if so in used or so[0] == si[0]:
                continue
            match(i + 1, used | {so}, acc + [(so, si)])

    match(0, frozenset(), [])
    seen = set()
    unique = []
    for op_ in results:
        if op_ not in seen:
            seen.add(op_)
            unique.append(op_)
    return tuple(unique)


# ---------------------------------------------------------------------------
# finite properads


@dataclass(frozen=True)
class DecoratedGraph:
    """A connected graph with edge colors and operation-labeled vertices."""

    graph: Graph
    colors: tuple
    labels: tuple
    in_order: tuple
    out_order: tuple

    @cached_property
    def color_of(self):
        return dict(self.colors)

    @cached_property
    def label_of(self):
        return dict(self.labels)


def decorated_graph(graph, colors, labels, in_order=None, out_order=None):
    return DecoratedGraph(
        graph,
        tuple(sorted(colors.items())),
        tuple(sorted(labels.items())),
        tuple(in_order) if in_order is not None else graph.inputs,
        tuple(out_order) if out_order is not None else graph.outputs,
    )


class FiniteProperad:
    """Interface for finite set-valued colored properads.

    Subclasses provide colors, per-profile operation sets, identities,
    the boundary permutation action, and evaluation of decorated
    connected graphs (the unbiased composition).
    """

    colors = ()

    def ops(self, ins, outs):
        raise NotImplementedError

    def identity(self, color):
        raise NotImplementedError

    def act(self, op, in_perm, out_perm):
        raise NotImplementedError

    def evaluate(self, dec):
        raise NotImplementedError

    def op_profile(self, op):
        raise NotImplementedError

    def check_decoration(self, dec):
        """Color-compatibility of labels at every vertex."""
        cof = dec.color_of
        for v in dec.graph.vertices:
            op = dec.label_of[v.name]
            ins, outs = self.op_profile(op)
            if ins != tuple(cof[e] for e in v.ins):
                return False
            if outs != tuple(cof[e] for e in v.outs):
                return False
        return True


class EndProperad(FiniteProperad):
    """Functions between products of finite sets, composed by flow.

    An operation in profile (c1..cm; d1..dn) is a function from the
    product of the input sets to the product of the output sets, stored
    as a tuple of output tuples indexed by the ranked input tuples.
    """

    def __init__(self, sets):
        self.sets = {c: tuple(vals) for c, vals in sets.items()}
        self.colors = tuple(sorted(self.sets))

    def _inputs(self, ins):
        return list(itertools.product(*(self.sets[c] for c in ins)))

    def ops(self, ins, outs):
        ins, outs = tuple(ins), tuple(outs)
        domain = self._inputs(ins)
        codomain = self._inputs(outs)
        out = []
        for values in itertools.product(codomain, repeat=len(domain)):
            out.append(("fn", ins, outs, tuple(values)))
        return tuple(out)

    def identity(self, color):
        vals = self.sets[color]
        return ("fn", (color,), (color,), tuple((v,) for v in vals))

    def op_profile(self, op):
        return op[1], op[2]

    def apply(self, op, args):
        _, ins, outs, table = op
        domain = self._inputs(ins)
        return table[domain.index(tuple(args))]

    def act(self, op, in_perm, out_perm):
        _, ins, outs, table = op
        new_ins = tuple(ins[in_perm[i]] for i in range(len(ins)))
        new_outs = tuple(outs[out_perm[j]] for j in range(len(outs)))
        inv_in = {in_perm[i]: i for i in range(len(ins))}
        domain_new = self._inputs(new_ins)
        values = []
        for args in domain_new:
            old_args = tuple(args[inv_in[k]] for k in range(len(ins)))
            old_out = self.apply(op, old_args)
            values.append(tuple(old_out[out_perm[j]] for j in range(len(outs))))
        return ("fn", new_ins, new_outs, tuple(values))

    def evaluate(self, dec):
        if not self.check_decoration(dec):
            raise ColorMismatch("decoration does not match vertex profiles")
        cof = dec.color_of
        ins = tuple(cof[e] for e in dec.in_order)
        outs = tuple(cof[e] for e in dec.out_order)
        order = topological_vertices(dec.graph)
        values = []
        for args in self._inputs(ins):
            state = dict(zip(dec.in_order, args))
            for name in order:
                v = dec.graph.vertex(name)
                res = self.apply(
                    dec.label_of[name], [state[e] for e in v.ins]
                )
                state.update(zip(v.outs, res))
            values.append(tuple(state[e] for e in dec.out_order))
        return ("fn", ins, outs, tuple(values))


def end_properad(sets):
    """The properad of functions on an assignment color -> finite set."""
    prepared = {}
    for c, val in sets.items():
        prepared[c] = tuple(range(val)) if isinstance(val, int) else tuple(val)
    return EndProperad(prepared)


def terminal_properad(colors=("*",)):
    return end_properad({c: 1 for c in colors})


class FreeProperad(FiniteProperad):
    """The properad generated by the vertices of a graph, truncated.

    Colors are the edges of the generating graph; operations are
    strict-isomorphism classes of connected ordered graphs with edges
    colored by generator edges and vertices labeled by generators,
    enumerated up to a vertex bound.  Elements are ZGraph-normal forms
    whose vertex index order is part of the representative, quotiented
    by reindexing (stored with the lexicographically least reindexing).
    """

    def __init__(self, generator, vertex_bound=4):
        report = validate_graph(generator)
        if report is not None:
            raise GraphcatError(str(report))
        self.generator = generator
        self.vertex_bound = vertex_bound
        self.colors = tuple(generator.edges)

    def _element(self, graph, colors, labels, in_order, out_order):
        """Normal form: minimize the indexed normal form over reindexings."""
        names = graph.vertex_names
        best = None
        for perm in itertools.permutations(range(len(names))):
            reordered = Graph(
                graph.edges, tuple(graph.vertices[k] for k in perm)
            )
            cand = zgraph(reordered, in_order, out_order, dict(colors))
            labs = tuple(labels[graph.vertices[k].name] for k in perm)
            key = (_zkey(cand), labs)
            if best is None or key < best[0]:
                best = (key, cand, labs)
        return ("el", best[1], best[2])

    def op_profile(self, op):
        _, zg, labels = op
        return zg.profile()

    def element_graph(self, op):
        return op[1], op[2]

    def is_generator(self, op):
        _, zg, labels = op
        return zg.size == 1

    def generator_element(self, vname):
        v = self.generator.vertex(vname)
        g = Graph(tuple(v.ins) + tuple(v.outs), (v,))
        colors = {e: e for e in g.edges}
        return self._element(g, colors, {vname: vname}, v.ins, v.outs)

    def edge_element(self, color, name="e"):
        g = Graph((name,), ())
        return self._element(g, {name: color}, {}, (name,), (name,))

    def identity(self, color):
        return self.edge_element(color)

    def subgraph_element(self, sub):
        """The element carried by a connected open subgraph."""
        g = sub.as_graph
        return self._element(
            g, {e: e for e in g.edges}, {v: v for v in g.vertex_names},
            g.inputs, g.outputs,
        )

    @cached_property
    def _pool(self):
        """All elements with canonical boundary orders, up to the bound."""
        found = {}
        for c in self.colors:
            el = self.edge_element(c)
            found.setdefault(el[1].profile(), set()).add(el)
        gens = self.generator.vertex_names
        for k in range(1, self.vertex_bound + 1):
            for combo in itertools.combinations_with_replacement(gens, k):
                for el in self._assemblies(combo):
                    found.setdefault(el[1].profile(), set()).add(el)
        return found

    def _assemblies(self, labels):
        """All connected acyclic stub matchings of the given generators."""
        ref = self.generator
        stubs_in, stubs_out = [], []
        for idx, name in enumerate(labels):
            v = ref.vertex(name)
            stubs_in.extend(((idx, k), v.ins[k]) for k in range(len(v.ins)))
            stubs_out.extend(((idx, k), v.outs[k]) for k in range(len(v.outs)))
        results = []

        def build(matching):
            edge_of_in, edge_of_out, edges, colors = {}, {}, [], {}
            for n, (so, si, color) in enumerate(matching):
                name = f"m{n}"
                edges.append(name)
                edge_of_out[so] = name
                edge_of_in[si] = name
                colors[name] = color
            for key, color in stubs_in:
                if key not in edge_of_in:
                    name = f"i{key[0]}_{key[1]}"
                    edges.append(name)
                    edge_of_in[key] = name
                    colors[name] = color
            for key, color in stubs_out:
                if key not in edge_of_out:
                    name = f"o{key[0]}_{key[1]}"
                    edges.append(name)
                    edge_of_out[key] = name
                    colors[name] = color
            vs = []
            lab = {}
            for idx, gname in enumerate(labels):
                v = ref.vertex(gname)
                wname = f"w{idx}"
                vs.append(
                    Vertex(
                        wname,
                        tuple(edge_of_in[(idx, k)] for k in range(len(v.ins))),
                        tuple(edge_of_out[(idx, k)] for k in range(len(v.outs))),
                    )
                )
                lab[wname] = gname
            g = Graph(tuple(edges), tuple(vs))
            if validate_graph(g) is not None or not is_connected(g):
                return
            results.append(
                self._element(g, colors, lab, g.inputs, g.outputs)
            )

        def match(i, used, acc):
            if i == len(stubs_in):
                build(acc)
                return
            (si, color) = stubs_in[i]
            match(i + 1, used, acc)
            for so, so_color in stubs_out:
                if so in used or so_color != color or so[0] == si[0]:
                    continue
                match(i + 1, used | {so}, acc + [(so, si, color)])

        match(0, frozenset(), [])
        return results

    def ops(self, ins, outs):
        """Elements in an exact ordered profile, up to the vertex bound."""
        ins, outs = tuple(ins), tuple(outs)
        out = set()
        for el in self._pool.get((ins, outs), ()):
            out.add(el)
        # profiles related by boundary permutations contribute reordered
        # representatives as well
        for profile, els in self._pool.items():
            pins, pouts = profile
            if sorted(pins) != sorted(ins) or sorted(pouts) != sorted(outs):
                continue
            for el in els:
                for ip in _color_permutations(pins, ins):
                    for op_ in _color_permutations(pouts, outs):
                        out.add(self.act(el, ip, op_))
        return tuple(sorted(out, key=repr))

    def nonempty_profiles(self, min_vertices=0):
        """Unordered profiles with at least one element within the bound.

        ``min_vertices=1`` skips the identity elements carried by single
        edges, which occupy the profiles (c; c).
        """
        out = set()
        for (pins, pouts), els in self._pool.items():
            if any(el[1].size >= min_vertices for el in els):
                out.add((tuple(sorted(pins)), tuple(sorted(pouts))))
        return out

    def act(self, op, in_perm, out_perm):
        _, zg, labels = op
        g = zg.graph
        in_order = tuple(zg.in_order[in_perm[i]] for i in range(len(zg.in_order)))
        out_order = tuple(zg.out_order[out_perm[j]] for j in range(len(zg.out_order)))
        return self._element(
            g, dict(zip(g.edges, zg.colors)),
            dict(zip(g.vertex_names, labels)), in_order, out_order,
        )

    def evaluate(self, dec):
        """Grafting: substitute each label's graph and renormalize."""
        if not self.check_decoration(dec):
            raise ColorMismatch("decoration does not match vertex profiles")
        assignment = {}
        inner_info = {}
        for v in dec.graph.vertices:
            el = dec.label_of[v.name]
            _, zg, labels = el
            bij_in = tuple(zip(v.ins, zg.in_order))
            bij_out = tuple(zip(v.outs, zg.out_order))
            assignment[v.name] = (zg.graph, bij_in, bij_out)
            inner_info[v.name] = (zg, labels)
        result, corr = multi_substitute(dec.graph, assignment)
        colors, labels = {}, {}
        for e in dec.graph.edges:
            colors[corr.outer_edge[e]] = dec.color_of[e]
        for vname, (zg, labs) in inner_info.items():
            lab_of = dict(zip(zg.graph.vertex_names, labs))
            for e in zg.graph.edges:
                res = corr.inner_edge[(vname, e)]
                colors.setdefault(res, zg.color_of[e])
            for w in zg.graph.vertex_names:
                labels[corr.inner_vertex[(vname, w)]] = lab_of[w]
        return self._element(
            result, colors, labels,
            tuple(corr.outer_edge[e] for e in dec.in_order),
            tuple(corr.outer_edge[e] for e in dec.out_order),
        )


def _zkey(zg):
    """A deterministic comparison key for normalized indexed graphs."""
    return (
        zg.graph.edges,
        tuple((v.name, v.ins, v.outs) for v in zg.graph.vertices),
        zg.in_order,
        zg.out_order,
        zg.colors if zg.colors is not None else (),
    )


def _color_permutations(src, dst):
    """Permutations p with src[p[i]] == dst[i] for all i."""
    n = len(src)
    positions = {}
    for i, c in enumerate(src):
        positions.setdefault(c, []).append(i)
    if sorted(src) != sorted(dst):
        return
    slots = [positions[c] for c in dst]
    for choice in itertools.product(*slots):
        if len(set(choice)) == n:
            yield tuple(choice)


def free_properad(generator, vertex_bound=4):
    """The truncated properad generated by the vertices of a graph."""
    return FreeProperad(generator, vertex_bound)


# ---------------------------------------------------------------------------
# vertex lifts of maps between free properads


@dataclass(frozen=True)
class EtaleMap:
    """A levelwise-exact naive map of graphs: per-vertex boundaries map
    bijectively."""

    source: Graph
    target: Graph
    edge_map: tuple
    vertex_map: tuple
    mono: bool

    @cached_property
    def edges(self):
        return dict(self.edge_map)

    @cached_property
    def vertices(self):
        return dict(self.vertex_map)


def vertex_lift(source, target, edge_map, images):
    """Lift a free-properad map to an etale map of graphs, if possible.

    ``edge_map`` is the color map E(source) -> E(target); ``images``
    sends each generator of the source to an element of the free
    properad on the target.  The lift exists exactly when every image
    is a single-vertex element; the result is flagged mono when the
    color map is injective.
    """
    vmap = {}
    for v in source.vertices:
        el = images[v.name]
        _, zg, labels = el
        expected_ins = tuple(edge_map[e] for e in v.ins)
        expected_outs = tuple(edge_map[e] for e in v.outs)
        pins, pouts = zg.profile()
        if sorted(pins) != sorted(expected_ins) or sorted(pouts) != sorted(expected_outs):
            raise ProfileMismatch(f"image of {v.name} has the wrong profile")
        if zg.size != 1:
            return None
        vmap[v.name] = labels[0]
    for v in source.vertices:
        w = target.vertex(vmap[v.name])
        if sorted(edge_map[e] for e in v.ins) != sorted(w.ins):
            return None
        if sorted(edge_map[e] for e in v.outs) != sorted(w.outs):
            return None
    mono = len(set(edge_map.values())) == len(edge_map)
    return EtaleMap(
        source,
        target,
        tuple(sorted(edge_map.items())),
        tuple(sorted(vmap.items())),
        mono,
    )


# ---------------------------------------------------------------------------
# the functor to the governing operad


@dataclass(frozen=True)
class OperadArrow:
    """A morphism in the category of operators of the governing operad.

    ``alpha[b]`` is the target index receiving source index b (None for
    the basepoint); ``ops[a]`` is the operation filling target index a,
    indexed by the sorted fiber of a.
    """

    source: tuple
    target: tuple
    alpha: tuple
    ops: tuple

    def fiber(self, a):
        return tuple(b for b, img in enumerate(self.alpha) if img == a)

    def is_active(self):
        return all(img is not None for img in self.alpha)


def identity_arrow(profile):
    return OperadArrow(
        tuple(profile),
        tuple(profile),
        tuple(range(len(profile))),
        tuple(identity_operation(m, n) for m, n in profile),
    )


def theta_object(g):
    """The profile of a graph: its vertex biarities in index order."""
    return tuple(v.biarity() for v in g.vertices)


def theta(f):
    """The operad morphism induced by a graphical map f: H -> G.

    Contravariant: the result goes from the profile of G to the profile
    of H.  Its pointed map is the vertex map; the operation at a target
    index is the image subgraph with inherited orderings, indexed by
    the fiber.
    """
    H, G = f.source, f.target
    vm = vertex_map_G(f)
    hindex = {name: b for b, name in enumerate(H.vertex_names)}
    gindex = {name: a for a, name in enumerate(G.vertex_names)}
    alpha = tuple(
        hindex[vm(name)] if vm(name) is not None else None
        for name in G.vertex_names
    )
    ops = []
    for b, wname in enumerate(H.vertex_names):
        sub = f.f1v[wname]
        subg = sub.as_graph
        w = H.vertex(wname)
        in_order = tuple(f.f0[e] for e in w.ins)
        out_order = tuple(f.f0[e] for e in w.outs)
        ops.append(zgraph(subg, in_order, out_order))
    return OperadArrow(theta_object(G), theta_object(H), alpha, tuple(ops))


def compose_arrows(t1, t2):
    """The composite of t1: x -> y followed by t2: y -> z."""
    if t1.target != t2.source:
        raise GraphcatError("arrows are not composable")
    alpha = tuple(
        (t2.alpha[b] if b is not None else None) for b in t1.alpha
    )
    ops = []
    for c in range(len(t2.target)):
        outer = t2.ops[c]
        fiber2 = t2.fiber(c)
        inner = {}
        flat = []
        for pos, b in enumerate(fiber2):
            inner[pos] = t1.ops[b]
            flat.extend(t1.fiber(b))
        composite = prpd_compose(outer, inner)
        target_order = sorted(flat)
        perm = tuple(flat.index(x) for x in target_order)
        ops.append(sigma_action(composite, perm))
    return OperadArrow(t1.source, t2.target, alpha, tuple(ops))


def cartesian_lift_active(g, arrow):
    """Lift an active operad morphism into the profile of ``g``.

    ``arrow`` must target theta_object(g) and be exhibited by a family
    of operations with biarities matching the vertices of g.  The lift
    is the graphical map from g to the substitution of the family into
    g, sending each vertex to its inserted operation; applying theta
    recovers the arrow.
    """
    if arrow.target != theta_object(g):
        raise ProfileMismatch("arrow does not target the profile of the graph")
    if not arrow.is_active():
        raise ProfileMismatch("arrow must be active")
    assignment = {}
    for a, vname in enumerate(g.vertex_names):
        op = arrow.ops[a]
        v = g.vertex(vname)
        if op.biarity() != v.biarity():
            raise ProfileMismatch(f"operation at {vname} has wrong biarity")
        assignment[vname] = (
            op.graph,
            tuple(zip(v.ins, op.in_order)),
            tuple(zip(v.outs, op.out_order)),
        )
    result, corr = multi_substitute(g, assignment)
    # order result vertices by the arrow's source indexing
    placed = []
    for a, vname in enumerate(g.vertex_names):
        fiber = arrow.fiber(a)
        for pos, b in enumerate(fiber):
            inner_name = arrow.ops[a].graph.vertices[pos].name
            placed.append((b, corr.inner_vertex[(vname, inner_name)]))
    placed.sort()
    by_name = {v.name: v for v in result.vertices}
    target = Graph(result.edges, tuple(by_name[name] for _, name in placed))
    f0 = {e: corr.outer_edge[e] for e in g.edges}
    f1v = {}
    for a, vname in enumerate(g.vertex_names):
        op = arrow.ops[a]
        edges = frozenset(
            corr.inner_edge[(vname, e)] for e in op.graph.edges
        )
        vs = frozenset(
            corr.inner_vertex[(vname, w)] for w in op.graph.vertex_names
        )
        f1v[vname] = StructuredSubgraph(target, edges, vs)
    return graphical_morphism(g, target, f0, f1v)


# ---------------------------------------------------------------------------
# serialization


def operation_to_json(z):
    out = {
        "edges": list(z.graph.edges),
        "vertices": [
            {"name": v.name, "in": list(v.ins), "out": list(v.outs)}
            for v in z.graph.vertices
        ],
        "in_order": list(z.in_order),
        "out_order": list(z.out_order),
    }
    if z.colors is not None:
        out["colors"] = dict(zip(z.graph.edges, z.colors))
    return out


def operation_from_json(data):
    from .digraph import graph_from_json

    g = graph_from_json(data)
    colors = data.get("colors")
    return zgraph(
        g,
        tuple(str(e) for e in data["in_order"]),
        tuple(str(e) for e in data["out_order"]),
        {str(k): v for k, v in colors.items()} if colors else None,
    )


def decorated_to_json(P, dec):
    """Decorated-graph format: the graph plus colors and label maps.

    Labels are referenced by their position in the operation set of
    their profile, which is deterministic for a fixed properad.
    """
    from .digraph import graph_to_json

    labels = {}
    for v in dec.graph.vertices:
        op = dec.label_of[v.name]
        ins, outs = P.op_profile(op)
        labels[v.name] = {
            "in": list(ins),
            "out": list(outs),
            "index": P.ops(ins, outs).index(op),
        }
    data = graph_to_json(dec.graph)
    data["colors"] = dict(dec.colors)
    data["labels"] = labels
    data["in_order"] = list(dec.in_order)
    data["out_order"] = list(dec.out_order)
    return data


def decorated_from_json(P, data):
    from .digraph import graph_from_json

    g = graph_from_json(data)
    labels = {}
    for name, spec in data["labels"].items():
        ops = P.ops(tuple(spec["in"]), tuple(spec["out"]))
        labels[str(name)] = ops[spec["index"]]
    return decorated_graph(
        g,
        {str(k): v for k, v in data["colors"].items()},
        labels,
        tuple(str(e) for e in data["in_order"]),
        tuple(str(e) for e in data["out_order"]),
    )
