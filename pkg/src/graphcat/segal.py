"""Finite presheaves on graph corpora: Segal conditions and nerves.

A corpus is a finite family of connected graphs closed under structured
subgraphs, together with all hom-sets between its members.  Set-valued
presheaves on a corpus are given by value tables and restriction tables;
the Segal condition asks the value at a graph to be recovered from the
values on its edges and corollas.  The nerve of a finite properad is
always Segal, and a Segal presheaf determines a properad; both
directions are implemented, along with the segmentation reformulation
on level-graph corpora.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .digraph import (
    Graph,
    canonical_form,
    corolla,
    edge_graph,
    structured_subgraphs,
    vertex_corolla,
    whole_subgraph,
)
from .errors import GraphcatError, NotSegal
from .graphical import (
    compose_graphical,
    graphical_morphism,
    hom_set,
    identity_graphical,
    iso_set,
    validate_graphical,
)
from .level import (
    compose_level,
    elementary_corolla,
    elementary_edge,
    hom_level,
    identity_level,
    level_morphism,
    segmentation_pieces,
    special_extension,
    underlying_graph,
)
from .properad import FiniteProperad, decorated_graph


# ---------------------------------------------------------------------------
# graphical corpora


class Corpus:
    """Canonical connected graphs with precomputed hom tables."""

    def __init__(self, objects, homs):
        self.objects = tuple(objects)
        self.homs = homs
        self._hom_index = {
            key: {m: k for k, m in enumerate(entry)}
            for key, entry in homs.items()
        }

    def __len__(self):
        return len(self.objects)

    def hom(self, i, j):
        return self.homs[(i, j)]

    def hom_index(self, i, j, m):
        return self._hom_index[(i, j)][m]

    def object_index(self, g):
        return self.objects.index(g)

    def compose(self, f, g):
        return compose_graphical(f, g)

    def identity_of(self, i):
        return identity_graphical(self.objects[i])

    @cached_property
    def edge_index(self):
        return next(
            i for i, g in enumerate(self.objects)
            if not g.vertices and len(g.edges) == 1
        )

    @cached_property
    def corolla_index(self):
        """biarity -> index of the corolla object."""
        table = {}
        for i, g in enumerate(self.objects):
            if len(g.vertices) == 1 and len(g.edges) == sum(g.vertices[0].biarity()):
                table[g.vertices[0].biarity()] = i
        return table


def _iso_class_seen(g, seen):
    key = (
        len(g.edges),
        len(g.vertices),
        tuple(sorted(v.biarity() for v in g.vertices)),
        (len(g.inputs), len(g.outputs)),
    )
    for other in seen.get(key, ()):
        if iso_set(g, other):
            return True, key, other
    return False, key, None


def build_corpus(generators, max_vertices=3):
    """Close generators under structured subgraphs and boundary corollas.

    Objects are canonical forms, deduplicated up to isomorphism of the
    graphical category (orderings quotiented); all pairwise hom-sets
    are enumerated.
    """
    pool = [edge_graph()]
    for g in generators:
        if len(g.vertices) > max_vertices:
            raise GraphcatError("generator exceeds the corpus vertex bound")
        pool.append(g)
        for sub in structured_subgraphs(g):
            pool.append(sub.as_graph)
        pool.append(corolla(len(g.inputs), len(g.outputs)))
    objects = []
    seen = {}
    for g in pool:
        canon, _, _ = canonical_form(g)
        dup, key, _ = _iso_class_seen(canon, seen)
        if not dup:
            seen.setdefault(key, []).append(canon)
            objects.append(canon)
    objects.sort(key=lambda g: (len(g.vertices), len(g.edges), repr(g)))
    homs = {
        (i, j): hom_set(a, b)
        for i, a in enumerate(objects)
        for j, b in enumerate(objects)
    }
    return Corpus(objects, homs)


# ---------------------------------------------------------------------------
# presheaves


class FinitePresheaf:
    """Value and restriction tables over a corpus.

    ``values[i]`` is the tuple of elements at object i; for the k-th
    morphism f: A_i -> A_j, ``restrictions[(i, j, k)]`` maps elements
    at A_j to elements at A_i.
    """

    def __init__(self, corpus, values, restrictions):
        self.corpus = corpus
        self.values = values
        self.restrictions = restrictions

    def value(self, i):
        return self.values[i]

    def restrict(self, i, j, k, x):
        return self.restrictions[(i, j, k)][x]

    def restrict_along(self, i, j, m, x):
        return self.restrict(i, j, self.corpus.hom_index(i, j, m), x)

    def check_functorial(self, max_pairs=None):
        """Identities restrict trivially; composites factor."""
        corpus = self.corpus
        for i in range(len(corpus.objects)):
            k = corpus.hom_index(i, i, corpus.identity_of(i))
            for x in self.values[i]:
                if self.restrict(i, i, k, x) != x:
                    return False
        count = 0
        for (i, j), fs in corpus.homs.items():
            for f in fs:
                for l in range(len(corpus.objects)):
                    for g in corpus.homs[(j, l)]:
                        comp = corpus.compose(f, g)
                        for x in self.values[l]:
                            left = self.restrict_along(i, l, comp, x)
                            right = self.restrict_along(
                                i, j, f, self.restrict_along(j, l, g, x)
                            )
                            if left != right:
                                return False
                            count += 1
                            if max_pairs and count >= max_pairs:
                                return True
        return True


def presheaf_from_tables(corpus, values, restrictions):
    return FinitePresheaf(corpus, values, restrictions)


def representable_presheaf(corpus, x_index):
    """hom(-, X): restriction is precomposition."""
    values = tuple(corpus.homs[(i, x_index)] for i in range(len(corpus)))
    restrictions = {}
    for (i, j), fs in corpus.homs.items():
        for k, f in enumerate(fs):
            table = {}
            for h in corpus.homs[(j, x_index)]:
                table[h] = compose_graphical(f, h)
            restrictions[(i, j, k)] = table
    return FinitePresheaf(corpus, values, restrictions)


# ---------------------------------------------------------------------------
# covers and the Segal condition


@dataclass(frozen=True)
class Cover:
    """The canonical elementary cover of a corpus object.

    ``vertex_entries[v]`` and ``edge_entries[e]`` are (object index,
    inclusion morphism); ``connections`` holds one commuting triangle
    per incidence: (edge, vertex, morphism between the elementaries).
    """

    object_index: int
    vertex_entries: tuple
    edge_entries: tuple
    connections: tuple


def elementary_cover(corpus, gi):
    g = corpus.objects[gi]
    ei = corpus.edge_index
    edge_obj = corpus.objects[ei]
    vertex_entries = []
    for v in g.vertices:
        ci = corpus.corolla_index[v.biarity()]
        c = corpus.objects[ci]
        cv = c.vertices[0]
        f0 = dict(zip(cv.ins, v.ins)) | dict(zip(cv.outs, v.outs))
        incl = graphical_morphism(
            c, g, f0, {cv.name: vertex_corolla(g, v.name)}
        )
        vertex_entries.append((v.name, ci, incl))
    edge_entries = []
    for e in g.edges:
        incl = graphical_morphism(
            edge_obj, g, {edge_obj.edges[0]: e}, {}
        )
        edge_entries.append((e, ei, incl))
    connections = []
    for v in g.vertices:
        ci = corpus.corolla_index[v.biarity()]
        c = corpus.objects[ci]
        cv = c.vertices[0]
        for side, listed in (("in", cv.ins), ("out", cv.outs)):
            src = v.ins if side == "in" else v.outs
            for k, ce in enumerate(listed):
                conn = graphical_morphism(
                    edge_obj, c, {edge_obj.edges[0]: ce}, {}
                )
                connections.append((src[k], v.name, ci, conn))
    return Cover(gi, tuple(vertex_entries), tuple(edge_entries), tuple(connections))


def segal_limit(F, gi):
    """Families over the elementary cover agreeing on shared edges."""
    corpus = F.corpus
    cover = elementary_cover(corpus, gi)
    ei = corpus.edge_index
    vertex_list = [name for name, _, _ in cover.vertex_entries]
    edge_list = [e for e, _, _ in cover.edge_entries]
    constraints = {}
    for e, vname, ci, conn in cover.connections:
        constraints.setdefault(vname, []).append((e, ci, conn))
    if not cover.vertex_entries:
        # the single-edge object covers itself
        return tuple(((), (y,)) for y in F.value(ei))
    families = []
    vertex_choices = [
        F.value(ci) for _, ci, _ in cover.vertex_entries
    ]
    for choice in itertools.product(*vertex_choices):
        edge_values = {}
        ok = True
        for (vname, ci, _), x in zip(cover.vertex_entries, choice):
            for e, ci2, conn in constraints.get(vname, ()):
                y = F.restrict_along(ei, ci2, conn, x)
                if edge_values.setdefault(e, y) != y:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        families.append((choice, tuple(edge_values[e] for e in edge_list)))
    return tuple(sorted(set(families), key=repr))


def segal_map(F, gi):
    """The canonical comparison from F(G) into the cover limit."""
    corpus = F.corpus
    cover = elementary_cover(corpus, gi)
    out = {}
    for x in F.value(gi):
        vs = tuple(
            F.restrict_along(ci, gi, incl, x)
            for _, ci, incl in cover.vertex_entries
        )
        es = tuple(
            F.restrict_along(ci, gi, incl, x)
            for _, ci, incl in cover.edge_entries
        )
        out[x] = (vs, es)
    return out


def is_segal(F):
    """Bijectivity of the comparison at every corpus object.

    Returns (flag, witness object index or None).
    """
    for gi in range(len(F.corpus)):
        limit = segal_limit(F, gi)
        comparison = segal_map(F, gi)
        image = list(comparison.values())
        if len(set(image)) != len(image):
            return False, gi
        if set(image) != set(limit):
            return False, gi
    return True, None


# ---------------------------------------------------------------------------
# nerve and extraction


def nerve(P, corpus):
    """The presheaf of P-decorations of the corpus graphs.

    A decoration is an edge coloring plus a color-compatible operation
    per vertex; restriction along a morphism evaluates image subgraphs.
    """
    values = []
    for g in corpus.objects:
        entries = []
        for coloring in itertools.product(P.colors, repeat=len(g.edges)):
            cof = dict(zip(g.edges, coloring))
            per_vertex = [
                P.ops(
                    tuple(cof[e] for e in v.ins),
                    tuple(cof[e] for e in v.outs),
                )
                for v in g.vertices
            ]
            for ops in itertools.product(*per_vertex):
                entries.append((coloring, ops))
        values.append(tuple(entries))
    values = tuple(values)
    restrictions = {}
    for (i, j), fs in corpus.homs.items():
        src, tgt = corpus.objects[i], corpus.objects[j]
        for k, f in enumerate(fs):
            table = {}
            for x in values[j]:
                table[x] = _restrict_decoration(P, f, tgt, src, x)
            restrictions[(i, j, k)] = table
    return FinitePresheaf(corpus, values, restrictions)


def _restrict_decoration(P, f, tgt, src, x):
    coloring, ops = x
    cof = dict(zip(tgt.edges, coloring))
    lof = dict(zip(tgt.vertex_names, ops))
    new_colors = tuple(cof[f.f0[e]] for e in src.edges)
    new_ops = []
    for v in src.vertices:
        sub = f.f1v[v.name]
        subg = sub.as_graph
        dec = decorated_graph(
            subg,
            {e: cof[e] for e in subg.edges},
            {w: lof[w] for w in subg.vertex_names},
            tuple(f.f0[e] for e in v.ins),
            tuple(f.f0[e] for e in v.outs),
        )
        new_ops.append(P.evaluate(dec))
    return (new_colors, tuple(new_ops))


class ExtractedProperad(FiniteProperad):
    """The properad carried by a Segal presheaf.

    Colors are the values on the edge; operations in a profile are the
    corolla values with the prescribed edge restrictions; evaluation
    inverts the Segal comparison and restricts along an active map.
    Decorated graphs may live on any graph isomorphic to a corpus
    object; the decoration is transported along an isomorphism first.
    """

    def __init__(self, F):
        ok, witness = is_segal(F)
        if not ok:
            raise NotSegal(f"presheaf fails the Segal condition at {witness}")
        self.F = F
        self.corpus = F.corpus
        self.colors = tuple(F.value(F.corpus.edge_index))
        self._ops_cache = {}
        self._profiles = {}
        self._fingerprints = {}
        for (m, n), ci in self.corpus.corolla_index.items():
            for x in F.value(ci):
                self._profiles[x] = self._edge_restrictions(ci, x)

    def _corolla(self, m, n):
        ci = self.corpus.corolla_index.get((m, n))
        if ci is None:
            raise GraphcatError(f"corpus has no corolla of biarity {(m, n)}")
        return ci, self.corpus.objects[ci]

    def _edge_restrictions(self, ci, x):
        corpus = self.corpus
        c = corpus.objects[ci]
        cv = c.vertices[0]
        ei = corpus.edge_index
        edge_obj = corpus.objects[ei]
        ins, outs = [], []
        for e in cv.ins:
            incl = graphical_morphism(edge_obj, c, {edge_obj.edges[0]: e}, {})
            ins.append(self.F.restrict_along(ei, ci, incl, x))
        for e in cv.outs:
            incl = graphical_morphism(edge_obj, c, {edge_obj.edges[0]: e}, {})
            outs.append(self.F.restrict_along(ei, ci, incl, x))
        return tuple(ins), tuple(outs)

    def ops(self, ins, outs):
        key = (tuple(ins), tuple(outs))
        if key not in self._ops_cache:
            ci, _ = self._corolla(len(key[0]), len(key[1]))
            self._ops_cache[key] = tuple(
                x for x in self.F.value(ci) if self._profiles[x] == key
            )
        return self._ops_cache[key]

    def op_profile(self, op):
        return self._profiles[op]

    def identity(self, color):
        from .digraph import edge_subgraph

        ci, c = self._corolla(1, 1)
        ei = self.corpus.edge_index
        edge_obj = self.corpus.objects[ei]
        cv = c.vertices[0]
        deg = graphical_morphism(
            c, edge_obj,
            {cv.ins[0]: edge_obj.edges[0], cv.outs[0]: edge_obj.edges[0]},
            {cv.name: edge_subgraph(edge_obj, edge_obj.edges[0])},
        )
        return self.F.restrict_along(ci, ei, deg, color)

    def act(self, op, in_perm, out_perm):
        prof = self.op_profile(op)
        m, n = len(prof[0]), len(prof[1])
        ci, c = self._corolla(m, n)
        cv = c.vertices[0]
        f0 = {}
        for i in range(m):
            f0[cv.ins[i]] = cv.ins[in_perm[i]]
        for j in range(n):
            f0[cv.outs[j]] = cv.outs[out_perm[j]]
        perm_map = graphical_morphism(
            c, c, f0, {cv.name: vertex_corolla(c, cv.name)}
        )
        return self.F.restrict_along(ci, ci, perm_map, op)

    def _fingerprint_index(self, gi):
        if gi not in self._fingerprints:
            self._fingerprints[gi] = {
                fp: x for x, fp in segal_map(self.F, gi).items()
            }
        return self._fingerprints[gi]

    def _transport(self, dec):
        """Move a decoration onto the corpus representative."""
        g = dec.graph
        if g in self.corpus.objects:
            return self.corpus.object_index(g), dec
        for gi, obj in enumerate(self.corpus.objects):
            isos = iso_set(obj, g)
            if not isos:
                continue
            z = isos[0]
            z0 = z.f0
            inv = {img: e for e, img in z0.items()}
            colors = {e: dec.color_of[z0[e]] for e in obj.edges}
            labels = {}
            for w in obj.vertices:
                (x_name,) = z.f1v[w.name].vertex_names_set
                xv = g.vertex(x_name)
                op = dec.label_of[x_name]
                in_perm = tuple(xv.ins.index(z0[e]) for e in w.ins)
                out_perm = tuple(xv.outs.index(z0[e]) for e in w.outs)
                labels[w.name] = self.act(op, in_perm, out_perm)
            moved = decorated_graph(
                obj, colors, labels,
                tuple(inv[e] for e in dec.in_order),
                tuple(inv[e] for e in dec.out_order),
            )
            return gi, moved
        raise GraphcatError("decorated graph is not isomorphic to a corpus object")

    def evaluate(self, dec):
        if not dec.graph.vertices:
            (e,) = dec.graph.edges
            return self.identity(dec.color_of[e])
        gi, dec = self._transport(dec)
        g = dec.graph
        if not self.check_decoration(dec):
            raise GraphcatError("decoration does not match vertex profiles")
        fingerprint = (
            tuple(dec.label_of[v.name] for v in g.vertices),
            tuple(dec.color_of[e] for e in g.edges),
        )
        target = self._fingerprint_index(gi).get(fingerprint)
        if target is None:
            raise NotSegal("no Segal preimage for the decoration")
        m, n = len(dec.in_order), len(dec.out_order)
        ci, c = self._corolla(m, n)
        cv = c.vertices[0]
        f0 = dict(zip(cv.ins, dec.in_order)) | dict(zip(cv.outs, dec.out_order))
        active = graphical_morphism(c, g, f0, {cv.name: whole_subgraph(g)})
        if validate_graphical(active) is not None:
            raise GraphcatError("no active comparison with the given boundary")
        return self.F.restrict_along(ci, gi, active, target)


def extract_properad(F):
    return ExtractedProperad(F)


# ---------------------------------------------------------------------------
# level-graph corpora


class LevelCorpus:
    """Level graphs (disconnected allowed) with precomputed hom tables."""

    def __init__(self, objects, homs):
        self.objects = tuple(objects)
        self.homs = homs
        self._hom_index = {
            key: {m: k for k, m in enumerate(entry)}
            for key, entry in homs.items()
        }

    def __len__(self):
        return len(self.objects)

    def hom(self, i, j):
        return self.homs[(i, j)]

    def hom_index(self, i, j, m):
        return self._hom_index[(i, j)][m]

    def object_index(self, lg):
        return self.objects.index(lg)

    def compose(self, f, g):
        return compose_level(f, g)

    def identity_of(self, i):
        return identity_level(self.objects[i])

    @cached_property
    def edge_index(self):
        return next(
            i for i, lg in enumerate(self.objects)
            if lg.height == 0 and len(lg.edge_layers[0]) == 1
        )

    @cached_property
    def corolla_index(self):
        table = {}
        for i, lg in enumerate(self.objects):
            if (
                lg.height == 1
                and len(lg.vertex_layers[0]) == 1
                and len(lg.edge_layers[0]) + len(lg.edge_layers[1])
                == sum(lg.vertex_layers[0][0].biarity())
            ):
                table[lg.vertex_layers[0][0].biarity()] = i
        return table


def build_level_corpus(generators):
    """Close level graphs under segmentation pieces and elementaries."""
    pool = [elementary_edge()]
    biarities = set()
    for lg in generators:
        pool.append(lg)
        pieces, interfaces = segmentation_pieces(lg)
        pool.extend(p for p, _ in pieces)
        pool.extend(p for p, _ in interfaces)
        for layer in lg.vertex_layers:
            for v in layer:
                biarities.add(v.biarity())
    for m, n in sorted(biarities):
        pool.append(elementary_corolla(m, n))
    objects = []
    for lg in pool:
        if lg not in objects:
            objects.append(lg)
    homs = {
        (i, j): hom_level(a, b)
        for i, a in enumerate(objects)
        for j, b in enumerate(objects)
    }
    return LevelCorpus(objects, homs)


def representable_level_presheaf(corpus, x_index):
    values = tuple(corpus.homs[(i, x_index)] for i in range(len(corpus)))
    restrictions = {}
    for (i, j), fs in corpus.homs.items():
        for k, f in enumerate(fs):
            restrictions[(i, j, k)] = {
                h: compose_level(f, h) for h in corpus.homs[(j, x_index)]
            }
    return FinitePresheaf(corpus, values, restrictions)


def nerve_level(P, corpus):
    """Decorations of the underlying graphs, restricted along level maps."""
    values = []
    for lg in corpus.objects:
        g = underlying_graph(lg)
        entries = []
        for coloring in itertools.product(P.colors, repeat=len(g.edges)):
            cof = dict(zip(g.edges, coloring))
            per_vertex = [
                P.ops(
                    tuple(cof[e] for e in v.ins),
                    tuple(cof[e] for e in v.outs),
                )
                for v in g.vertices
            ]
            for ops in itertools.product(*per_vertex):
                entries.append((coloring, ops))
        values.append(tuple(entries))
    values = tuple(values)
    restrictions = {}
    for (i, j), fs in corpus.homs.items():
        src, tgt = corpus.objects[i], corpus.objects[j]
        for k, f in enumerate(fs):
            table = {}
            for x in values[j]:
                table[x] = _restrict_level_decoration(P, f, x)
            restrictions[(i, j, k)] = table
    return FinitePresheaf(corpus, values, restrictions)


def _restrict_level_decoration(P, f, x):
    src, tgt = f.source, f.target
    gt = underlying_graph(tgt)
    gs = underlying_graph(src)
    coloring, ops = x
    cof = dict(zip(gt.edges, coloring))
    lof = dict(zip(gt.vertex_names, ops))
    sf_t = special_extension(tgt)
    emaps, vmaps = f.edge_maps, f.vertex_maps
    new_colors = tuple(
        cof[emaps[_level_of(src, e)][e]] for e in gs.edges
    )
    new_ops = []
    for v in gs.vertices:
        i = _layer_of(src, v.name)
        rep = vmaps[i][v.name]
        pair = (f.alpha[i], f.alpha[i + 1])
        members = sf_t.members(pair, rep)
        edges = {a[2] for a in members if a[0] == "e"}
        vnames = {a[2] for a in members if a[0] == "v"}
        sub_edges = tuple(e for e in gt.edges if e in edges)
        sub_vs = tuple(w for w in gt.vertices if w.name in vnames)
        subg = Graph(sub_edges, sub_vs)
        dec = decorated_graph(
            subg,
            {e: cof[e] for e in sub_edges},
            {w.name: lof[w.name] for w in sub_vs},
            tuple(emaps[i][e] for e in v.ins),
            tuple(emaps[i + 1][e] for e in v.outs),
        )
        new_ops.append(P.evaluate(dec))
    return (new_colors, tuple(new_ops))


def _level_of(lg, edge):
    for i, layer in enumerate(lg.edge_layers):
        if edge in layer:
            return i
    raise KeyError(edge)


def _layer_of(lg, vname):
    for i, layer in enumerate(lg.vertex_layers):
        if any(v.name == vname for v in layer):
            return i
    raise KeyError(vname)


# ---------------------------------------------------------------------------
# Segal and segmentation conditions on level corpora


def _level_cover(corpus, li):
    """Canonical elementary cover of a level corpus object."""
    lg = corpus.objects[li]
    sf = special_extension(lg)
    ei = corpus.edge_index
    edge_obj = corpus.objects[ei]
    edge_name = edge_obj.edge_layers[0][0]
    vertex_entries = []
    for i, layer in enumerate(lg.vertex_layers):
        for v in layer:
            ci = corpus.corolla_index[v.biarity()]
            c = corpus.objects[ci]
            cv = c.vertex_layers[0][0]
            emaps = [
                dict(zip(cv.ins, v.ins)),
                dict(zip(cv.outs, v.outs)),
            ]
            vmaps = [{cv.name: sf.cls((i, i + 1), ("v", i, v.name))}]
            incl = level_morphism(c, lg, (i, i + 1), emaps, vmaps)
            vertex_entries.append((v.name, i, ci, incl))
    edge_entries = []
    for i, layer in enumerate(lg.edge_layers):
        for e in layer:
            incl = level_morphism(edge_obj, lg, (i,), [{edge_name: e}], [])
            edge_entries.append((e, ei, incl))
    connections = []
    for vname, i, ci, _ in vertex_entries:
        c = corpus.objects[ci]
        cv = c.vertex_layers[0][0]
        v = lg.layer_vertex(i, vname)
        for k, ce in enumerate(cv.ins):
            conn = level_morphism(edge_obj, c, (0,), [{edge_name: ce}], [])
            connections.append((v.ins[k], vname, ci, conn))
        for k, ce in enumerate(cv.outs):
            conn = level_morphism(edge_obj, c, (1,), [{edge_name: ce}], [])
            connections.append((v.outs[k], vname, ci, conn))
    return vertex_entries, edge_entries, connections


def segal_limit_level(F, li):
    corpus = F.corpus
    vertex_entries, edge_entries, connections = _level_cover(corpus, li)
    ei = corpus.edge_index
    edge_list = [e for e, _, _ in edge_entries]
    if not vertex_entries:
        return tuple(
            ((), combo)
            for combo in itertools.product(F.value(ei), repeat=len(edge_list))
        )
    constraints = {}
    for e, vname, ci, conn in connections:
        constraints.setdefault(vname, []).append((e, ci, conn))
    families = []
    for choice in itertools.product(
        *(F.value(ci) for _, _, ci, _ in vertex_entries)
    ):
        edge_values = {}
        ok = True
        for (vname, _, ci, _), x in zip(vertex_entries, choice):
            for e, ci2, conn in constraints.get(vname, ()):
                y = F.restrict_along(ei, ci2, conn, x)
                if edge_values.setdefault(e, y) != y:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        families.append((choice, tuple(edge_values[e] for e in edge_list)))
    return tuple(sorted(set(families), key=repr))


def segal_map_level(F, li):
    corpus = F.corpus
    vertex_entries, edge_entries, _ = _level_cover(corpus, li)
    out = {}
    for x in F.value(li):
        vs = tuple(
            F.restrict_along(ci, li, incl, x)
            for _, _, ci, incl in vertex_entries
        )
        es = tuple(
            F.restrict_along(ci, li, incl, x)
            for _, ci, incl in edge_entries
        )
        out[x] = (vs, es)
    return out


def _bijective_onto(comparison, limit):
    image = list(comparison.values())
    return len(set(image)) == len(image) and set(image) == set(limit)


def is_segal_level(F):
    """Locality with respect to every elementary cover."""
    for li in range(len(F.corpus)):
        if not _bijective_onto(segal_map_level(F, li), segal_limit_level(F, li)):
            return False, li
    return True, None


def short_segal_local(F):
    """Locality only at the short objects (height at most one)."""
    for li, lg in enumerate(F.corpus.objects):
        if lg.height > 1:
            continue
        if not _bijective_onto(segal_map_level(F, li), segal_limit_level(F, li)):
            return False, li
    return True, None


def segmentation_local(F):
    """Locality with respect to the segmentation maps.

    The value at a level graph must biject with tuples of values on the
    height-1 slices agreeing on the height-0 interfaces.
    """
    corpus = F.corpus
    for li, lg in enumerate(corpus.objects):
        n = lg.height
        if n <= 1:
            continue
        pieces, interfaces = segmentation_pieces(lg)
        piece_idx = [corpus.object_index(p) for p, _ in pieces]
        face_idx = [corpus.object_index(p) for p, _ in interfaces]
        # interface i sits between pieces i-1 and i
        top_incl, bottom_incl = [], []
        for i, (face, _) in enumerate(interfaces):
            emap = [{e: e for e in face.edge_layers[0]}]
            top_incl.append(
                level_morphism(face, pieces[i][0], (1,), emap, [])
            )
            bottom_incl.append(
                level_morphism(face, pieces[i + 1][0], (0,), emap, [])
            )
        families = []
        for choice in itertools.product(
            *(F.value(pi) for pi in piece_idx)
        ):
            ok = True
            for i in range(len(interfaces)):
                left = F.restrict_along(
                    face_idx[i], piece_idx[i], top_incl[i], choice[i]
                )
                right = F.restrict_along(
                    face_idx[i], piece_idx[i + 1], bottom_incl[i], choice[i + 1]
                )
                if left != right:
                    ok = False
                    break
            if ok:
                families.append(choice)
        comparison = {}
        for x in F.value(li):
            comparison[x] = tuple(
                F.restrict_along(piece_idx[i], li, incl, x)
                for i, (_, incl) in enumerate(pieces)
            )
        if not _bijective_onto(comparison, families):
            return False, li
    return True, None


def segmentation_check(F):
    """Compare full Segal locality with short cores plus segmentation.

    Returns (full, short_and_segmentation); the two flags agree for
    every functorial presheaf.
    """
    full, _ = is_segal_level(F)
    short, _ = short_segal_local(F)
    seg, _ = segmentation_local(F)
    return full, (short and seg)
