import itertools
import random

import pytest

from graphcat.digraph import (
    Graph,
    Vertex,
    corolla,
    edge_graph,
    graph,
    linear_graph,
    structured_subgraphs,
)
from graphcat.errors import ColorMismatch, ProfileMismatch
from graphcat.graphical import (
    compose_graphical,
    hom_set,
    identity_graphical,
    validate_graphical,
    vertex_map_G,
)
from graphcat.properad import (
    DecoratedGraph,
    all_operations,
    cartesian_lift_active,
    compose_arrows,
    decorated_graph,
    end_properad,
    free_properad,
    identity_arrow,
    identity_operation,
    prpd_compose,
    sigma_action,
    stabilizer,
    suboperad_member,
    terminal_properad,
    theta,
    theta_object,
    vertex_lift,
    zgraph,
    zgraph_of_graph,
)
from graphcat.zoo import (
    closed_square_graph,
    dangling_pair_graph,
    closed_double_edge_graph,
    three_vertex_graph,
    two_component_graph,
)


def op_pool(max_arity=2):
    """Small operations for law tests, canonical boundary orders."""
    pool = {}
    for m in range(max_arity + 1):
        for n in range(max_arity + 1):
            ops = [identity_operation(m, n)]
            for bi in ([(m, 1), (1, n)], [(m, 2), (2, n)]):
                ops.extend(all_operations(bi))
            pool[(m, n)] = [op for op in ops if op.biarity() == (m, n)]
    return pool


def test_unit_laws():
    x = zgraph_of_graph(three_vertex_graph())
    units = {
        z: identity_operation(*x.graph.vertices[z].biarity())
        for z in range(x.size)
    }
    assert prpd_compose(x, units) == x
    outer = identity_operation(*x.biarity())
    assert prpd_compose(outer, {0: x}) == x


def test_associativity_exhaustive_small():
    pool = op_pool()
    outers = [identity_operation(1, 1)] + list(all_operations([(1, 1), (1, 1)]))
    checked = 0
    for outer in outers:
        bi = [outer.graph.vertices[z].biarity() for z in range(outer.size)]
        for mids in itertools.product(*(pool[b][:3] for b in bi)):
            mids = dict(enumerate(mids))
            once = prpd_compose(outer, mids)
            inner_bi = [
                once.graph.vertices[z].biarity() for z in range(once.size)
            ]
            inners = {
                z: identity_operation(*b) for z, b in enumerate(inner_bi)
            }
            # (outer o mids) o inners == outer o (mids o inners)
            left = prpd_compose(once, inners)
            offset = 0
            fused = {}
            for z in range(outer.size):
                k = mids[z].size
                sub = {
                    i: inners[offset + i] for i in range(k)
                }
                fused[z] = prpd_compose(mids[z], sub)
                offset += k
            right = prpd_compose(outer, fused)
            assert left == right
            checked += 1
    assert checked >= 20


def test_equivariance():
    rng = random.Random(0)
    ops2 = all_operations([(1, 1), (1, 1)])
    for outer in ops2:
        x = identity_operation(1, 1)
        y = list(all_operations([(1, 1)]))[0]
        composed = prpd_compose(outer, {0: x, 1: y})
        swapped_outer = sigma_action(outer, (1, 0))
        swapped = prpd_compose(swapped_outer, {0: y, 1: x})
        # reindex the composite accordingly
        assert sigma_action(composed, (1, 0)) == swapped


def test_sigma_action_identity():
    x = zgraph_of_graph(closed_square_graph())
    assert sigma_action(x, (0, 1, 2, 3)) == x


def test_stabilizer_of_square_is_double_transposition():
    x = zgraph_of_graph(closed_square_graph())
    assert stabilizer(x) == ((0, 1, 2, 3), (1, 0, 3, 2))


def test_single_swap_moves_square():
    x = zgraph_of_graph(closed_square_graph())
    assert sigma_action(x, (1, 0, 2, 3)) != x


def test_corolla_stabilizer_trivial():
    for m, n in [(0, 2), (2, 0), (2, 2), (1, 3)]:
        assert stabilizer(identity_operation(m, n)) == ((),) if m + n == 0 else True
        c = identity_operation(m, n)
        assert stabilizer(c) == (tuple(range(1)),)


def test_simply_connected_operations_sigma_free():
    # every dioperad or output operation of small size has a trivial
    # stabilizer
    shapes = [
        [(1, 1)], [(1, 2)], [(2, 1)],
        [(1, 1), (1, 1)], [(1, 2), (1, 1)], [(2, 2), (2, 2)],
        [(1, 1), (1, 1), (1, 1)], [(0, 2), (2, 0)],
        [(0, 2), (0, 2), (2, 0), (2, 0)],
    ]
    checked_nontrivial = 0
    for bi in shapes:
        for op in all_operations(bi, orderings="all"):
            flags = suboperad_member(op)
            stab = stabilizer(op)
            if flags["dioperad"] or flags["out"]:
                assert stab == (tuple(range(op.size)),)
            if len(stab) > 1:
                checked_nontrivial += 1
    assert checked_nontrivial > 0


def test_suboperad_flags():
    tree = zgraph_of_graph(linear_graph(2))
    flags = suboperad_member(tree)
    assert flags == {"dioperad": True, "out": True, "operad": True, "cat": True}
    sq = zgraph_of_graph(closed_square_graph())
    flags = suboperad_member(sq)
    assert not flags["dioperad"] and not flags["out"]
    c21 = identity_operation(2, 1)
    assert suboperad_member(c21) == {
        "dioperad": True, "out": True, "operad": True, "cat": False,
    }
    edge_like = zgraph_of_graph(edge_graph())
    assert suboperad_member(edge_like)["cat"]


def test_nullary_profile_edge_only():
    # with no vertices the only connected graph is the single edge
    e = zgraph_of_graph(edge_graph())
    assert e.biarity() == (1, 1)
    assert e.size == 0


def test_suboperad_closure_under_composition():
    # composing output operations yields output operations, and
    # likewise for the simply-connected class
    pool = op_pool()
    outer = identity_operation(2, 1)
    for x in pool[(2, 1)][:4]:
        composed = prpd_compose(outer, {0: x})
        fx = suboperad_member(x)
        fc = suboperad_member(composed)
        if fx["out"]:
            assert fc["out"]
        if fx["dioperad"]:
            assert fc["dioperad"]


# ---------------------------------------------------------------------------
# free properads


def test_free_properad_on_edge():
    P = free_properad(edge_graph("e"), vertex_bound=3)
    assert P.nonempty_profiles() == {(("e",), ("e",))}
    assert len(P.ops(("e",), ("e",))) == 1


def test_free_properad_two_component_families():
    P = free_properad(two_component_graph(), vertex_bound=4)
    got = P.nonempty_profiles(min_vertices=1)

    def fam(ins, outs):
        return (tuple(sorted(ins)), tuple(sorted(outs)))

    expected = {
        fam("1", "23"),
        fam("23", ""),
        fam("1", ""), fam("11", ""),
        fam("12", "2"), fam("112", "2"),
        fam("123", ""),
        fam("13", "3"), fam("113", "3"),
        fam("11", "23"),
        fam("4", "56"),
    }
    assert got == expected
    # the identity elements occupy the edge profiles on top of these
    with_ids = P.nonempty_profiles()
    assert with_ids - got == {((c,), (c,)) for c in "123456"}


def test_free_properad_corolla_orbit():
    gen = corolla(2, 3, name="v")
    P = free_properad(gen, vertex_bound=2)
    ins, outs = gen.vertices[0].ins, gen.vertices[0].outs
    assert len(P.ops(ins, outs)) == 1
    # ordered representatives across all boundary reorderings
    count = 0
    for ip in itertools.permutations(ins):
        for op in itertools.permutations(outs):
            count += len(P.ops(ip, op))
    assert count == 2 * 6


def test_free_properad_subgraph_elements():
    g = three_vertex_graph()
    P = free_properad(g, vertex_bound=3)
    for sub in structured_subgraphs(g):
        el = P.subgraph_element(sub)
        ins, outs = P.op_profile(el)
        assert sorted(ins) == sorted(sub.inputs)
        assert sorted(outs) == sorted(sub.outputs)
        assert el in P.ops(ins, outs)


def test_free_evaluate_matches_substitution():
    g = three_vertex_graph()
    P = free_properad(g, vertex_bound=4)
    # decorate the generating graph with its own generators: grafting
    # them together returns the whole-graph element
    dec = decorated_graph(
        g,
        {e: e for e in g.edges},
        {v: P.generator_element(v) for v in g.vertex_names},
    )
    from graphcat.digraph import whole_subgraph

    assert P.evaluate(dec) == P.subgraph_element(whole_subgraph(g))


def test_free_evaluate_unit():
    g = corolla(1, 2, name="v")
    P = free_properad(g, vertex_bound=2)
    el = P.generator_element("v")
    c = decorated_graph(
        g, {e: e for e in g.edges}, {"v": el}
    )
    assert P.evaluate(c) == el


# ---------------------------------------------------------------------------
# end properads


def test_end_properad_counts():
    P = end_properad({"c": 2})
    assert len(P.ops(("c",), ("c",))) == 4
    assert len(P.ops(("c", "c"), ("c",))) == 16


def test_terminal_properad():
    P = terminal_properad(("a", "b"))
    assert len(P.ops(("a", "b"), ("b",))) == 1


def test_end_evaluate_is_composition():
    P = end_properad({"c": 2})
    lin = linear_graph(2)
    f = ("fn", ("c",), ("c",), ((1,), (0,)))  # swap
    g = ("fn", ("c",), ("c",), ((1,), (1,)))  # constant 1
    dec = decorated_graph(
        lin, {e: "c" for e in lin.edges}, {"v1": f, "v2": g}
    )
    out = P.evaluate(dec)
    assert out == ("fn", ("c",), ("c",), ((1,), (1,)))
    # in the other order
    dec2 = decorated_graph(
        lin, {e: "c" for e in lin.edges}, {"v1": g, "v2": f}
    )
    assert P.evaluate(dec2) == ("fn", ("c",), ("c",), ((0,), (0,)))


def test_end_evaluate_single_edge():
    P = end_properad({"c": 2})
    e = edge_graph()
    dec = decorated_graph(e, {"e": "c"}, {})
    assert P.evaluate(dec) == P.identity("c")


def test_end_act_group_law():
    P = end_properad({"c": 2, "d": 3})
    op = P.ops(("c", "d"), ("d", "c"))[5]
    ident = P.act(op, (0, 1), (0, 1))
    assert ident == op
    swapped = P.act(op, (1, 0), (0, 1))
    back = P.act(swapped, (1, 0), (0, 1))
    assert back == op


# ---------------------------------------------------------------------------
# vertex lifts


def test_vertex_lift_exists_for_subgraph_inclusion():
    g = three_vertex_graph()
    P = free_properad(g, vertex_bound=2)
    sub = [s for s in structured_subgraphs(g) if len(s.vertex_names_set) == 2][0]
    h = sub.as_graph
    lift = vertex_lift(
        h, g, {e: e for e in h.edges},
        {v: P.generator_element(v) for v in h.vertex_names},
    )
    assert lift is not None and lift.mono


def test_vertex_lift_etale_not_mono():
    h = dangling_pair_graph()
    g = closed_double_edge_graph()
    P = free_properad(g, vertex_bound=2)
    edge_map = {"s": "p1", "dout": "p2", "din": "p2"}
    lift = vertex_lift(
        h, g, edge_map,
        {"u": P.generator_element("u"), "v": P.generator_element("v")},
    )
    assert lift is not None
    assert not lift.mono
    assert lift.vertices == {"u": "u", "v": "v"}


def test_vertex_lift_absent_for_composite_image():
    g = linear_graph(2)
    P = free_properad(g, vertex_bound=3)
    c = corolla(1, 1, name="z")
    from graphcat.digraph import whole_subgraph

    whole = P.subgraph_element(whole_subgraph(g))
    lift = vertex_lift(
        c, g, {"i1": "e0", "o1": "e2"}, {"z": whole},
    )
    assert lift is None


# ---------------------------------------------------------------------------
# theta and cartesian lifts


def test_theta_identity():
    g = three_vertex_graph()
    assert theta(identity_graphical(g)) == identity_arrow(theta_object(g))


def test_theta_functorial_random_pairs():
    rng = random.Random(0)
    e = edge_graph()
    c = corolla(1, 1)
    lin = linear_graph(2)
    g3 = three_vertex_graph()
    chains = [(c, lin), (lin, g3), (c, g3)]
    count = 0
    for a, b in chains:
        for f in hom_set(a, b):
            for target in (g3,):
                for g in hom_set(b, target):
                    left = theta(compose_graphical(f, g))
                    right = compose_arrows(theta(g), theta(f))
                    assert left == right
                    count += 1
    assert count >= 10


def test_theta_vertex_component():
    g = three_vertex_graph()
    for f in hom_set(corolla(1, 1), g):
        arr = theta(f)
        vm = vertex_map_G(f)
        for a, name in enumerate(g.vertex_names):
            expected = vm(name)
            if expected is None:
                assert arr.alpha[a] is None
            else:
                assert arr.alpha[a] == 0


def test_cartesian_lift_identity():
    g = three_vertex_graph()
    arrow = identity_arrow(theta_object(g))
    lift = cartesian_lift_active(g, arrow)
    assert validate_graphical(lift) is None
    assert theta(lift) == arrow


def test_cartesian_lift_two_vertex_inner():
    # insert a two-vertex operation at the top vertex of a chain
    g = linear_graph(2)
    inner = zgraph_of_graph(linear_graph(2))
    arrow_ops = (inner, identity_operation(1, 1))
    alpha = (0, 0, 1)
    arrow = type(identity_arrow(theta_object(g)))(
        ((1, 1), (1, 1), (1, 1)), theta_object(g), alpha, arrow_ops
    )
    lift = cartesian_lift_active(g, arrow)
    assert validate_graphical(lift) is None
    assert len(lift.target.vertices) == 3
    assert theta(lift) == arrow


def test_cartesian_lift_unique_in_hom_set():
    g = linear_graph(2)
    inner = zgraph_of_graph(linear_graph(2))
    arrow = type(identity_arrow(theta_object(g)))(
        ((1, 1), (1, 1), (1, 1)), theta_object(g), (0, 0, 1),
        (inner, identity_operation(1, 1)),
    )
    lift = cartesian_lift_active(g, arrow)
    matches = [
        m for m in hom_set(g, lift.target) if theta(m) == arrow
    ]
    assert matches == [lift]


def test_cartesian_lift_profile_mismatch():
    g = linear_graph(1)
    arrow = identity_arrow(((2, 1),))
    with pytest.raises(ProfileMismatch):
        cartesian_lift_active(g, arrow)


def test_decorated_graph_json_roundtrip():
    from graphcat.properad import decorated_from_json, decorated_to_json

    P = end_properad({"c": 2})
    lin = linear_graph(2)
    ops = P.ops(("c",), ("c",))
    dec = decorated_graph(
        lin, {e: "c" for e in lin.edges}, {"v1": ops[1], "v2": ops[2]}
    )
    data = decorated_to_json(P, dec)
    assert data["colors"] and data["labels"]
    back = decorated_from_json(P, data)
    assert back == dec


def test_operation_json_roundtrip():
    from graphcat.properad import operation_from_json, operation_to_json

    x = zgraph_of_graph(closed_square_graph())
    assert operation_from_json(operation_to_json(x)) == x
