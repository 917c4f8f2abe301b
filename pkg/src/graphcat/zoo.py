"""Small named graphs used throughout the tests and demos."""

from .digraph import graph


def three_vertex_graph():
    """Three vertices u, v, w with u feeding both v and w, and v feeding w.

    The open subgraph on {u, v} is convex; the one on {u, w} is not.
    This graph admits no level structure.
    """
    return graph(
        "abcde",
        [("u", "a", "bd"), ("v", "b", "c"), ("w", "cd", "e")],
    )


def double_edge_graph():
    """Two vertices joined by a pair of parallel edges, with loose ends."""
    return graph(
        ["i", "p1", "p2", "o"],
        [("a", ["i"], ["p1", "p2"]), ("b", ["p1", "p2"], ["o"])],
    )


def closed_square_graph():
    """Four vertices: two sources each feeding both of two sinks.

    Admits no graphical map to or from the closed double edge, and
    carries the order structure whose reindexing stabilizer is the
    double transposition.
    """
    return graph(
        ["e00", "e01", "e10", "e11"],
        [
            ("u0", [], ["e00", "e01"]),
            ("u1", [], ["e11", "e10"]),
            ("v0", ["e00", "e10"], []),
            ("v1", ["e11", "e01"], []),
        ],
    )


def closed_double_edge_graph():
    """One source and one sink joined by two parallel edges; no loose ends."""
    return graph(
        ["p1", "p2"],
        [("u", [], ["p1", "p2"]), ("v", ["p1", "p2"], [])],
    )


def dangling_pair_graph():
    """Two vertices with one shared edge and one dangling end each.

    Maps to the closed double edge by an etale map that is not
    injective on edges.
    """
    return graph(
        ["s", "din", "dout"],
        [("u", [], ["s", "dout"]), ("v", ["s", "din"], [])],
    )


def two_component_graph():
    """Two components: a source over a sink, plus a lone splitting vertex.

    Edge 1 feeds u which emits 2 and 3 into w; separately 4 feeds x
    which emits 5 and 6.
    """
    return graph(
        "123456",
        [("u", "1", "23"), ("w", "23", ""), ("x", "4", "56")],
    )
