"""Command-line front end.

Subcommands mirror the library: validate, subgraphs, convex, hom,
factorize, substitute, tau, free-properad, prpd compose/stabilizer,
theta, nerve, segal, dot.  Exit code 0 on success, 1 on a domain
violation (with the violation report), 2 on usage or file errors.
JSON output is sorted and schema-stable; all randomness is seeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import digraph, graphical, level, properad, segal
from .errors import GraphcatError


class DomainFailure(Exception):
    """A violation that should surface with exit code 1."""


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _emit(data, fmt):
    if fmt == "json":
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        _emit_text(data)


def _emit_text(data, indent=0):
    pad = "  " * indent
    if isinstance(data, dict):
        for key in sorted(data):
            value = data[key]
            if isinstance(value, (dict, list)):
                print(f"{pad}{key}:")
                _emit_text(value, indent + 1)
            else:
                print(f"{pad}{key}: {value}")
    elif isinstance(data, list):
        for item in data:
            if isinstance(item, (dict, list)):
                _emit_text(item, indent)
            else:
                print(f"{pad}{item}")
    else:
        print(f"{pad}{data}")


def _graph_arg(path):
    return digraph.graph_from_json(_load_json(path))


def _zgraph_from_json(data):
    g = digraph.graph_from_json(data)
    colors = data.get("colors")
    return properad.zgraph(
        g,
        tuple(str(e) for e in data["in_order"]),
        tuple(str(e) for e in data["out_order"]),
        {str(k): v for k, v in colors.items()} if colors else None,
    )


def _zgraph_to_json(z):
    out = digraph.graph_to_json(z.graph)
    out["in_order"] = list(z.in_order)
    out["out_order"] = list(z.out_order)
    if z.colors is not None:
        out["colors"] = dict(zip(z.graph.edges, z.colors))
    return out


def _graphical_morphism_from_json(data):
    src = digraph.graph_from_json(data["source"])
    tgt = digraph.graph_from_json(data["target"])
    return graphical.morphism_from_json(src, tgt, data)


def _graphical_morphism_to_json(f):
    data = graphical.morphism_to_json(f)
    data["source"] = digraph.graph_to_json(f.source)
    data["target"] = digraph.graph_to_json(f.target)
    return data


def _properad_from_json(data):
    kind = data.get("kind")
    if kind == "end":
        return properad.end_properad({str(c): v for c, v in data["sets"].items()})
    if kind == "terminal":
        return properad.terminal_properad(tuple(data.get("colors", ["*"])))
    if kind == "free":
        return properad.free_properad(
            digraph.graph_from_json(data["generator"]),
            data.get("vertex_bound", 4),
        )
    print(f"error: unknown properad kind {kind!r}", file=sys.stderr)
    raise SystemExit(2)


def _corpus_from_manifest(manifest):
    generators = [digraph.graph_from_json(g) for g in manifest["generators"]]
    max_vertices = manifest.get("max_vertices", 3)
    cache_dir = os.environ.get("GRAPHCAT_CORPUS_DIR")
    if cache_dir:
        key = hashlib.sha256(
            json.dumps(manifest, sort_keys=True).encode()
        ).hexdigest()[:16]
        path = os.path.join(cache_dir, f"corpus-{key}.json")
        if os.path.exists(path):
            stored = _load_json(path)
            objects = [digraph.graph_from_json(g) for g in stored["objects"]]
            homs = {
                (i, j): graphical.hom_set(a, b)
                for i, a in enumerate(objects)
                for j, b in enumerate(objects)
            }
            return segal.Corpus(objects, homs)
    corpus = segal.build_corpus(generators, max_vertices=max_vertices)
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
        with open(path, "w") as fh:
            json.dump(
                {"objects": [digraph.graph_to_json(g) for g in corpus.objects]},
                fh,
                sort_keys=True,
            )
    return corpus


def _presheaf_to_json(F, manifest):
    values = []
    index_of = []
    for entry in F.values:
        values.append([repr(x) for x in entry])
        index_of.append({x: k for k, x in enumerate(entry)})
    restrictions = {}
    for (i, j, k), table in sorted(F.restrictions.items()):
        restrictions[f"{i}:{j}:{k}"] = [
            index_of[i][table[x]] for x in F.values[j]
        ]
    return {"corpus": manifest, "values": values, "restrictions": restrictions}


def _presheaf_from_json(data):
    corpus = _corpus_from_manifest(data["corpus"])
    values = tuple(tuple(range(len(entry))) for entry in data["values"])
    restrictions = {}
    for key, table in data["restrictions"].items():
        i, j, k = (int(part) for part in key.split(":"))
        restrictions[(i, j, k)] = dict(enumerate(table))
    return segal.FinitePresheaf(corpus, values, restrictions)


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args):
    data = _load_json(args.graph)
    if args.level:
        report = level.validate_level(level.level_from_json(data))
    else:
        report = digraph.validate(digraph.graph_from_json(data))
    if report is not None:
        raise DomainFailure(str(report))
    _emit({"ok": True}, args.format)


def cmd_subgraphs(args):
    g = _graph_arg(args.graph)
    subs = digraph.structured_subgraphs(g, max_vertices=args.max_vertices)
    payload = {
        "count": len(subs),
        "subgraphs": [
            {"edges": sorted(s.edge_names), "vertices": sorted(s.vertex_names_set)}
            for s in subs
        ],
    }
    _emit(payload, args.format)


def cmd_convex(args):
    g = _graph_arg(args.graph)
    vertices = [v for v in args.vertices.split(",") if v] if args.vertices else []
    edges = [e for e in args.edges.split(",") if e] if args.edges else []
    sub = digraph.open_subgraph(g, vertices, edges)
    result = digraph.is_convex_open(sub)
    _emit(
        {
            "convex": result,
            "edges": sorted(sub.edge_names),
            "vertices": sorted(sub.vertex_names_set),
        },
        args.format,
    )


def cmd_hom(args):
    src = _graph_arg(args.source)
    tgt = _graph_arg(args.target)
    maps = graphical.hom_set(src, tgt, max_vertices=args.max_vertices)
    payload = {
        "count": len(maps),
        "morphisms": [dict(m.f0_pairs) for m in maps],
    }
    _emit(payload, args.format)


def cmd_factorize(args):
    data = _load_json(args.morphism)
    if args.cat == "G":
        f = _graphical_morphism_from_json(data)
        report = graphical.validate_graphical(f)
        if report is not None:
            raise DomainFailure(str(report))
        act, ine = graphical.factorize_G(f)
        payload = {
            "active": _graphical_morphism_to_json(act),
            "inert": _graphical_morphism_to_json(ine),
        }
    else:
        f = level.morphism_from_json(data)
        report = level.validate_level_morphism(f)
        if report is not None:
            raise DomainFailure(str(report))
        act, ine = level.factorize_L(f)
        payload = {
            "active": level.morphism_to_json(act),
            "inert": level.morphism_to_json(ine),
        }
    _emit(payload, args.format)


def cmd_substitute(args):
    data = _load_json(args.data)
    outer = digraph.graph_from_json(data["outer"])
    inner = digraph.graph_from_json(data["inner"])
    bij_in = data.get("bij_in")
    bij_out = data.get("bij_out")
    sub = digraph.substitution_data(
        outer,
        inner,
        str(data["vertex"]),
        {str(k): str(v) for k, v in bij_in.items()} if bij_in else None,
        {str(k): str(v) for k, v in bij_out.items()} if bij_out else None,
    )
    result = digraph.substitute(sub)
    _emit(digraph.graph_to_json(result), args.format)


def cmd_tau(args):
    f = level.morphism_from_json(_load_json(args.morphism))
    report = level.validate_level_morphism(f)
    if report is not None:
        raise DomainFailure(str(report))
    t = level.tau(f)
    _emit(_graphical_morphism_to_json(t), args.format)


def cmd_free_properad(args):
    g = _graph_arg(args.graph)
    P = properad.free_properad(g, vertex_bound=args.max_vertices)
    profiles = sorted(P.nonempty_profiles(min_vertices=args.min_vertices))
    payload = {
        "colors": sorted(P.colors),
        "profiles": [
            {"in": list(pins), "out": list(pouts)} for pins, pouts in profiles
        ],
    }
    _emit(payload, args.format)


def cmd_prpd(args):
    data = _load_json(args.data)
    if args.operation == "compose":
        outer = _zgraph_from_json(data["outer"])
        inner = {
            int(k): _zgraph_from_json(v) for k, v in data["inner"].items()
        }
        result = properad.prpd_compose(outer, inner)
        _emit(_zgraph_to_json(result), args.format)
    else:
        op = _zgraph_from_json(data)
        stab = properad.stabilizer(op)
        _emit(
            {"order": len(stab), "elements": [list(p) for p in stab]},
            args.format,
        )


def cmd_theta(args):
    f = _graphical_morphism_from_json(_load_json(args.morphism))
    report = graphical.validate_graphical(f)
    if report is not None:
        raise DomainFailure(str(report))
    arrow = properad.theta(f)
    payload = {
        "source": [list(p) for p in arrow.source],
        "target": [list(p) for p in arrow.target],
        "alpha": list(arrow.alpha),
        "operations": [_zgraph_to_json(op) for op in arrow.ops],
    }
    _emit(payload, args.format)


def cmd_nerve(args):
    P = _properad_from_json(_load_json(args.properad))
    manifest = _load_json(args.corpus)
    corpus = _corpus_from_manifest(manifest)
    N = segal.nerve(P, corpus)
    payload = _presheaf_to_json(N, manifest)
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(payload, fh, sort_keys=True)
        _emit({"objects": len(corpus), "written": args.output}, args.format)
    else:
        _emit(payload, args.format)


def cmd_segal(args):
    F = _presheaf_from_json(_load_json(args.presheaf))
    flag, witness = segal.is_segal(F)
    payload = {"segal": flag}
    if witness is not None:
        payload["witness"] = digraph.graph_to_json(F.corpus.objects[witness])
    _emit(payload, args.format)
    if not flag and args.strict:
        raise DomainFailure(f"presheaf fails the Segal condition at {witness}")


def cmd_dot(args):
    g = _graph_arg(args.graph)
    print(digraph.to_dot(g))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="graphcat",
        description="directed graphs with loose ends, level graphs, "
        "graphical maps, properads, and Segal presheaves",
    )
    parser.add_argument("--format", choices=("text", "json", "dot"), default="text")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-vertices", type=int, default=10)
    parser.add_argument("--max-degree", type=int, default=6)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check graph invariants")
    p.add_argument("graph")
    p.add_argument("--level", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("subgraphs", help="list structured subgraphs")
    p.add_argument("graph")
    p.set_defaults(func=cmd_subgraphs)

    p = sub.add_parser("convex", help="test an open subgraph for convexity")
    p.add_argument("graph")
    p.add_argument("--vertices", default="")
    p.add_argument("--edges", default="")
    p.set_defaults(func=cmd_convex)

    p = sub.add_parser("hom", help="enumerate graphical maps")
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("factorize", help="active-inert factorization")
    p.add_argument("morphism")
    p.add_argument("--cat", choices=("L", "G"), required=True)
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("substitute", help="graph substitution")
    p.add_argument("data")
    p.set_defaults(func=cmd_substitute)

    p = sub.add_parser("tau", help="underlying graphical map of a level morphism")
    p.add_argument("morphism")
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("free-properad", help="profiles of the free properad")
    p.add_argument("graph")
    p.add_argument("--min-vertices", type=int, default=0)
    p.set_defaults(func=cmd_free_properad)

    p = sub.add_parser("prpd", help="governing operad operations")
    p.add_argument("operation", choices=("compose", "stabilizer"))
    p.add_argument("data")
    p.set_defaults(func=cmd_prpd)

    p = sub.add_parser("theta", help="operad morphism of a graphical map")
    p.add_argument("morphism")
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("nerve", help="nerve presheaf of a properad")
    p.add_argument("properad")
    p.add_argument("corpus")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_nerve)

    p = sub.add_parser("segal", help="check the Segal condition")
    p.add_argument("presheaf")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_segal)

    p = sub.add_parser("dot", help="GraphViz rendering")
    p.add_argument("graph")
    p.set_defaults(func=cmd_dot)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except DomainFailure as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return 1
    except GraphcatError as exc:
        print(f"violation: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
