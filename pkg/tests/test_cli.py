import json
import subprocess
import sys

import pytest

from graphcat.cli import main
from graphcat.digraph import graph_to_json
from graphcat.zoo import (
    closed_double_edge_graph,
    closed_square_graph,
    three_vertex_graph,
)


def write_graph(tmp_path, name, g):
    path = tmp_path / name
    path.write_text(json.dumps(graph_to_json(g)))
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_ok(tmp_path, capsys):
    path = write_graph(tmp_path, "g3.json", three_vertex_graph())
    code, out, err = run_cli(capsys, "validate", path)
    assert code == 0 and "ok" in out


def test_validate_mono_violation(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "edges": ["a", "b"],
        "vertices": [
            {"name": "u", "in": ["a"], "out": []},
            {"name": "v", "in": ["a"], "out": ["b"]},
        ],
    }))
    code, out, err = run_cli(capsys, "validate", str(path))
    assert code == 1
    assert "MonoViolation" in err


def test_missing_file_exits_2(capsys):
    with pytest.raises(SystemExit) as err:
        main(["validate", "/nonexistent/file.json"])
    assert err.value.code == 2


def test_subgraphs_count(tmp_path, capsys):
    path = write_graph(tmp_path, "g3.json", three_vertex_graph())
    code, out, err = run_cli(capsys, "--format", "json", "subgraphs", path)
    assert code == 0
    assert json.loads(out)["count"] == 11


def test_convex(tmp_path, capsys):
    path = write_graph(tmp_path, "g3.json", three_vertex_graph())
    code, out, _ = run_cli(
        capsys, "--format", "json", "convex", path, "--vertices", "u,w"
    )
    assert code == 0 and json.loads(out)["convex"] is False
    code, out, _ = run_cli(
        capsys, "--format", "json", "convex", path, "--vertices", "u,v"
    )
    assert code == 0 and json.loads(out)["convex"] is True


def test_hom_empty(tmp_path, capsys):
    g2 = write_graph(tmp_path, "g2.json", closed_square_graph())
    k2 = write_graph(tmp_path, "k2.json", closed_double_edge_graph())
    code, out, _ = run_cli(capsys, "--format", "json", "hom", g2, k2)
    assert code == 0
    assert json.loads(out)["count"] == 0


def test_substitute(tmp_path, capsys):
    from graphcat.digraph import corolla, linear_graph

    data = {
        "outer": graph_to_json(linear_graph(2)),
        "inner": graph_to_json(corolla(1, 1, name="z")),
        "vertex": "v1",
    }
    path = tmp_path / "sub.json"
    path.write_text(json.dumps(data))
    code, out, _ = run_cli(capsys, "--format", "json", "substitute", str(path))
    assert code == 0
    result = json.loads(out)
    assert len(result["vertices"]) == 2


def test_free_properad_profiles(tmp_path, capsys):
    from graphcat.zoo import two_component_graph

    path = write_graph(tmp_path, "two.json", two_component_graph())
    code, out, _ = run_cli(
        capsys, "--max-vertices", "4", "--format", "json",
        "free-properad", path, "--min-vertices", "1",
    )
    assert code == 0
    assert len(json.loads(out)["profiles"]) == 11


def test_prpd_stabilizer(tmp_path, capsys):
    data = graph_to_json(closed_square_graph())
    data["in_order"] = []
    data["out_order"] = []
    path = tmp_path / "z.json"
    path.write_text(json.dumps(data))
    code, out, _ = run_cli(capsys, "--format", "json", "prpd", "stabilizer", str(path))
    assert code == 0
    assert json.loads(out)["order"] == 2


def test_dot_output(tmp_path, capsys):
    path = write_graph(tmp_path, "g3.json", three_vertex_graph())
    code, out, _ = run_cli(capsys, "dot", path)
    assert code == 0 and out.startswith("digraph")


def test_nerve_and_segal_roundtrip(tmp_path, capsys):
    from graphcat.digraph import linear_graph

    properad_file = tmp_path / "p.json"
    properad_file.write_text(json.dumps({"kind": "end", "sets": {"c": 2}}))
    corpus_file = tmp_path / "corpus.json"
    corpus_file.write_text(json.dumps({
        "generators": [graph_to_json(linear_graph(2))],
        "max_vertices": 3,
    }))
    presheaf_file = tmp_path / "nerve.json"
    code, out, _ = run_cli(
        capsys, "nerve", str(properad_file), str(corpus_file),
        "-o", str(presheaf_file),
    )
    assert code == 0
    code, out, _ = run_cli(capsys, "--format", "json", "segal", str(presheaf_file))
    assert code == 0
    assert json.loads(out)["segal"] is True


def test_determinism(tmp_path, capsys):
    path = write_graph(tmp_path, "g3.json", three_vertex_graph())
    outs = set()
    for _ in range(3):
        code, out, _ = run_cli(capsys, "--format", "json", "subgraphs", path)
        outs.add(out)
    assert len(outs) == 1


def test_console_script_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "graphcat.cli", "--help"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "subgraphs" in proc.stdout
