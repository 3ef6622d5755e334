import json

import pytest

from cathedral.cli import main
from cathedral.graph import parse_edge_list, render_edge_list

from helpers import C4, P4, T


@pytest.fixture
def edge_files(tmp_path):
    paths = {}
    for name, g in (("t", T), ("p4", P4), ("c4", C4)):
        path = tmp_path / f"{name}.edges"
        path.write_text(render_edge_list(g))
        paths[name] = str(path)
    return paths


def test_saturated_exit_codes(edge_files, capsys):
    assert main(["saturated", edge_files["t"]]) == 0
    assert capsys.readouterr().out == "saturated\n"
    assert main(["saturated", edge_files["c4"]]) == 1
    assert capsys.readouterr().out == "not saturated\n"


def test_decompose_unsaturated_is_a_precondition_error(edge_files, capsys):
    assert main(["decompose", edge_files["p4"]]) == 3
    assert "input is not saturated" in capsys.readouterr().err


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_missing_file_exits_2(capsys):
    assert main(["saturated", "/nonexistent/xyz.edges"]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_malformed_file_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.edges"
    bad.write_text("vertices 2\n0 0\n")
    assert main(["analyze", str(bad)]) == 2
    assert "self-loop" in capsys.readouterr().err


def test_non_factorizable_analyze_exits_3(tmp_path, capsys):
    odd = tmp_path / "odd.edges"
    odd.write_text("vertices 5\n0 1\n1 2\n2 3\n3 4\n0 4\n")
    assert main(["analyze", str(odd)]) == 3
    assert "perfect matching" in capsys.readouterr().err


def test_saturate_writes_closure_with_added_edges(edge_files, tmp_path, capsys):
    out = tmp_path / "closure.edges"
    assert main(["saturate", edge_files["p4"], "-o", str(out)]) == 0
    assert capsys.readouterr().out == "1 edge(s) added\n"
    text = out.read_text()
    assert "# added 0 2" in text
    assert parse_edge_list(text) == T


def test_construct_round_trips_decompose_byte_for_byte(edge_files, tmp_path):
    tree_path = tmp_path / "t.json"
    rebuilt_path = tmp_path / "t2.edges"
    assert main(["decompose", edge_files["t"], "-o", str(tree_path)]) == 0
    assert main(["construct", str(tree_path), "-o", str(rebuilt_path)]) == 0
    assert rebuilt_path.read_bytes() == (render_edge_list(T)).encode()


def test_construct_rejects_bad_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["construct", str(bad)]) == 2
    bad.write_text('{"foundation": {"vertices": [0, 1], "edges": []}, "classes": []}')
    # K2 without its edge is not factorizable: precondition error
    assert main(["construct", str(bad)]) == 3


def test_hasse_output(edge_files, capsys):
    assert main(["hasse", edge_files["t"]]) == 0
    out = capsys.readouterr().out
    assert out.startswith("digraph component_order {")
    assert "c1 -> c0;" in out


def test_analyze_json_structure(edge_files, capsys):
    assert main(["analyze", edge_files["t"], "--format", "json", "--ge"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["factor_components"] == [[0, 1], [2, 3]]
    assert data["canonical_partition"] == [[0], [1], [2], [3]]
    assert data["component_order"]["minimum"] == 1
    assert data["saturated"] is True
    deleted = {entry["vertex"]: entry for entry in data["deleted_partitions"]}
    assert deleted[2]["c"] == [0, 1]


def test_analyze_text_is_deterministic(edge_files, capsys):
    assert main(["analyze", edge_files["t"]]) == 0
    first = capsys.readouterr().out
    assert main(["analyze", edge_files["t"]]) == 0
    assert capsys.readouterr().out == first


def test_verify_json_deterministic_across_runs(tmp_path):
    args = ["verify", "--seed", "1", "--trials", "8", "--max-n", "6", "--cap", "32", "--format", "json"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["-o", str(a)]) == 0
    assert main(args + ["-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert data["config"]["seed"] == 1
    assert all("millis" not in r for t in data["trials"] for r in t["results"])


def test_verify_rejects_odd_max_n(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--max-n", "7"])
    assert info.value.code == 2
