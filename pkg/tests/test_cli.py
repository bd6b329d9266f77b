import json

import pytest

from setchoose.cli import main
from setchoose.formats import from_edgelist, lists_from_json
from setchoose.gadgets import build


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_dot_to_stdout(capsys):
    code, out, _ = run_cli(capsys, "build", "--gadget", "pentagon", "--format", "dot")
    assert code == 0
    assert out.startswith("graph ")
    assert '"v1" [lists="1,2,5,6"];' in out


def test_build_edgelist_roundtrip(tmp_path, capsys):
    graph_file = tmp_path / "g2.edges"
    lists_file = tmp_path / "g2.lists.json"
    code, out, _ = run_cli(
        capsys,
        "build", "--gadget", "g2", "--format", "edgelist",
        "--out", str(graph_file), "--lists", str(lists_file),
    )
    assert code == 0
    g2 = build("g2")
    parsed = from_edgelist(graph_file.read_text())
    assert parsed == g2.graph
    assert lists_from_json(parsed, lists_file.read_text()) == g2.base_lists


def test_solve_pentagon_unsat(tmp_path, capsys):
    graph_file = tmp_path / "p.edges"
    lists_file = tmp_path / "p.lists.json"
    run_cli(
        capsys,
        "build", "--gadget", "pentagon",
        "--out", str(graph_file), "--lists", str(lists_file),
    )
    code, out, _ = run_cli(
        capsys,
        "solve", "--graph", str(graph_file), "--lists", str(lists_file), "--b", "2",
    )
    assert code == 0
    result = json.loads(out)
    assert result["status"] == "UNSAT"
    assert "witness" not in result


def test_solve_with_forbid_spec(tmp_path, capsys):
    graph_file = tmp_path / "g.edges"
    lists_file = tmp_path / "g.lists.json"
    graph_file.write_text("p edge 1 0\nc label 1 v\n")
    lists_file.write_text('{"v": [1, 2, 3, 4]}')
    code, out, _ = run_cli(
        capsys,
        "solve", "--graph", str(graph_file), "--lists", str(lists_file),
        "--b", "2", "--forbid", "v:1,2", "--forbid", "v:3",
    )
    assert code == 0
    result = json.loads(out)
    # {1,2} banned as a pair and 3 banned outright: smallest remaining {1,4}
    assert result["status"] == "SAT"
    assert result["witness"]["v"] == [1, 4]


def test_solve_sat_reports_witness(tmp_path, capsys):
    graph_file = tmp_path / "k2.edges"
    lists_file = tmp_path / "k2.lists.json"
    graph_file.write_text("p edge 2 1\nc label 1 a\nc label 2 b\n1 2\n")
    lists_file.write_text('{"a": [1, 2], "b": [1, 2, 3, 4]}')
    code, out, _ = run_cli(
        capsys,
        "solve", "--graph", str(graph_file), "--lists", str(lists_file), "--b", "2",
    )
    assert code == 0
    result = json.loads(out)
    assert result["status"] == "SAT"
    assert result["witness"] == {"a": [1, 2], "b": [3, 4]}


def test_verify_lemma1_json_report(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "lemma1", "--format", "json"
    )
    assert code == 0
    reports = json.loads(out)
    assert {r["claim_id"] for r in reports} == {"lemma1.unsat", "lemma1.universal"}
    assert all(r["status"] == "verified" for r in reports)


def test_verify_text_report_to_file(tmp_path, capsys):
    out_file = tmp_path / "report.txt"
    code, out, _ = run_cli(
        capsys, "verify", "lemma1", "--out", str(out_file)
    )
    assert code == 0
    assert out == ""
    assert "overall: PASS" in out_file.read_text()


def test_verify_lemma3_with_small_samples(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "lemma3", "--samples", "10", "--format", "json"
    )
    assert code == 0
    reports = {r["claim_id"]: r for r in json.loads(out)}
    assert reports["lemma3.relaxed"]["statistics"]["samples_checked"] == 12


def test_missing_required_argument_exits(tmp_path):
    with pytest.raises(SystemExit):
        main(["solve", "--graph", str(tmp_path / "nope"), "--b", "2"])


def test_missing_graph_file_is_error(tmp_path, capsys):
    code = main(
        [
            "solve",
            "--graph", str(tmp_path / "nope"),
            "--lists", str(tmp_path / "nope.json"),
            "--b", "2",
        ]
    )
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_bad_forbid_spec(tmp_path, capsys):
    graph_file = tmp_path / "g.edges"
    lists_file = tmp_path / "g.lists.json"
    graph_file.write_text("p edge 1 0\nc label 1 v\n")
    lists_file.write_text('{"v": [1, 2, 3, 4]}')
    with pytest.raises(SystemExit):
        main([
            "solve", "--graph", str(graph_file), "--lists", str(lists_file),
            "--b", "2", "--forbid", "v:1,2,3",
        ])
