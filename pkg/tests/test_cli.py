import json

import pytest

from redicolouring.cli import main

TRIANGLE = "p digraph 3 3\na 0 1\na 1 2\na 2 0\n"
DIGON = "p digraph 2 2\na 0 1\na 1 0\n"
PATH_DAG = "p digraph 3 2\na 0 1\na 1 2\n"


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_triangle(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", TRIANGLE)
    code, out, _ = run(capsys, "analyze", dg)
    assert code == 0
    assert "cycle-degrees 1 1 1" in out
    assert "degeneracy-c 1" in out
    assert "avg-cycle-degree 1" in out


def test_analyze_json_is_one_line(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", TRIANGLE)
    code, out, _ = run(capsys, "analyze", dg, "--json")
    assert code == 0
    assert out.count("\n") == 1
    data = json.loads(out)
    assert list(data) == [
        "vertices",
        "arcs",
        "digons",
        "cycle_degrees",
        "degeneracy",
        "avg_cycle_degree",
    ]
    assert data["cycle_degrees"] == [1, 1, 1]


def test_missing_file_is_an_io_error(tmp_path, capsys):
    code, _, err = run(capsys, "analyze", str(tmp_path / "nope.dg"))
    assert code == 1
    assert err.startswith("redico: io error:")


def test_parse_error_exit_code(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", "p digraph 2 5\na 0 1\n")
    code, _, err = run(capsys, "analyze", dg)
    assert code == 1
    assert "redico: parse error:" in err
    assert "\n" == err[-1] and err.count("\n") == 1


def test_dicolour_methods(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", TRIANGLE)
    out_col = str(tmp_path / "c.col")
    code, out, _ = run(capsys, "dicolour", dg, "--method", "exact", "-o", out_col)
    assert code == 0
    assert "dichromatic-number 2" in out
    text = (tmp_path / "c.col").read_text()
    assert text.startswith("k 2\n")
    code, out, _ = run(capsys, "dicolour", dg, "--method", "greedy")
    assert code == 0
    assert "colours 2" in out
    code, out, _ = run(capsys, "dicolour", dg, "--method", "digrundy")
    assert code == 0
    assert "digrundy 2" in out


def test_dicolour_digrundy_has_no_colouring_to_write(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", TRIANGLE)
    code, _, err = run(
        capsys, "dicolour", dg, "--method", "digrundy", "-o", str(tmp_path / "x")
    )
    assert code == 2
    assert "precondition" in err


def test_oracle_frozen_digon(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", DIGON)
    code, out, _ = run(capsys, "oracle", dg, "-k", "2")
    assert code == 0
    assert "dicolourings 2" in out
    assert "connected no" in out
    assert "frozen 2" in out
    assert "components 2" in out
    code, out, _ = run(capsys, "oracle", dg, "-k", "2", "--json")
    data = json.loads(out)
    assert data["diameter"] is None
    assert data["component_diameters"] == [0, 0]


def test_oracle_skips_diameter_above_the_sweep_cap(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", PATH_DAG)
    code, out, _ = run(capsys, "oracle", dg, "-k", "30")
    assert code == 0
    assert "dicolourings 27000" in out
    assert "connected yes" in out
    assert "diameter skipped" in out
    code, out, _ = run(capsys, "oracle", dg, "-k", "30", "--json")
    data = json.loads(out)
    assert data["connected"] is True
    assert data["diameter"] is None


def test_oracle_shortest_sequence(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", TRIANGLE)
    a = write(tmp_path, "a.col", "k 3\nv 0 1\nv 1 2\nv 2 1\n")
    b = write(tmp_path, "b.col", "k 3\nv 0 2\nv 1 1\nv 2 2\n")
    seq_path = str(tmp_path / "s.seq")
    code, out, _ = run(
        capsys, "oracle", dg, "-k", "3", "--from", a, "--to", b, "-o", seq_path
    )
    assert code == 0
    assert "reachable yes" in out
    text = (tmp_path / "s.seq").read_text()
    assert text.startswith("k 3\nv 0 1\n")
    code, out, _ = run(capsys, "check", dg, seq_path)
    assert code == 0
    assert "final 2 1 2" in out


def test_oracle_from_needs_to(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", TRIANGLE)
    a = write(tmp_path, "a.col", "k 3\nv 0 1\nv 1 2\nv 2 1\n")
    code, _, err = run(capsys, "oracle", dg, "-k", "3", "--from", a)
    assert code == 2
    assert "--from and --to" in err


def test_oracle_dot_export(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", DIGON)
    dot = tmp_path / "g.dot"
    code, _, _ = run(capsys, "oracle", dg, "-k", "2", "--dot", str(dot))
    assert code == 0
    text = dot.read_text()
    assert text.startswith("graph dicolourings {")
    assert 's0 [label="1 2"];' in text
    assert text.count("--") == 0  # both digon colourings are frozen


def test_recolour_engines_on_the_triangle(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", TRIANGLE)
    a = write(tmp_path, "a.col", "k 3\nv 0 1\nv 1 1\nv 2 2\n")
    b = write(tmp_path, "b.col", "k 3\nv 0 2\nv 1 3\nv 2 3\n")
    for engine in ("simple", "quadratic", "partition", "digrundy"):
        code, out, _ = run(capsys, "recolour", dg, a, b, "--engine", engine)
        assert code == 0, engine
        assert f"engine {engine}" in out
        assert "length " in out and "max-recolourings " in out


def test_recolour_bounded_on_a_dag_moves_each_vertex_once(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", PATH_DAG)
    a = write(tmp_path, "a.col", "k 2\nv 0 1\nv 1 1\nv 2 1\n")
    b = write(tmp_path, "b.col", "k 2\nv 0 2\nv 1 2\nv 2 2\n")
    seq_path = str(tmp_path / "s.seq")
    code, out, _ = run(
        capsys, "recolour", dg, a, b, "--engine", "bounded", "-o", seq_path
    )
    assert code == 0
    assert "max-recolourings 1" in out
    code, out2, _ = run(capsys, "check", dg, seq_path)
    assert code == 0
    assert "max-recolourings 1" in out2
    assert "final 2 2 2" in out2


def test_recolour_report_matches_check_report(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", TRIANGLE)
    a = write(tmp_path, "a.col", "k 3\nv 0 1\nv 1 1\nv 2 2\n")
    b = write(tmp_path, "b.col", "k 3\nv 0 3\nv 1 2\nv 2 2\n")
    seq_path = str(tmp_path / "s.seq")
    code, out, _ = run(
        capsys, "recolour", dg, a, b, "--engine", "simple", "--json", "-o", seq_path
    )
    assert code == 0
    engine_report = json.loads(out)
    code, out, _ = run(capsys, "check", dg, seq_path, "--json")
    assert code == 0
    replay_report = json.loads(out)
    assert replay_report["moves"] == engine_report["length"]
    assert replay_report["max_recolourings"] == engine_report["max_recolourings"]
    assert replay_report["final"] == [3, 2, 2]


def test_recolour_mad_engine(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", PATH_DAG)
    a = write(tmp_path, "a.col", "k 3\nv 0 1\nv 1 1\nv 2 1\n")
    b = write(tmp_path, "b.col", "k 3\nv 0 2\nv 1 1\nv 2 2\n")
    code, out, _ = run(
        capsys, "recolour", dg, a, b, "--engine", "mad",
        "--mad-d", "1", "--mad-epsilon", "1",
    )
    assert code == 0
    assert "engine mad" in out
    code, _, err = run(capsys, "recolour", dg, a, b, "--engine", "mad")
    assert code == 2
    assert "--mad-d" in err


def test_recolour_ug_engine(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", TRIANGLE)
    a = write(tmp_path, "a.col", "k 3\nv 0 1\nv 1 1\nv 2 2\n")
    g = write(tmp_path, "g.col", "k 3\nv 0 1\nv 1 2\nv 2 3\n")
    code, out, _ = run(capsys, "recolour", dg, a, g, "--engine", "ug")
    assert code == 0
    assert "engine ug" in out


def test_recolour_precondition_exit(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", TRIANGLE)
    a = write(tmp_path, "a.col", "k 2\nv 0 1\nv 1 1\nv 2 2\n")
    b = write(tmp_path, "b.col", "k 2\nv 0 2\nv 1 1\nv 2 1\n")
    code, _, err = run(capsys, "recolour", dg, a, b, "--engine", "simple")
    assert code == 2
    assert err.startswith("redico: precondition:")
    assert err.count("\n") == 1


def test_recolour_palette_widening(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", TRIANGLE)
    a = write(tmp_path, "a.col", "k 2\nv 0 1\nv 1 1\nv 2 2\n")
    b = write(tmp_path, "b.col", "k 2\nv 0 2\nv 1 1\nv 2 1\n")
    code, out, _ = run(capsys, "recolour", dg, a, b, "--engine", "simple", "-k", "3")
    assert code == 0
    assert "engine simple" in out
    code, _, err = run(capsys, "recolour", dg, a, b, "--engine", "simple", "-k", "1")
    assert code == 2
    assert "cannot shrink" in err


def test_check_rejects_an_invalid_sequence(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", DIGON)
    seq = write(tmp_path, "s.seq", "k 2\nv 0 1\nv 1 2\nm 1 1\n")
    code, _, err = run(capsys, "check", dg, seq)
    assert code == 2
    assert "precondition" in err


def test_dwidth_validate_and_make_valid(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", DIGON)
    split = write(tmp_path, "split.dd", "t 2\ne 0 1\nb 0 0\nb 1 1\n")
    code, out, _ = run(capsys, "dwidth", "validate", dg, split)
    assert code == 0
    assert "ok no" in out
    assert "violations 0 1" in out
    code, _, err = run(capsys, "dwidth", "make-valid", dg, split)
    assert code == 2
    assert "subtree-support" in err
    shared = write(tmp_path, "shared.dd", "t 2\ne 0 1\nb 0 0 1\nb 1 0 1\n")
    out_path = str(tmp_path / "fixed.dd")
    code, out, _ = run(capsys, "dwidth", "make-valid", dg, shared, "-o", out_path)
    assert code == 0
    assert "nodes-out 1" in out
    assert (tmp_path / "fixed.dd").read_text() == "t 1\nb 0 0 1\n"


def test_dwidth_validate_json(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", TRIANGLE)
    dd = write(tmp_path, "d.dd", "t 2\ne 0 1\nb 0 0 1\nb 1 1 2\n")
    code, out, _ = run(capsys, "dwidth", "validate", dg, dd, "--json")
    assert code == 0
    data = json.loads(out)
    assert data == {
        "level": "full",
        "ok": True,
        "width": 1,
        "sets_checked": 4,
        "violations": [],
    }


def test_dwidth_search_triangle(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", TRIANGLE)
    out_path = str(tmp_path / "d.dd")
    code, out, _ = run(capsys, "dwidth", "search", dg, "-o", out_path)
    assert code == 0
    assert "width 1" in out
    assert (tmp_path / "d.dd").read_text() == "t 2\ne 0 1\nb 0 0 1\nb 1 1 2\n"


def test_dwidth_sequence_guided_and_blind(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", TRIANGLE)
    a = write(tmp_path, "a.col", "k 3\nv 0 1\nv 1 2\nv 2 1\n")
    b = write(tmp_path, "b.col", "k 3\nv 0 2\nv 1 3\nv 2 2\n")
    dd = write(tmp_path, "d.dd", "t 2\ne 0 1\nb 0 0 1\nb 1 1 2\n")
    seq_path = str(tmp_path / "s.seq")
    code, out, _ = run(
        capsys, "dwidth", "sequence", dg, a, b, "--dec", dd, "-o", seq_path
    )
    assert code == 0
    assert "bound 24" in out
    code, out2, _ = run(capsys, "check", dg, seq_path)
    assert code == 0
    assert "final 2 3 2" in out2
    code, out3, _ = run(capsys, "dwidth", "sequence", dg, a, b)
    assert code == 0
    assert "bound 24" in out3


def test_gen_random_is_seed_deterministic(tmp_path, capsys):
    code, out1, _ = run(capsys, "gen", "random", "-n", "6", "-p", "0.5", "--seed", "3")
    code2, out2, _ = run(capsys, "gen", "random", "-n", "6", "-p", "0.5", "--seed", "3")
    assert code == code2 == 0
    assert out1 == out2
    assert out1.startswith("p digraph 6 ")
    code, out3, _ = run(capsys, "gen", "random", "-n", "6", "-p", "0.5", "--seed", "4")
    assert out3 != out1
    code, _, err = run(capsys, "gen", "random", "-n", "3", "-p", "1.5")
    assert code == 2
    assert "outside [0, 1]" in err


def test_gen_bidirect(tmp_path, capsys):
    dg = write(tmp_path, "d.dg", PATH_DAG)
    code, out, _ = run(capsys, "gen", "bidirect", dg)
    assert code == 0
    assert out == "p digraph 3 4\na 0 1\na 1 0\na 1 2\na 2 1\n"


def test_gen_prop3(tmp_path, capsys):
    out_path = str(tmp_path / "p.dg")
    code, _, _ = run(capsys, "gen", "prop3", "-d", "1", "-o", out_path)
    assert code == 0
    text = (tmp_path / "p.dg").read_text()
    assert text.startswith("p digraph 4 8\n")
    code, _, err = run(capsys, "gen", "prop3", "-d", "9")
    assert code == 2
    assert "capped" in err
