import json

import pytest

from almostembed.cli import BadInput, main, parse_cycles
from almostembed.io import dumps, drawing_to_dict
from almostembed.moves import pentagon_k5, triangle_with_centre


@pytest.fixture
def drawing_file(tmp_path):
    p = tmp_path / "tri.json"
    p.write_text(dumps(drawing_to_dict(triangle_with_centre())))
    return p


def run(capsys, *argv):
    code = main(["-q", *map(str, argv)])
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(capsys, drawing_file, tmp_path):
    code, out, _ = run(capsys, "validate", drawing_file)
    assert code == 0 and "grade: AlmostEmbedding" in out and "violations: 0" in out
    p = tmp_path / "k5.json"
    p.write_text(dumps(drawing_to_dict(pentagon_k5())))
    code, out, _ = run(capsys, "validate", p)
    assert "grade: WeakAlmostEmbedding" in out and "violations: 5" in out


def test_invariants_and_cycle_filter(capsys, drawing_file):
    code, out, _ = run(capsys, "invariants", drawing_file)
    rep = json.loads(out)
    assert code == 0 and rep["Wf"] == 1 and rep["wf"]["C=123,v=4"] == 1
    code, out, _ = run(capsys, "invariants", drawing_file, "--cycles", "1-2-3:v=4;2-3-4")
    assert json.loads(out)["wf"] == {"C=123,v=4": 1, "C=234,v=1": 0}


def test_parse_cycles():
    assert parse_cycles("all") == (None, {})
    assert parse_cycles("1-2-3:v=4") == ([(1, 2, 3)], {(1, 2, 3): {4}})
    for bad in ("1-2", "1-x-3", "1-2-3:w=4"):
        with pytest.raises(BadInput):
            parse_cycles(bad)


def test_gen_then_invariants(capsys, tmp_path):
    out_file = tmp_path / "g.json"
    code, _, _ = run(capsys, "gen", "ex5.10", "--n", "0,0,0,1", "-o", out_file)
    assert code == 0
    code, out, _ = run(capsys, "invariants", out_file)
    assert json.loads(out)["Wf"] == 1
    code, out, _ = run(capsys, "gen", "ex6.3", "--n", "2", "-o", out_file)
    code, out, _ = run(capsys, "invariants", out_file)
    assert json.loads(out)["wu"]["triod(41,42,43)"] == 5


def test_gen_polylines_and_svg(capsys, tmp_path):
    doc_file = tmp_path / "p.json"
    run(capsys, "gen", "ex1.7", "--n", "1,2", "-o", doc_file)
    doc = json.loads(doc_file.read_text())
    assert list(doc["polylines"]) == ["l1", "l2", "l3"] and doc["O"] == ["2", "-2"]
    code, out, _ = run(capsys, "svg", doc_file)
    assert code == 0 and out.startswith("<?xml")


def test_gen_random_is_seeded(capsys):
    _, a, _ = run(capsys, "gen", "rand-ae", "--template", "C4", "--seed", "5")
    _, b, _ = run(capsys, "gen", "rand-ae", "--template", "C4", "--seed", "5")
    assert a == b and json.loads(a)["graph"]["n"] == 4


def test_bad_input_exit_codes(capsys, tmp_path):
    assert run(capsys, "validate", tmp_path / "missing.json")[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text('{"graph": 3}')
    assert run(capsys, "validate", bad)[0] == 1
    assert run(capsys, "gen", "ex3.4", "--n", "1,2")[0] == 1
    assert run(capsys, "gen", "ex5.10", "--n", "0,0,0,0")[0] == 1
    assert run(capsys, "gen", "rand", "--graph", "K9")[0] == 1
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "sweep", "--target", "T5.2", "--samples", "0")[0] == 1


def test_sweep_table_and_json(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "sweep", "--target", "T5.2", "--samples", "12", "--seed", "3", "--json", report)
    assert code == 0 and "T5.2" in out
    doc = json.loads(report.read_text())
    assert doc["violations"] == [] and doc["samplesRun"] == 12
    code, out, _ = run(capsys, "sweep", "--target", "T5.2", "--samples", "12", "--seed", "3", "--json", "-")
    assert json.loads(out) == doc


def test_workers_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("ALMOSTEMBED_WORKERS", "two")
    assert run(capsys, "sweep", "--target", "T1.8", "--samples", "2")[0] == 1


def test_search_writes_report(capsys, tmp_path):
    out_file = tmp_path / "s.json"
    code, _, _ = run(capsys, "search", "--conjecture", "C5.3", "--budget", "20", "--targets", "0,0,0,1", "-o", out_file)
    doc = json.loads(out_file.read_text())
    assert code == 0 and doc["noWitnessWithinBudget"] == []
    assert run(capsys, "search", "--conjecture", "C5.3", "--targets", "0,0,0,0")[0] == 1


def test_link3d(capsys, tmp_path):
    code, out, _ = run(capsys, "link3d", "cgs")
    doc = json.loads(out)
    assert code == 0 and doc["oddPairs"] == ["135|246"] and doc["lk"]["135|246"] == -1
    curves = tmp_path / "c.json"
    curves.write_text(json.dumps({"curves": [
        [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]],
        [["1/4", "1/8", -1], ["1/4", "1/8", 1], ["5/2", "3/7", 1], ["5/2", "3/7", -1]],
    ]}))
    code, out, _ = run(capsys, "link3d", "lk", curves)
    assert code == 0 and out.strip() == "1"
    assert run(capsys, "link3d", "lk")[0] == 1
    code, out, _ = run(capsys, "link3d", "gen-8.2a", "--n", "1")
    assert code == 0 and json.loads(out)["designatedPair"] == [[1, 3, 5], [2, 4, 6]]


def test_config_is_logged_unless_quiet(capsys, drawing_file):
    main(["validate", str(drawing_file)])
    assert "resolved arguments" in capsys.readouterr().err
