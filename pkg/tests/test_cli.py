import csv
import io as stdio
import json

import pytest

from hrss import io
from hrss.cli import BENCH_COLUMNS, main
from hrss.model import fixture_fig1, fixture_tight
from hrss.solve import ALGORITHMS, solve


def run(*argv):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    fig1 = tmp_path / "fig1.hrss"
    fig1.write_text(io.serialize(fixture_fig1()))
    tight = tmp_path / "tight.hrss"
    tight.write_text(io.serialize(fixture_tight()))
    return tmp_path, str(fig1), str(tight)


def test_solve_brute_fig1(files):
    _, fig1, _ = files
    code, out, err = run("solve", "--algo", "brute", fig1)
    assert code == 0
    assert out.splitlines()[:4] == ["match m1 w1", "match m2 w2", "size 2", "socially-stable true"]
    assert err.startswith("time ")


def test_solve_tight(files):
    _, _, tight = files
    assert "size 2\n" in run("solve", "--algo", "approx", tight)[1]
    assert "size 3\n" in run("solve", "--algo", "two-inf", tight)[1]


@pytest.mark.parametrize("algo", ALGORITHMS)
def test_solve_byte_identical(files, algo):
    _, _, tight = files
    assert run("solve", "--algo", algo, tight)[1] == run("solve", "--algo", algo, tight)[1]


def test_trace_goes_to_stderr(files):
    _, fig1, _ = files
    code, out, err = run("solve", "--algo", "approx", "--trace", fig1)
    assert code == 0 and "trace" not in out
    assert "trace propose man=m1 woman=w1::1" in err


def test_exit_codes(files, tmp_path, monkeypatch):
    _, fig1, tight = files
    bad = tmp_path / "bad.hrss"
    bad.write_text("hrss 1\nresident r1\n")
    assert run("solve", "--algo", "stable", str(bad))[0] == 2
    assert run("solve", "--algo", "stable", str(tmp_path / "missing"))[0] == 2
    assert run("solve", "--algo", "fpt-a", "--max-acquainted", "1", tight)[0] == 3
    three = tmp_path / "three.hrss"
    three.write_text(io.serialize(fixture_tight()).replace("pref m1: w1 w3", "pref m1: w1 w3 w2")
                     .replace("pref w2: m2 m3", "pref w2: m2 m3 m1"))
    assert run("solve", "--algo", "two-inf", str(three))[0] == 3
    monkeypatch.setenv("HRSS_BRUTE_LIMIT", "2")
    assert run("solve", "--algo", "brute", fig1)[0] == 3


def test_verify(files, tmp_path):
    _, fig1, _ = files
    m = tmp_path / "m.txt"
    m.write_text("match m1 w1\n")
    code, out, _ = run("verify", fig1, str(m))
    assert code == 0
    assert "blocking m2 w1 classical" in out and "blocking m2 w2 social" in out
    assert "socially-stable false" in out
    m.write_text("match m1 w2\n")
    assert run("verify", fig1, str(m))[0] == 2


def test_reduce_clone_and_hrsn(files, tmp_path):
    _, fig1, _ = files
    out_path = tmp_path / "c.hrss"
    assert run("reduce", "--to", "smiss-clone", "-o", str(out_path), fig1)[0] == 0
    assert io.parse(out_path.read_text()).hospitals == ("w1::1", "w2::1")
    assert io.parse_mapping((tmp_path / "c.hrss.map").read_text()) == {"w1::1": "w1", "w2::1": "w2"}
    code, out, _ = run("reduce", "--to", "hrsn", "--map", str(tmp_path / "d.map"), fig1)
    assert code == 0 and "friend m1 dummy::w1" in out
    assert io.parse_mapping((tmp_path / "d.map").read_text()) == {"dummy::w1": "w1", "dummy::w2": "w2"}


def test_reduce_from_smti_and_indset(tmp_path):
    smti = tmp_path / "s.smti"
    smti.write_text("smti 1\nman m\nwoman a\nwoman b\npref m: a b\npref a: m\npref b: m\n")
    code, out, _ = run("reduce", "--from", "smti", str(smti))
    assert code == 0 and io.parse(out).acquainted == {("m", "a")}
    g = tmp_path / "g.graph"
    g.write_text("graph 1\nvertex u\nvertex v\nedge u v\n")
    code, out, _ = run("reduce", "--from", "indset", "--map", str(tmp_path / "g.map"), str(g))
    assert code == 0 and len(io.parse(out).residents) == 4
    assert io.parse_mapping((tmp_path / "g.map").read_text())["w2_v"] == "v"
    smti.write_text("smti 1\nman m\n")
    assert run("reduce", "--from", "smti", str(smti))[0] == 2


def test_gen(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"seed": 4, "n1": 5, "n2": 3, "rho": 1.0}))
    code, out, _ = run("gen", str(spec))
    assert code == 0
    inst = io.parse(out)
    assert inst.acquainted == inst.acceptable
    assert run("gen", str(spec))[1] == out
    spec.write_text(json.dumps({"rho": 3}))
    assert run("gen", str(spec))[0] == 2


def test_bench(tmp_path):
    spec = tmp_path / "bench.json"
    spec.write_text(json.dumps({"n1": 4, "n2": 4, "count": 2, "rho": [0.0, 1.0], "algos": ["stable", "approx", "two-inf"]}))
    code, out, _ = run("bench", str(spec))
    assert code == 0
    rows = list(csv.DictReader(stdio.StringIO(out)))
    assert tuple(rows[0]) == BENCH_COLUMNS
    assert len(rows) == 2 * 2 * 3
    for row in rows:
        if row["status"] == "ok":
            assert row["socially_stable"] == "true"
            assert 2 * int(row["size"]) >= int(row["optimum"])
    strip = lambda rs: [{k: v for k, v in r.items() if k != "runtime_s"} for r in rs]
    code, par, _ = run("bench", "-j", "2", str(spec))
    assert strip(list(csv.DictReader(stdio.StringIO(par)))) == strip(rows)


def test_solve_report_fields():
    rep = solve(fixture_tight(), "approx")
    assert rep.size == 2 and rep.socially_stable and rep.deletions is not None
    with pytest.raises(ValueError):
        solve(fixture_tight(), "magic")
