import csv
import io
import json
import subprocess
import sys

import pytest

from eea.cli import main
from eea.constructions import cycle_algebra, petersen_algebra
from eea.io import read_algebra, write_algebra


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_petersen(capsys):
    code, out, _ = run(capsys, "gen", "petersen")
    doc = json.loads(out)
    assert code == 0 and doc["n"] == 10 and len(doc["entries"]) == 30
    assert doc["provenance"]["family"] == "petersen"
    assert doc["provenance"]["tool_version"]


def test_gen_is_deterministic(capsys):
    a = run(capsys, "gen", "random-regular", "--n", "12", "--d", "3", "--seed", "4")[1]
    b = run(capsys, "gen", "random-regular", "--n", "12", "--d", "3", "--seed", "4")[1]
    c = run(capsys, "gen", "random-regular", "--n", "12", "--d", "3", "--seed", "5")[1]
    assert a == b != c


def test_gen_dot(capsys):
    code, out, _ = run(capsys, "gen", "cycle", "--n", "6", "--format", "dot")
    assert code == 0 and out.startswith("graph G {") and "0 -- 5;" in out


def test_gen_then_analyze_round_trip(tmp_path, capsys):
    path = tmp_path / "c6.json"
    assert run(capsys, "gen", "cycle", "--n", "6", "--field", "rational", "--out", str(path))[0] == 0
    assert read_algebra(path) == cycle_algebra(6)
    code, out, _ = run(capsys, "analyze", "--input", str(path))
    rep = json.loads(out)
    assert code == 0 and rep["cheeger"]["h"] == "2/3"


def test_analyze_petersen(capsys):
    code, out, _ = run(capsys, "analyze", "petersen")
    rep = json.loads(out)
    assert rep["cheeger"]["h"] == "1/1"
    assert rep["spectrum"]["eigenvalues"][1] == pytest.approx(1.0)
    assert rep["ramanujan"]["ramanujan"] is True
    assert rep["persistency"]["trivial_hierarchy"] is True
    assert rep["degraded"] == []


def test_analyze_direct_sum(tmp_path, capsys):
    code, out, _ = run(capsys, "analyze", "dsum", "--factor", "cycle:3", "--factor", "cycle:4")
    rep = json.loads(out)
    assert rep["graph"]["connected"] is False and rep["cheeger"]["h"] == "0/1"


def test_analyze_table(capsys):
    code, out, _ = run(capsys, "analyze", "cycle", "--n", "5", "--format", "table")
    assert code == 0 and "graph.diameter: 2" in out


def test_analyze_degrades_for_large_n(capsys):
    code, out, _ = run(capsys, "analyze", "cycle", "--n", "40", "--cap", "20")
    rep = json.loads(out)
    assert rep["cheeger"]["method"] == "spectral-bounds-only"
    assert any("spectral bounds" in x for x in rep["degraded"])


def test_certify_exit_codes(capsys):
    assert run(capsys, "certify", "petersen", "--h", "1")[0] == 0
    code, out, _ = run(capsys, "certify", "cycle", "--n", "6", "--h", "1")
    assert code == 1 and json.loads(out)["witness"] == [0, 1, 2]
    code, out, _ = run(capsys, "certify", "cycle", "--n", "40", "--h", "1/10", "--cap", "20")
    assert code == 3 and json.loads(out)["inconclusive"] is True


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "certify", "petersen")[0] == 2
    assert run(capsys, "gen", "cycle")[0] == 2
    assert run(capsys, "gen", "nonsense")[0] == 2
    assert run(capsys, "analyze")[0] == 2
    assert run(capsys, "analyze", "petersen", "--input", "x.json")[0] == 2
    assert run(capsys, "analyze", "--input", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "analyze", "--input", str(bad))[0] == 2
    assert run(capsys, "gen", "petersen", "--cap", "0")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "mix", "petersen")[0] == 2


def test_resource_cap_exit(capsys):
    # spectral upper bound for C_30 is below 1, so the fallback certifies false
    assert run(capsys, "certify", "cayley-cyclic", "--n", "30", "--h", "1", "--cap", "10")[0] == 1
    # an irregular graph above the cap has no fallback
    code = run(capsys, "certify", "dsum", "--factor", "cycle:20", "--factor", "complete:5", "--h", "1", "--cap", "10")[0]
    assert code == 4


def test_mix_petersen_csv(capsys):
    code, out, err = run(capsys, "mix", "petersen", "--stochastic", "--eps", "0.01")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["k", "distance", "paper_bound", "corrected_bound"]
    assert len(rows) == 62
    assert float(rows[1][1]) == pytest.approx(1.8)
    summary = json.loads(err)
    assert summary["empirical_tmix"] <= summary["tmix_bound"]


def test_mix_c4_periodic(capsys):
    code, out, _ = run(capsys, "mix", "cycle", "--n", "4", "--stochastic", "--format", "json")
    doc = json.loads(out)
    assert doc["empirical_tmix"] is None and doc["periodic"] is True


def test_mix_large_eps(capsys):
    code, out, _ = run(capsys, "mix", "cycle", "--n", "5", "--stochastic", "--eps", "2", "--format", "json")
    assert json.loads(out)["empirical_tmix"] == 0


def test_audit_exit_codes(capsys):
    code, out, _ = run(capsys, "audit", "petersen")
    assert code == 0 and json.loads(out)["assertable_failures"] == 0
    code, out, _ = run(capsys, "audit", "kron", "--factor", "cycle:4", "--factor", "cycle:4", "--format", "table")
    assert code == 0 and "Thm9.6" in out and "FINDING" in out


def test_audit_sweep(capsys):
    code, out, _ = run(capsys, "audit", "random-regular", "--n", "10", "--d", "3", "--sweep", "3")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0][:2] == ["seed", "theorem"]
    assert {r[0] for r in rows[1:]} <= {"0", "1", "2"}


def test_audit_is_deterministic(capsys):
    a = run(capsys, "audit", "random-regular", "--n", "12", "--d", "3", "--seed", "2")[1]
    b = run(capsys, "audit", "random-regular", "--n", "12", "--d", "3", "--seed", "2")[1]
    assert a == b


def test_audit_input_file(tmp_path, capsys):
    path = tmp_path / "p.json"
    write_algebra(petersen_algebra(), path)
    assert run(capsys, "audit", "--input", str(path))[0] == 0


def test_all_families_build(capsys):
    argsets = [
        ["cycle", "--n", "5"], ["complete", "--n", "4"], ["petersen"],
        ["cayley-cyclic", "--n", "6"], ["cayley-dihedral", "--n", "4"], ["cayley-sym", "--n", "3"],
        ["cayley-sl2", "--p", "3"], ["kron", "--factor", "complete:3", "--factor", "cycle:3"],
        ["dsum", "--factor", "petersen", "--factor", "random-regular:6:3"],
        ["random-regular", "--n", "8", "--d", "3"],
    ]
    for a in argsets:
        code, out, err = run(capsys, "gen", *a)
        assert code == 0, (a, err)
        assert json.loads(out)["n"] > 0


def test_prime_field_gen(capsys):
    code, out, _ = run(capsys, "gen", "cycle", "--n", "3", "--field", "prime:2")
    assert json.loads(out)["field"] == {"kind": "prime", "p": 2}


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "eea.cli", "certify", "petersen", "--h", "1"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["holds"] is True
