import json
import subprocess
import sys

import pytest

from quinticslice import golden
from quinticslice.cli import main


def run(*argv):
    return main(list(argv) + ["--workers", "1"])


def test_verify(capsys):
    assert run("verify") == 0
    out = capsys.readouterr().out
    assert "[PASS] B_factorization_2^9_3^5_5^5" in out
    assert out.strip().endswith("identities hold")


def test_verify_json(tmp_path):
    path = tmp_path / "v.json"
    assert run("verify", "--quiet", "--json", str(path)) == 0
    d = json.loads(path.read_text())
    assert d["status"] == "pass" and d["tool"] == "quinticslice"
    assert d["fixture_sha256"] == golden.load()["_sha256"]
    assert all(r["passed"] for r in d["results"]["identities"])
    assert "timing_seconds" not in d


def test_tampered_fixture_exits_1(tmp_path, capsys):
    fx = json.loads(golden.fixture_path().read_text())
    fx["B_explicit"] = fx["B_explicit"].replace("388800000", "388800001")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(fx))
    assert run("verify", "--quiet", "--fixtures", str(bad)) == 1
    err = capsys.readouterr().err
    assert "[FAIL] B_explicit" in err and "residue" in err


def test_missing_fixture_exits_1(tmp_path):
    assert run("verify", "--fixtures", str(tmp_path / "nope.json")) == 1


def test_inadmissible_search_is_usage_error(capsys):
    assert run("search", "--h", "29", "--smax", "10") == 2
    assert "30" in capsys.readouterr().err


def test_inadmissible_search_allowed():
    assert run("search", "--h", "29", "--smax", "10", "--allow-inadmissible", "--quiet") == 0


def test_bad_range_is_usage_error():
    assert run("search", "--h", "30", "--smin", "10", "--smax", "5") == 2


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["search", "--h", "x"])
    assert exc.value.code == 2


def test_search_json_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("search", "--h", "30", "--smax", "150", "--json", str(a), "--quiet") == 0
    assert main(["search", "--h", "30", "--smax", "150", "--json", str(b), "--quiet", "--workers", "3"]) == 0
    assert a.read_bytes() == b.read_bytes()
    d = json.loads(a.read_text())
    assert d["results"]["nontrivial"] == [] and d["results"]["mdo_admissible"]


def test_search_csv(tmp_path):
    path = tmp_path / "cells.csv"
    assert run("search", "--h", "30", "--smax", "20", "--csv", str(path), "--quiet") == 0
    assert path.read_text().splitlines()[1].endswith("FailNonnegZ")


def test_screen_report(tmp_path):
    path = tmp_path / "s.json"
    assert run("screen", "--lo", "1", "--hi", "30", "--torsion", "--quiet", "--json", str(path)) == 0
    d = json.loads(path.read_text())["results"]
    assert d["divisor_count"] == 11
    assert d["reference_list"]["all_injective"]
    rows = d["specialization_table"]["rows"]
    assert [r["S0"] for r in rows] == d["reference_list"]["values"]
    assert all(r["torsion_certified"] == "Z/2" for r in rows)
    assert d["specialization_table"]["provenance"].startswith("external")
    assert "rank_external" in rows[0] and "rank" not in rows[0]


def test_genus2_scan(capsys):
    assert run("genus2-scan", "--height", "30") == 0
    assert capsys.readouterr().out.split("\n")[:3] == ["(1 : -5 : 0)", "(1 : 5 : 0)", "(0 : 0 : 1)"]


def test_p_screen(tmp_path):
    path = tmp_path / "p.json"
    assert run("p-screen", "--smax", "10", "--hmax", "60", "--delta2-max", "100", "--json", str(path), "--quiet") == 0
    d = json.loads(path.read_text())["results"]
    assert d["p_grid"] == {"tested": 80, "squares": []}
    assert d["delta2"]["tested"] == 100


def test_oracle_json_stdout(capsys):
    assert run("oracle", "--k", "3", "--bound", "20", "--cross-check-h", "30", "--smax", "60", "--quiet", "--json", "-") == 0
    d = json.loads(capsys.readouterr().out)
    assert [c["h"] for c in d["results"]["collisions"]] == [6, 6]
    assert d["results"]["cross_check"]["ok"]


def test_timing_flag(capsys):
    assert run("oracle", "--k", "5", "--bound", "10", "--quiet", "--timing", "--json", "-") == 0
    assert "timing_seconds" in json.loads(capsys.readouterr().out)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "quinticslice", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "0.1.0"
