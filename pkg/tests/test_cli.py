from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from finmagnus.cli.main import execute


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = execute(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_check_m9_json():
    code, out, _ = run("check", "M9", "--json")
    d = json.loads(out)
    assert code == 0
    assert list(d)[:3] == ["schema", "expr", "order"]
    assert d["schema"] == 1 and d["mp"] is True and d["smp"] is True
    assert d["aCount"] == d["bCount"]


def test_check_c12_witness():
    code, out, _ = run("check", "C(12)", "--json")
    d = json.loads(out)
    assert code == 0
    assert d["mp"] is False and len(d["witness"]) == 2


def test_check_text_mentions_witness():
    _, out, _ = run("check", "C12")
    assert "witness" in out


def test_parse_error_exit_2():
    code, _, err = run("check", "C(")
    assert code == 2
    assert "offset 2" in err


def test_unknown_claim_exit_2():
    assert run("verify", "nonsense")[0] == 2


def test_bad_q_exit_2():
    assert run("search", "gammal1", "--q", "6")[0] == 2


def test_missing_subcommand_exit_2():
    assert run()[0] == 2


def test_verify_power23_exit_0():
    code, out, _ = run("verify", "power23")
    assert code == 0
    assert "PASS" in out


def test_verify_json_byte_identical():
    a = run("verify", "degree-bound", "--json")[1]
    b = run("verify", "degree-bound", "--json")[1]
    assert a == b
    assert "runtime" not in json.loads(a)


def test_verify_timing_flag_adds_runtime():
    d = json.loads(run("verify", "power23", "--json", "--timing")[1])
    assert list(d)[-1] == "runtime"


def test_invariants_json():
    code, out, _ = run("invariants", "S(4)", "--json")
    d = json.loads(out)
    assert code == 0
    assert d["order"] == 24 and d["fittingHeight"] == 3
    assert sorted(d["chiefFactorOrders"]) == [2, 3, 4]
    assert {r["p"]: (r["r"], r["S"], r["j"]) for r in d["primes"]} == {2: (2, 2, 2), 3: (1, 1, 1)}


def test_invariants_nonsolvable():
    d = json.loads(run("invariants", "A(5)", "--json")[1])
    assert d["solvable"] is False and d["chiefFactorOrders"] is None


def test_search_rows_json():
    code, out, _ = run("search", "gammal1", "--q", "9", "--json")
    rows = json.loads(out)["rows"]
    assert code == 0
    assert sum(r["mp"] for r in rows) == 1


def test_cache_dir_gives_same_rows(tmp_path, monkeypatch):
    monkeypatch.setenv("MAGNUS_CACHE_DIR", str(tmp_path))
    first = run("search", "gammal1", "--q", "16", "--json")[1]
    assert list(tmp_path.iterdir())
    second = run("search", "gammal1", "--q", "16", "--json")[1]
    monkeypatch.delenv("MAGNUS_CACHE_DIR")
    third = run("search", "gammal1", "--q", "16", "--json")[1]
    assert first == second == third


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "finmagnus.cli.main", "check", "S3"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "True" in res.stdout


@pytest.mark.parametrize("argv", [["verify", "power23", "--jobs", "2"]])
def test_jobs_flag_accepted(argv):
    assert run(*argv)[0] == 0
