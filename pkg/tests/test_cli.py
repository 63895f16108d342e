from __future__ import annotations

import json
import subprocess
import sys

import pytest

from dedekind.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_factor_prime(capsys):
    code, doc = run(capsys, "factor-prime", "gauss", "5")
    assert code == 0 and doc["status"] == "ok"
    primes = doc["result"]["primes"]
    assert len(primes) == 2 and all(P["e"] == "1" and P["f"] == "1" for P in primes)


def test_field_file(capsys, tmp_path):
    from dedekind.fieldspec import write_catalog

    write_catalog(tmp_path)
    code, doc = run(capsys, "factor-prime", str(tmp_path / "gauss.field"), "3")
    assert code == 0 and doc["result"]["primes"][0]["f"] == "2"


def test_closure_and_approx(capsys):
    code, doc = run(capsys, "closure-member", "gauss", "--prime-over", "3", "--element", "0,1", "--verify")
    assert code == 0 and doc["result"]["member"] is False
    code, doc = run(capsys, "approx", "gauss", "--prime-over", "5", "--index", "0", "--element", "0,1", "--level", "3")
    assert code == 0 and doc["result"]["member"] is True


def test_other_commands(capsys):
    for argv in (
        ["valuation", "gauss", "--prime-over", "2", "--element", "1,1"],
        ["decomposition-field", "biquad", "--prime-over", "7"],
        ["frobenius", "gauss", "--prime-over", "3"],
        ["chebotarev", "gauss", "--bound", "100"],
        ["probe", "gauss", "--element", "0,1"],
        ["witness", "gauss", "--prime-over", "3", "--element", "0,1", "--verify"],
        ["int-member", "--poly", "0,-1/2,1/2"],
        ["image", "gauss", "--element", "0,1", "--budget", "10"],
        ["ge2-search", "--ring", "Z", "5", "3"],
    ):
        code, doc = run(capsys, *argv)
        assert code == 0, argv
        assert doc["command"] == argv[0]


def test_ge2_round_trip(capsys, tmp_path):
    code, doc = run(capsys, "ge2-reduce", "--ring", "Z", "5", "3")
    assert code == 0 and doc["result"]["end"] == ["1", "0"]
    f = tmp_path / "trace.json"
    f.write_text(json.dumps(doc))
    code, doc = run(capsys, "ge2-verify", "--ring", "Z", "--trace", str(f))
    assert code == 0 and doc["result"]["valid"] is True


def test_exit_codes(capsys):
    assert main(["nosuch"]) == 1
    assert main(["factor-prime", "gauss"]) == 1
    capsys.readouterr()
    code, doc = run(capsys, "factor-prime", "biquad", "2")
    assert code == 2 and doc["status"] == "error" and doc["error"] == "index-divisor-unsupported"
    code, doc = run(capsys, "ge2-reduce", "--ring", "Z", "4", "6")
    assert code == 2 and doc["error"] == "not-unimodular"
    code, doc = run(capsys, "int-member", "--poly", "0,-1/2,1/2", "--cap", "1")
    assert code == 3
    code, doc = run(capsys, "ge2-search", "--ring", "O(-5)", "--depth", "8", "--height", "3", "--cap", "500", "-3", "0,2")
    assert code == 3 and doc["error"] == "search-cap"


def test_deterministic_output():
    argv = [sys.executable, "-m", "dedekind", "--seed", "5", "factor-prime", "zeta5", "11"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a
