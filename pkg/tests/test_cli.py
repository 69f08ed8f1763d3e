import csv
import io
import json
import subprocess
import sys

import pytest

from ssplab.cli import ConfigError, main, parse_primes, parse_schedule, resolve_threads


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_hasse_full_range(capsys):
    code, out = run(capsys, "hasse", "--max-p", "499", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1 and data["pass"]
    assert len(data["results"]) == 94


def test_hasse_single_prime(capsys):
    code, out = run(capsys, "hasse", "--max-p", "3")
    assert code == 0 and json.loads(out)["results"] == {"3": True}


def test_hasse_invalid_range(capsys):
    code, _ = run(capsys, "hasse", "--max-p", "2")
    assert code == 2


def test_verify_pde(capsys):
    code, out = run(capsys, "verify-pde", "--primes", "3,5,7")
    data = json.loads(out)
    assert code == 0
    assert [r["p"] for r in data["reports"]] == [3, 5, 7]
    assert all(r["theorem_A"]["pass"] and r["theorem_A"]["residuals"] == [] for r in data["reports"])


def test_verify_mult_one(capsys):
    code, out = run(capsys, "verify-mult-one", "--primes", "5", "--ext", "2,4")
    rep = json.loads(out)["reports"][0]
    assert code == 0 and rep["radical"] is True and rep["counts_match"] is True


def test_verify_mult_one_incomplete(capsys):
    code, out = run(capsys, "verify-mult-one", "--primes", "7", "--ext", "1")
    assert code == 3
    assert json.loads(out)["reports"][0]["incomplete_enumeration"] is True


def test_locus_p3_empty_table(capsys):
    code, out = run(capsys, "locus", "--primes", "3", "--format", "csv")
    assert code == 0
    assert out.strip().splitlines() == ["p,k,lambda1,lambda2,lambda3,rank"]


def test_locus_csv(capsys):
    code, out = run(capsys, "locus", "--primes", "5", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 6
    assert all(r["rank"] == "3" and r["k"] == "2" for r in rows)
    assert all("," not in r["lambda1"] and "*t" in r["lambda1"] for r in rows)


def test_check_expectation_exit_zero(capsys):
    code, out = run(capsys, "check-expectation", "--primes", "3,5")
    data = json.loads(out)
    assert code == 0 and [r["status"] for r in data["reports"]] == ["PASS", "PASS"]


def test_other_commands(capsys):
    assert run(capsys, "cm", "--primes", "3")[0] == 0
    code, out = run(capsys, "lauricella", "--primes", "5", "-i", "2", "-j", "2")
    entry = json.loads(out)["reports"][0]["entries"][0]
    assert code == 0 and entry["d_prime"] == 2 and entry["size"] == 10 and entry["matches_cm"]
    code, out = run(capsys, "verify-contiguity", "--primes", "3-7", "--format", "text")
    assert code == 0 and out.count("PASS") == 3


def test_invalid_primes(capsys):
    assert run(capsys, "locus", "--primes", "4")[0] == 2
    assert run(capsys, "locus", "--primes", "5", "--ext", "4,2")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify-pde", "--format", "xml"])
    assert exc.value.code == 2


def test_json_is_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify-mult-one", "--primes", "5,7", "--out", str(a)]) == 0
    assert main(["verify-mult-one", "--primes", "5,7", "--out", str(b), "--threads", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out == ""


def test_env_threads(monkeypatch):
    monkeypatch.setenv("SSPLAB_THREADS", "3")
    assert resolve_threads(1) == 3
    monkeypatch.setenv("SSPLAB_THREADS", "zero")
    with pytest.raises(ConfigError):
        resolve_threads(None)
    monkeypatch.delenv("SSPLAB_THREADS")
    assert resolve_threads(None) == 1
    with pytest.raises(ConfigError):
        resolve_threads(0)


def test_parsers():
    assert parse_primes("3-13") == (3, 5, 7, 11, 13)
    assert parse_primes("7,3") == (3, 7)
    for bad in ("", "2", "3,3", "x", "14-16"):
        with pytest.raises(ConfigError):
            parse_primes(bad)
    assert parse_schedule("2,4") == (2, 4)
    for bad in ("0", "2,2", "a"):
        with pytest.raises(ConfigError):
            parse_schedule(bad)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ssplab", "hasse", "--max-p", "7", "--format", "text"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "PASS" in proc.stdout
