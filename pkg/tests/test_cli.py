import json
import re

import pytest

from ramanujan_spectra.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sum_ramanujan(capsys):
    assert call(capsys, "sum", "ramanujan", "--q", "5", "--n", "0") == (0, "4\n", "")
    code, out, _ = call(capsys, "sum", "ramanujan", "--q", "6", "--n", "2", "--format", "json")
    assert json.loads(out) == {"q": 6, "n": 2, "value": -1}


def test_sum_kloosterman_exact(capsys):
    code, out, _ = call(capsys, "sum", "kloosterman", "--q", "5", "--m", "1", "--n", "1", "--exact")
    value, coeffs = out.strip().split("\n")
    assert code == 0
    assert float(value) == pytest.approx(0.381966011250)
    assert coeffs == "2 0 1 1 0"


def test_phitilde(capsys, tmp_path):
    assert call(capsys, "phitilde", "--q", "10")[:2] == (0, "2\n")
    code, out, _ = call(capsys, "phitilde", "--table", "--upto", "5")
    assert out.splitlines() == ["q,phi,phi_tilde,tau", "1,1,1,1", "2,1,1,2", "3,2,0,2", "4,2,0,3", "5,4,2,2"]
    path = tmp_path / "t.csv"
    assert call(capsys, "phitilde", "--table", "--upto", "5", "--out", str(path))[0] == 0
    assert path.read_text() == out
    assert call(capsys, "phitilde", "--table")[0] == 2


def test_matrix_stdout_and_file(capsys, tmp_path):
    code, out, _ = call(capsys, "matrix", "--kind", "Aq", "--param", "3")
    assert out == "2,-1,-1\n-1,2,-1\n-1,-1,2\n"
    path = tmp_path / "b.json"
    assert call(capsys, "matrix", "--kind", "Bq", "--param", "3", "--format", "json", "--out", str(path))[0] == 0
    assert json.loads(path.read_text())["entries"][1] == [2.0, -1.0, -1.0]


def test_spectrum(capsys):
    code, out, _ = call(capsys, "spectrum", "--kind", "Bq", "--param", "5")
    doc = json.loads(out)
    assert code == 0
    assert {e["value"]: e["multiplicity"] for e in doc["spectrum"]} == {0: 1, 5: 3, -5: 1}
    assert doc["method"] == "rank-trace"


def test_verify_single(capsys):
    code, out, err = call(capsys, "verify", "--claim", "example1")
    assert code == 0
    assert json.loads(out)[0]["pass"] is True
    assert err.startswith("PASS example1")


def test_verify_all_small_is_deterministic(capsys):
    runs = []
    for _ in range(2):
        code, out, _ = call(capsys, "verify", "--all", "--max-q", "6", "--max-Q", "3")
        assert code == 0
        runs.append(re.sub(r'"elapsed_ms": [0-9.e-]+', "", out))
    assert runs[0] == runs[1]
    claims = [(r["claim"], r["params"]) for r in json.loads(out)]
    assert claims[0][0] == "corollary1"
    assert [c for c, _ in claims] == sorted(c for c, _ in claims)


def test_demo(capsys):
    code, out, _ = call(capsys, "demo", "large-sieve", "--Q", "3", "--seed", "1")
    assert code == 0 and json.loads(out)["pass"]


@pytest.mark.parametrize(
    "argv",
    [
        ["matrix", "--kind", "X", "--param", "99"],
        ["spectrum", "--kind", "Aq", "--param", "0"],
        ["verify", "--claim", "theorem1"],
        ["sum", "ramanujan", "--q", "0", "--n", "1"],
        ["bogus"],
        ["matrix", "--kind", "Aq"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2
    assert err


def test_guard_message_names_guard(capsys):
    _, _, err = call(capsys, "matrix", "--kind", "X", "--param", "99")
    assert "Q=99" in err and "limit 8" in err


def test_verification_failure_exit_1(capsys, monkeypatch):
    from ramanujan_spectra import claims
    from ramanujan_spectra.spectral import VerificationReport

    monkeypatch.setitem(claims.CLAIMS, "weil", lambda q: VerificationReport("weil", {"q": q}, passed=False))
    code, _, err = call(capsys, "verify", "--claim", "weil", "--param", "3")
    assert code == 1 and err.startswith("FAIL weil")
