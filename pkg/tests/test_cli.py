import csv
import io
import json

import pytest

from witt_charge.cli import Config, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_category_one(capsys):
    code, out, _ = run(capsys, "category", "1")
    data = json.loads(out)
    assert code == 0
    assert data["fs_exponent"] == 32
    assert data["num_simples"] == 7
    assert data["xi1"] == {"order": 32, "exp": 9}
    assert "simples" not in data


def test_category_full_and_closed_form(capsys):
    _, out, _ = run(capsys, "category", "2", "--full")
    assert len(json.loads(out)["simples"]) == 21
    code, out, _ = run(capsys, "category", "9", "--closed-form")
    data = json.loads(out)
    assert code == 0 and data["fs_exponent"] == 288 and data["xi1"] == {"order": 32, "exp": 9}


def test_usage_errors(capsys):
    assert run(capsys, "category", "0")[0] == 2
    assert run(capsys, "category", "9")[0] == 2
    assert run(capsys, "signature", "--rank", "4", "--k", "2")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nope"])
    assert exc.value.code == 2


@pytest.mark.parametrize("k,expected", [(109, -1), (5, 1), (1, 1)])
def test_signature_rows(capsys, k, expected):
    code, out, _ = run(capsys, "signature", "--rank", "13", "--k", str(k), "--format", "csv")
    row = next(csv.DictReader(io.StringIO(out)))
    assert code == 0 and int(row["signature"]) == expected and row["path"] == "exact"


def test_witt_commands(capsys):
    _, out, _ = run(capsys, "witt", "kernel", "Ap3*Ap5")
    assert json.loads(out)["in_kernel"] is True
    _, out, _ = run(capsys, "--format", "md", "witt", "kernel", "C5")
    assert "zeta(32)^25" in out
    _, out, _ = run(capsys, "witt", "eval", "C1 * I", "--k", "3")
    data = json.loads(out)
    assert data["k"] == 3 and "Xi" in data


def test_gauss_and_central_charge(capsys):
    _, out, _ = run(capsys, "gauss-sum", "Ap3")
    assert json.loads(out)["tau"] == {"conductor": 3, "coeffs": ["-3", "0"]}
    _, out, _ = run(capsys, "central-charge", "I", "--n", "3")
    assert json.loads(out)["xi"] == {"order": 16, "exp": 9}


def test_sequence(capsys):
    _, out, _ = run(capsys, "sequence", "--count", "11")
    assert json.loads(out)["terms"] == [5, 23, 41, 59, 77, 113, 131, 149, 167, 221, 239]


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "structure", "--depth", "3", "--z", "0")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert data["suites"][0]["details"]["distinguished"] == 255


def test_byte_stable(capsys):
    first = run(capsys, "--no-timing", "verify", "first-charge")[1]
    second = run(capsys, "verify", "first-charge", "--no-timing")[1]
    assert first == second
    a = run(capsys, "--format", "csv", "category", "3")[1]
    b = run(capsys, "--format", "csv", "category", "3")[1]
    assert a == b


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("WITT_CHARGE_THREADS", "3")
    code, out, _ = run(capsys, "verify", "sines", "--no-timing")
    assert code == 0 and json.loads(out)["passed"]


def test_config_validation():
    with pytest.raises(ValueError):
        Config(precision_start_bits=128, precision_cap_bits=64)
    with pytest.raises(ValueError):
        Config(output_format="xml")
