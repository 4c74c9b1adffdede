import csv
import io
import json
import subprocess
import sys

import pytest

from zml.cli import RunConfig, UsageError, main, parse_k_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_constants_k10(capsys):
    code, out, _ = run(capsys, "constants", "--k", "10")
    assert code == 0
    (row,) = rows(out)
    assert row["c0"].startswith("3.548884924")
    assert int(row["c0_digits"]) >= 60


def test_constants_small_k(capsys):
    code, out, _ = run(capsys, "constants", "--k", "1,2", "--show-error")
    k1, k2 = rows(out)
    assert k1["B_k"] == "0" and float(k1["B_k_radius"]) < 1e-60
    assert k1["tau_k"].startswith("1.1544313298030657212130241801648")
    assert k2["c0"].startswith("0.0506605918211688")


def test_constants_precision_failure(capsys):
    code, _, err = run(capsys, "constants", "--k", "50", "--prime-cutoff", "1000")
    assert code == 2
    assert "k=50" in err


def test_json_output(capsys):
    code, out, _ = run(capsys, "nk", "--k", "5", "--tuple", "4,2,1", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"k": 5, "tuple": "4,2,1", "ratio": "-65520"}


def test_nk_polynomial(capsys):
    _, out, _ = run(capsys, "nk", "--tuple", "2,2,2")
    assert rows(out)[0]["polynomial"] == "24*k^3 + 72*k^2 + 48*k"


def test_pk_and_symmetrize(capsys):
    _, out, _ = run(capsys, "pk", "--k", "5", "--tuple", "2,2,1;3")
    # 6 (k-3)(k-4)(k+4)(k+3)(k+2)(k+1) at k = 5
    assert rows(out)[0]["ratio"] == "36288"
    _, out, _ = run(capsys, "symmetrize", "--k", "2", "--tuple", ";1")
    assert rows(out) == [{"prefactor": "-1/2", "tuple": "1", "multiplicity": "2"}]


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle", "--k", "3", "--tuple", "2,1;1")
    assert code == 0 and rows(out)[0]["agree"] == "True"
    code, _, err = run(capsys, "oracle", "--k", "5", "--tuple", "1;1")
    assert code == 64


def test_ratio_plot(capsys):
    code, out, _ = run(capsys, "emit-ratio-plot", "--k", "10")
    lines = out.strip().splitlines()
    assert lines[0] == "r,ratio_mid,ratio_radius"
    assert len(lines) == 9
    r2 = lines[3].split(",")
    assert r2[0] == "2" and abs(float(r2[1]) - 0.9934255388) < 1e-10
    assert abs(float(lines[1].split(",")[1]) - 1) < 1e-9


def test_ratio_plot_empty_table(capsys, tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("k,r,c\n")
    code, _, err = run(capsys, "emit-ratio-plot", "--k", "10", "--r-max", "3", "--input", str(empty))
    assert code == 64
    for r in range(4):
        assert f"r={r}" in err


def test_ratios_from_json_input(capsys, tmp_path):
    src = tmp_path / "c.jsonl"
    src.write_text("\n".join(json.dumps({"k": 10, "r": r, "c": c}) for r, c in
                             [(0, "3.548884925e-148"), (1, "2.357691331e-144")]))
    code, out, _ = run(capsys, "ratios", "--k", "10", "--input", str(src))
    assert code == 0
    assert [r["identity_ok"] for r in rows(out)] == ["True", "True"]


def test_bounds_and_integrals(capsys):
    code, out, _ = run(capsys, "bounds", "--k", "20")
    assert code == 0 and {r["verdict"] for r in rows(out)} == {"pass"}
    code, out, _ = run(capsys, "integrals", "--k", "1")
    row = rows(out)[0]
    assert row["integral_P1_from_first_zero"].startswith("1673723498.4")
    assert row["integral_bound"].startswith("1673723524.7")


def test_mt_bound(capsys):
    _, out, _ = run(capsys, "mt-bound")
    row = rows(out)[0]
    assert row["k_opt"] == "4" and row["bound"].startswith("669.257")


def test_verify_fixtures(capsys):
    code, out, err = run(capsys, "verify", "fixtures")
    assert code == 0
    assert all(r["status"] == "pass" for r in rows(out))
    assert "0 failed" in err


@pytest.mark.parametrize("argv", [
    ["pk", "--k", "3"],
    ["nk", "--tuple", "1,x"],
    ["constants", "--precision-bits", "32"],
    ["constants", "--tail-order", "2"],
    ["constants", "--prime-cutoff", "100"],
    ["constants", "--k", "a-b"],
    ["nk", "--k", "3", "--tuple", "1,1,1,1"],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == 64
    assert "zml:" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["bogus"], ["verify", "nope"], ["constants", "--format", "xml"]])
def test_parser_errors_exit_64(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 64
    capsys.readouterr()


def test_run_config_validation():
    assert RunConfig().bits == 256
    with pytest.raises(UsageError):
        RunConfig(bits=63)
    assert parse_k_range("10-12,5") == [5, 10, 11, 12]


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "zml", "constants", "--k", "3,10", "--show-error"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.count(b"\n") == 3
