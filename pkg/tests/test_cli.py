"""End-to-end CLI checks: parsing, exit codes, and byte-stable output."""

import csv
import io
import json

import pytest

from robinpsi import cli, robin
from robinpsi.robin import RobinVerdict


def _run(argv, capsys):
    try:
        code = cli.main(argv)
    except SystemExit as exc:  # argparse-level usage failures
        code = exc.code
    out = capsys.readouterr()
    return code, out.out


def _csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_table1_matches_expected(capsys):
    code, out = _run(["table1"], capsys)
    assert code == 0
    rows = _csv_rows(out)
    got = {int(r["t"]): int(r["n1"]) for r in rows}
    assert got == {3: 10, 4: 24, 5: 79, 6: 509, 7: 10596}
    primes = {int(r["t"]): int(r["p_n1"]) for r in rows}
    assert primes == {3: 29, 4: 89, 5: 401, 6: 3637, 7: 111751}
    for r in rows:
        assert float(r["margin"]) > 0
        assert 1.0 <= float(r["mantissa"]) < 10.0


def test_table1_magnitudes(capsys):
    code, out = _run(["table1", "--format", "json"], capsys)
    assert code == 0
    rows = json.loads(out)
    by_t = {r["t"]: r for r in rows}
    assert by_t[3]["exponent10"] == 9
    assert by_t[3]["mantissa"] == pytest.approx(6.4697, abs=0.01)
    assert by_t[7]["exponent10"] == 48337
    assert by_t[7]["mantissa"] == pytest.approx(2.4773, abs=0.01)


def test_table1_floor_mode(capsys):
    code, out = _run(["table1", "--t-min", "3", "--t-max", "3", "--floor-n0"], capsys)
    assert code == 0
    rows = _csv_rows(out)
    assert int(rows[0]["n1"]) >= 2263


def test_table1_usage_error(capsys):
    code, _ = _run(["table1", "--t-min", "1"], capsys)
    assert code == 64
    code, _ = _run(["table1", "--t-min", "5", "--t-max", "3"], capsys)
    assert code == 64


def test_table1_sieve_cap_exhaustion(capsys):
    code, _ = _run(
        ["table1", "--t-min", "7", "--t-max", "7", "--sieve-limit", "1024", "--sieve-cap", "2048"],
        capsys,
    )
    assert code == 2


def test_champions_output(capsys):
    code, out = _run(["champions", "--limit", "100", "--t", "2"], capsys)
    assert code == 0
    assert out == "m,ratio\n1,1/1\n2,3/2\n6,2/1\n30,12/5\n"


def test_champions_weak(capsys):
    code, out = _run(["champions", "--limit", "12", "--t", "2", "--weak"], capsys)
    assert code == 0
    rows = _csv_rows(out)
    assert [int(r["m"]) for r in rows] == [1, 2, 4, 6, 12]


def test_champions_trivial_limit(capsys):
    code, out = _run(["champions", "--limit", "1", "--t", "5"], capsys)
    assert code == 0
    assert _csv_rows(out) == [{"m": "1", "ratio": "1/1"}]


def test_robin_scan_classical_window(capsys):
    code, out = _run(["robin-scan", "--from", "3", "--to", "6000"], capsys)
    assert code == 0
    rows = _csv_rows(out)
    assert len(rows) == 26
    assert rows[-1]["n"] == "5040"


def test_robin_scan_empty_above(capsys):
    code, out = _run(["robin-scan", "--from", "5041", "--to", "100000"], capsys)
    assert code == 0
    assert _csv_rows(out) == []


def test_robin_scan_usage(capsys):
    code, _ = _run(["robin-scan", "--from", "2", "--to", "100"], capsys)
    assert code == 64


def test_robin_scan_falsification_exit(capsys, monkeypatch):
    fake = RobinVerdict(
        n=5042, sigma=99999, threshold=1.0, holds=False, margin=-1.0, precision_critical=False
    )
    monkeypatch.setattr(robin, "robin_scan", lambda *a, **k: [fake])
    code, out = _run(["robin-scan", "--from", "5041", "--to", "6000"], capsys)
    assert code == 1
    assert _csv_rows(out)[0]["n"] == "5042"


def test_ratio_curve_output(capsys):
    code, out = _run(["ratio", "--t", "7", "--n-max", "10596"], capsys)
    assert code == 0
    rows = _csv_rows(out)
    assert len(rows) == 10595
    last = rows[-1]
    assert int(last["n"]) == 10596
    assert float(last["ratio"]) < 1.78107


def test_ratio_usage(capsys):
    code, _ = _run(["ratio", "--t", "2", "--n-max", "1"], capsys)
    assert code == 64


def test_verify_bounds_reduced(capsys):
    code, out = _run(["verify-bounds", "--n-max", "2000", "--t-max", "4"], capsys)
    assert code == 0
    rows = _csv_rows(out)
    status = {r["suite"]: r["status"] for r in rows}
    assert status["mertens_product"] == "PASS"
    assert status["zeta_tail_product"] == "PASS"
    assert status["log_substitution"] == "SKIPPED"
    assert status["psi_ratio_bound"] == "SKIPPED"


def test_verify_bounds_full_floor(capsys):
    code, out = _run(["verify-bounds", "--n-max", "2300", "--t-max", "4"], capsys)
    assert code == 0
    rows = _csv_rows(out)
    status = {r["suite"]: r["status"] for r in rows}
    assert status["log_substitution"] == "PASS"
    assert status["psi_ratio_bound"] == "PASS"
    for r in rows:
        if r["status"] == "PASS":
            assert float(r["worst_margin"]) > 0


def test_admissible_t_output(capsys):
    code, out = _run(["admissible-t", "--n", "9", "10596"], capsys)
    assert code == 0
    rows = _csv_rows(out)
    assert [(r["n"], r["t_max"]) for r in rows] == [("9", "2"), ("10596", "7")]


def test_unknown_subcommand(capsys):
    code, _ = _run(["frobnicate"], capsys)
    assert code == 64


def test_output_file(tmp_path, capsys):
    target = tmp_path / "rows.csv"
    code, out = _run(["champions", "--limit", "30", "--t", "2", "--output", str(target)], capsys)
    assert code == 0
    assert out == ""
    assert target.read_text() == "m,ratio\n1,1/1\n2,3/2\n6,2/1\n30,12/5\n"


def test_deterministic_output(capsys):
    _, first = _run(["table1", "--t-min", "3", "--t-max", "4"], capsys)
    _, second = _run(["table1", "--t-min", "3", "--t-max", "4"], capsys)
    assert first == second
    _, as_json = _run(["table1", "--t-min", "3", "--t-max", "4", "--format", "json"], capsys)
    parsed = json.loads(as_json)
    by_t = {r["t"]: r for r in parsed}
    for row in csv.DictReader(io.StringIO(first)):
        match = by_t[int(row["t"])]
        # the same %.12g rendering must appear through both emitters
        assert row["margin"] == f'{match["margin"]:.12g}'


def test_run_raises_system_exit(monkeypatch, capsys):
    monkeypatch.setattr("sys.argv", ["robinpsi", "admissible-t", "--n", "9"])
    with pytest.raises(SystemExit) as info:
        cli.run()
    assert info.value.code == 0
    capsys.readouterr()
