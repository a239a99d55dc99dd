# tests/test_cli.py
import json

import pytest

import core.db as db
from core.settings import LabSettings
from features.engine import store
from features.qseries import cache
from ui.cli import run


@pytest.fixture
def settings(tmp_path, cache_dir, monkeypatch):
    # the store command path must not leak into other tests
    monkeypatch.setattr(db, "_DB_PATH", db._DB_PATH, raising=False)
    return LabSettings(cache_dir=cache_dir, certificate_db=str(tmp_path / "lab.db"))


def _records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_partition_ramanujan_holds(settings, capsys):
    code = run(["--format", "records", "partition", "--check", "ramanujan", "--bound", "20"], settings)
    assert code == 0

    items = _records(capsys.readouterr().out)
    assert [(i["ell"], i["beta"]) for i in items] == [(5, 4), (7, 5), (11, 6)]
    assert all(i["holds"] and i["witness"] is None for i in items)


def test_partition_atkin_holds(settings, capsys):
    code = run(["--format", "records", "partition", "--check", "atkin", "--bound", "2"], settings)
    assert code == 0
    (item,) = _records(capsys.readouterr().out)
    assert item["modulus"] == 11**3 * 13 and item["beta"] == 237


def test_rep_dims_and_steinberg(settings, capsys):
    assert run(["--format", "records", "rep", "dims", "--modulus", "5", "--ell", "3", "--beta", "1"], settings) == 0
    (item,) = _records(capsys.readouterr().out)
    assert item["dimension"] == 5

    assert run(["--format", "records", "rep", "steinberg", "--modulus", "5", "--ell", "3"], settings) == 0
    (item,) = _records(capsys.readouterr().out)
    assert item["dimension"] == 5 and item["contains_invariant"] is True


def test_rep_membership_needs_beta(settings, capsys):
    assert run(["rep", "membership", "--modulus", "5", "--ell", "3"], settings) == 2
    err = json.loads(capsys.readouterr().err.strip())
    assert err["error"] == "usage"


def test_certify_table_prints_exponents(settings, capsys):
    code = run(["certify-table", "--ell", "7", "--primes", "2", "--verify-bound", "50"], settings)
    assert code == 0
    assert "2^6, 2^13" in capsys.readouterr().out


def test_certify_accepts_and_refuses(settings, capsys):
    code = run(["--format", "records", "certify", "--ell", "7", "--p", "2", "--m", "6", "--identity-bound", "2"], settings)
    assert code == 0
    (rec,) = _records(capsys.readouterr().out)
    assert rec["claim"] == {"kind": "gap", "stride": 64, "offset": 0, "gap_prime": 2}
    assert rec["evidence"]["kind"] != "verified"

    # m = 5 is not in the admissible progression for Δ mod 7 at p = 2
    code = run(["--format", "records", "certify", "--ell", "7", "--p", "2", "--m", "5"], settings)
    assert code == 0
    (row,) = _records(capsys.readouterr().out)
    assert row["certified"] is False


def test_gen_scan_validate_pipeline(settings, tmp_path, capsys):
    series = str(tmp_path / "eta.json")
    certs = str(tmp_path / "certs.ndjson")

    assert run(["--format", "records", "gen", "--form", "eta^-1", "--prec", "400", "--out", series], settings) == 0
    (row,) = _records(capsys.readouterr().out)
    assert row["path"] == series and row["precision"] == 24 * 400 - 1

    code = run([
        "--format", "records", "--out", certs,
        "scan", "--in", series, "--ell", "5", "--max-modulus", "10", "--bound", "399",
        "--support", "25", "--form", "partition",
    ], settings)
    assert code == 0
    with open(certs, encoding="utf-8") as fh:
        found = _records(fh.read())
    assert [c["claim"] for c in found] == [{"kind": "progression", "modulus": 5, "residue": 4}]

    assert run(["--format", "records", "validate", "--certs", certs, "--in", series], settings) == 0
    (report,) = _records(capsys.readouterr().out)
    assert report["ell"] == 5 and report["discrepancies"] == []


def test_gen_raw_stores_the_numerator_lattice(settings, tmp_path, capsys):
    series = str(tmp_path / "eta-raw.json")
    assert run(["--format", "records", "gen", "--form", "eta^-1", "--prec", "10", "--raw", "--out", series], settings) == 0
    (row,) = _records(capsys.readouterr().out)
    assert row["precision"] == 239

    raw = cache.load_series(series)
    assert raw.denom == 1
    # p(m) sits at exponent 24m - 1
    assert [raw[24 * m - 1] for m in range(1, 6)] == [1, 2, 3, 5, 7]


def test_validate_reports_false_claim(settings, tmp_path, capsys):
    series = str(tmp_path / "eta.json")
    certs = tmp_path / "bad.ndjson"
    assert run(["gen", "--form", "eta^-1", "--prec", "200", "--out", series], settings) == 0

    # p(3) = 3 is not divisible by 5
    bad = {
        "form": "partition", "ell": 5,
        "claim": {"kind": "progression", "modulus": 5, "residue": 3},
        "evidence": {"kind": "verified", "bound": 199, "support": 40, "grid": {"denom": 24, "offset": -1}},
        "witnesses": [],
    }
    certs.write_text(json.dumps(bad) + "\n", encoding="utf-8")
    capsys.readouterr()

    assert run(["--format", "records", "validate", "--certs", str(certs), "--in", series], settings) == 1
    (report,) = _records(capsys.readouterr().out)
    assert report["discrepancies"]


def test_scan_store_then_validate_from_store(settings, tmp_path, capsys):
    series = str(tmp_path / "delta.json")
    assert run(["gen", "--form", "delta", "--prec", "201", "--mod", "7", "--out", series], settings) == 0

    code = run(["--format", "records", "scan", "--in", series, "--ell", "7", "--max-modulus", "9", "--bound", "200", "--store"], settings)
    assert code == 0
    scanned = _records(capsys.readouterr().out)
    assert scanned and store.count_certificates() == len(scanned)

    assert run(["validate", "--from-store", "--in", series], settings) == 0


def test_theta_lab_kills_and_lifts(settings, capsys):
    code = run([
        "--format", "records", "theta-lab", "--ell", "5", "--beta", "2", "--prec", "60",
        "--preimage-steps", "1", "--weight-cap", "200",
    ], settings)
    assert code == 0
    (item,) = _records(capsys.readouterr().out)
    assert item["killed"] is True and item["weight"] == 24
    assert item["image_nonzero"] is True and item["image_killed"] is True
    assert item["preimage_weight"] <= 200


def test_usage_errors_exit_2(settings, capsys):
    assert run(["scan"], settings) == 2
    capsys.readouterr()

    assert run(["certify", "--form", "sigma", "--ell", "7", "--p", "2", "--m", "6"], settings) == 2
    err = json.loads(capsys.readouterr().err.strip())
    assert err["error"] == "usage"


def test_precision_error_exit_3(settings, tmp_path, capsys):
    series = str(tmp_path / "delta.json")
    assert run(["gen", "--form", "delta", "--prec", "50", "--mod", "7", "--out", series], settings) == 0
    assert run(["scan", "--in", series, "--ell", "7", "--bound", "500"], settings) == 3
    assert capsys.readouterr().err.strip()
