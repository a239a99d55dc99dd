# tests/test_engine_controller.py
import pytest

from core.errors import DomainError, DomainMismatchError, PrecisionError
from features.engine import controller as ec
from features.engine.model import (
    CongruenceCertificate, GapProgression, Progression, VerifiedToBound, Witness,
)
from features.forms import controller as fc
from features.qseries import controller as qs

def _partitions_mod5(n=400):
    # lattice index m of η^{-1} carries p(m)
    return fc.eta_power(-1, n, 5)

def test_scan_finds_ramanujan_progression_for_partitions():
    f = _partitions_mod5()
    certs = ec.scan(f, max_modulus=10, n_bound=399, support_min=25, form="partition")
    assert [c.claim for c in certs] == [Progression(5, 4)]
    cert = certs[0]
    assert cert.form == "partition" and cert.ell == 5
    assert cert.evidence == VerifiedToBound(399, 80, 24, -1)
    # the parent 1Z + 0 fails already at p(0) = 1
    assert cert.witnesses == (Witness(Progression(1, 0), 0),)
    # numerator grid: 24(5n + 4) - 1 = 120n + 95
    assert cert.raw_claim() == Progression(120, 95)

def test_scan_reports_only_maximal_progressions():
    d7 = fc.delta(401, 7)
    claims = {c.claim for c in ec.scan(d7, max_modulus=20, n_bound=400)}
    assert {Progression(7, 0), Progression(9, 3), Progression(9, 6)} <= claims
    assert Progression(14, 0) not in claims
    assert Progression(18, 3) not in claims

def test_scan_edge_cases():
    zero = qs.series([0] * 50, modulus=7)
    assert ec.scan(zero, max_modulus=5, n_bound=49) == []
    with pytest.raises(DomainMismatchError):
        ec.scan(fc.delta(50), max_modulus=5, n_bound=40)
    with pytest.raises(PrecisionError):
        ec.scan(fc.delta(50, 7), max_modulus=5, n_bound=100)
    with pytest.raises(DomainError):
        ec.scan(fc.delta(50, 7), max_modulus=0, n_bound=40)

def test_verify_claim():
    f = _partitions_mod5()
    check = ec.verify_claim(f, Progression(5, 4))
    assert check.holds and check.witness is None
    assert check.support == 80
    check = ec.verify_claim(f, Progression(5, 3), bound=100)
    assert not check.holds and check.witness == 3
    # τ(n) ≡ 0 mod 7 on 3(Z∖3Z)
    assert ec.verify_claim(fc.delta(300, 7), GapProgression(3, 0, 3)).holds

def test_cross_validation_accepts_scan_output():
    d7 = fc.delta(401, 7)
    certs = ec.scan(d7, max_modulus=20, n_bound=400)
    report = ec.cross_validate(certs, d7, predict=True, weight=12)
    assert report.ok
    assert report.checked == len(certs)

def test_cross_validation_reports_discrepancies():
    d7 = fc.delta(401, 7)
    ev = VerifiedToBound(400, 10)
    certs = [
        CongruenceCertificate("delta", 7, Progression(5, 3), ev),
        CongruenceCertificate("delta", 5, Progression(5, 0), ev),
        CongruenceCertificate("delta", 7, Progression(7, 0), VerifiedToBound(400, 10, 24, -1)),
        CongruenceCertificate("delta", 7, Progression(9, 3), ev, (Witness(Progression(3, 0), 3),)),
    ]
    report = ec.cross_validate(certs, d7)
    reasons = [(d.reason, d.witness) for d in report.discrepancies]
    assert reasons == [
        ("nonzero coefficient in claim", 8),        # τ(3) ≡ 0, τ(8) = 84480 ≡ 4
        ("prime mismatch", None),
        ("grid mismatch", None),
        ("maximality witness does not hold", 3),       # τ(3) = 252 ≡ 0 mod 7
    ]
    assert not report.ok
    assert report.to_record()["checked"] == 2

def test_prediction_flags_unexplained_hits():
    d7 = fc.delta(401, 7)
    # (4, 2) would be a gap on 2(Z∖2Z); the period for p = 2 mod 7 is 7
    fake = CongruenceCertificate("delta", 7, Progression(4, 2), VerifiedToBound(1, 0))
    report = ec.cross_validate([fake], d7, predict=True, weight=12)
    assert [d.reason for d in report.discrepancies] == ["scan hit not predicted by the criterion"]
    with pytest.raises(DomainError):
        ec.cross_validate([fake], d7, predict=True)
