"""
features/engine/controller.py
------------------------------
Scanning coefficient data for vanishing progressions, re-checking claims,
and cross-validating certificate sets.

All indices are lattice indices m of `shift_to_grid(f)`: for η-family
series with denominator N the lattice index m stands for the exponent
m + r/N, and certificates record (N, r) in their evidence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from core.config import DEFAULT_MAX_MODULUS, DEFAULT_SCAN_BOUND, DEFAULT_SUPPORT_MIN
from core.errors import DomainError, DomainMismatchError, LabError, PrecisionError
from core.log import get_logger
from features.algebra.numbers import factorint, is_prime, prime_factors, valuation
from features.criterion.controller import hecke_verdict
from features.engine.model import (
    Claim, CongruenceCertificate, DerivedByRule, Progression, VerifiedToBound, Witness,
)
from features.qseries import controller as qs
from features.qseries.model import QExpansion

log = get_logger("Scan")


# ------------------------------------------------------------
# Lattice data
# ------------------------------------------------------------
@dataclass(frozen=True)
class _Lattice:
    values: np.ndarray      # c(m) for 0 ≤ m ≤ bound
    bound: int
    denom: int
    offset: int


def _lattice(f: QExpansion, bound: Optional[int] = None) -> _Lattice:
    if f.modulus is None or not is_prime(f.modulus):
        raise DomainMismatchError("scanning needs a series reduced mod a prime ℓ", domain=f.domain)
    g, r = qs.shift_to_grid(f)
    top = g.precision - 1
    if bound is None:
        bound = top
    if bound > top:
        raise PrecisionError("scan bound beyond precision", bound=bound, precision=g.precision)
    if bound < 0:
        raise DomainError("scan bound must be non-negative", bound=bound)
    return _Lattice(g.dense(bound + 1), bound, f.denom, r)


def _form_name(f: QExpansion, form: Optional[str]) -> str:
    return form or (f.descriptor.name if f.descriptor else "form")


# ------------------------------------------------------------
# Claim checks
# ------------------------------------------------------------
@dataclass(frozen=True)
class ClaimCheck:
    holds: bool
    witness: Optional[int]      # least index in the claim with a nonzero coefficient
    support: int                # number of tested indices
    bound: int


def verify_claim(f: QExpansion, claim: Claim, bound: Optional[int] = None) -> ClaimCheck:
    """Test every member 0 ≤ n ≤ bound of the claim (default: all known coefficients)."""
    lat = _lattice(f, bound)
    members = claim.members(lat.bound)
    bad = members[lat.values[members] != 0]
    witness = int(bad[0]) if bad.size else None
    return ClaimCheck(witness is None, witness, int(members.size), lat.bound)


def reverify(cert: CongruenceCertificate, f: Optional[QExpansion], bound: Optional[int] = None) -> CongruenceCertificate:
    """Attach a best-effort numerical re-check to derived evidence."""
    ev = cert.evidence
    if f is None or not isinstance(ev, DerivedByRule):
        return cert
    if f.modulus != cert.ell:
        raise DomainMismatchError("data and certificate use different primes", left=f.domain, right=cert.ell)
    g, _ = qs.shift_to_grid(f)
    top = g.precision - 1
    check = verify_claim(f, cert.claim, top if bound is None else min(bound, top))
    evidence = DerivedByRule(ev.rule, ev.parent, check.holds, check.bound)
    if not check.holds:
        log.warning("derived claim %s fails at %d", cert.claim.label(), check.witness)
    return CongruenceCertificate(cert.form, cert.ell, cert.claim, evidence, cert.witnesses)


# ------------------------------------------------------------
# Scan
# ------------------------------------------------------------
def _hits(values: np.ndarray, M: int, support_min: int) -> np.ndarray:
    ns = np.arange(values.size, dtype=np.int64)
    total = np.bincount(ns % M, minlength=M)
    nonzero = np.bincount(ns[values != 0] % M, minlength=M)
    return (nonzero == 0) & (total >= support_min)


def _least_nonzero(values: np.ndarray, M: int, beta: int) -> Optional[int]:
    seg = values[beta::M]
    nz = np.flatnonzero(seg)
    return int(beta + M * nz[0]) if nz.size else None


def scan(
    f: QExpansion,
    max_modulus: int = DEFAULT_MAX_MODULUS,
    n_bound: int = DEFAULT_SCAN_BOUND,
    support_min: int = DEFAULT_SUPPORT_MIN,
    form: Optional[str] = None,
) -> list[CongruenceCertificate]:
    """Maximal progressions MZ + β, M ≤ max_modulus, on which f vanishes up to n_bound."""
    if max_modulus < 1 or support_min < 1:
        raise DomainError("scan needs max_modulus ≥ 1 and support_min ≥ 1", max_modulus=max_modulus, support_min=support_min)
    lat = _lattice(f, n_bound)
    ell = f.modulus
    name = _form_name(f, form)
    if not np.any(lat.values):
        log.warning("%s vanishes mod %d up to %d; no certificates", name, ell, lat.bound)
        return []

    table: dict[int, np.ndarray] = {}
    for M in range(1, max_modulus + 1):
        table[M] = _hits(lat.values, M, support_min)

    certs: list[CongruenceCertificate] = []
    for M in range(1, max_modulus + 1):
        hits = np.flatnonzero(table[M])
        if hits.size == 0:
            continue
        parents = [M // q for q in prime_factors(M)]
        for beta in (int(b) for b in hits):
            if any(table[P][beta % P] for P in parents):
                continue
            witnesses = []
            for P in parents:
                idx = _least_nonzero(lat.values, P, beta % P)
                if idx is not None:
                    witnesses.append(Witness(Progression(P, beta % P), idx))
            support = int(lat.values[beta::M].size)
            evidence = VerifiedToBound(lat.bound, support, lat.denom, lat.offset)
            certs.append(CongruenceCertificate(name, ell, Progression(M, beta), evidence, tuple(witnesses)))
    log.info("scan %s mod %d: %d maximal progressions (M ≤ %d, n ≤ %d)", name, ell, len(certs), max_modulus, lat.bound)
    return certs


# ------------------------------------------------------------
# Cross validation
# ------------------------------------------------------------
@dataclass(frozen=True)
class Discrepancy:
    certificate: CongruenceCertificate
    reason: str
    witness: Optional[int] = None

    def to_record(self) -> dict:
        return {
            "form": self.certificate.form,
            "ell": self.certificate.ell,
            "claim": self.certificate.claim.to_record(),
            "reason": self.reason,
            "witness": self.witness,
        }


@dataclass
class ValidationReport:
    checked: int = 0
    skipped: int = 0
    discrepancies: list[Discrepancy] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def to_record(self) -> dict:
        return {
            "checked": self.checked,
            "skipped": self.skipped,
            "discrepancies": [d.to_record() for d in self.discrepancies],
        }


def _grid_of(cert: CongruenceCertificate) -> tuple[int, int]:
    ev = cert.evidence
    while isinstance(ev, DerivedByRule):
        ev = ev.parent.evidence
    if isinstance(ev, VerifiedToBound):
        return ev.grid_denom, ev.grid_offset
    return 1, 0


def _predicted(f: QExpansion, claim: Progression, k: int) -> Optional[bool]:
    """Criterion verdict for a prime-power scan hit (p^a, β), v_p(β) = a - 1; None when not applicable."""
    ell = f.modulus
    fac = factorint(claim.modulus)
    if len(fac) != 1:
        return None
    (p, a), = fac.items()
    if p == ell or claim.residue == 0 or valuation(claim.residue, p) != a - 1:
        return None
    _, analyses = hecke_verdict(f, p, a - 1, k, eigenform=True)
    return all(an.admits(a - 1) for an in analyses)


def cross_validate(
    certs: Iterable[CongruenceCertificate],
    f: QExpansion,
    predict: bool = False,
    weight: Optional[int] = None,
) -> ValidationReport:
    """Re-scan every claim against f; with `predict`, demand criterion agreement for level-one eigen data."""
    if predict and weight is None:
        raise DomainError("prediction needs the weight of the eigenform")
    report = ValidationReport()
    lattice, r = qs.shift_to_grid(f)
    top = lattice.precision - 1
    for cert in certs:
        if cert.ell != f.modulus:
            report.discrepancies.append(Discrepancy(cert, "prime mismatch"))
            continue
        if _grid_of(cert) != (f.denom, r):
            report.discrepancies.append(Discrepancy(cert, "grid mismatch"))
            continue
        ev = cert.evidence
        bound = min(ev.bound, top) if isinstance(ev, VerifiedToBound) else top
        try:
            check = verify_claim(f, cert.claim, bound)
        except LabError as exc:
            log.debug("skipping %s: %s", cert.claim.label(), exc)
            report.skipped += 1
            continue
        report.checked += 1
        if not check.holds:
            report.discrepancies.append(Discrepancy(cert, "nonzero coefficient in claim", check.witness))
            continue
        for w in cert.witnesses:
            if w.index <= top and (not w.progression.contains(w.index) or lattice[w.index] % f.modulus == 0):
                report.discrepancies.append(Discrepancy(cert, "maximality witness does not hold", w.index))
        if predict and isinstance(ev, VerifiedToBound) and isinstance(cert.claim, Progression):
            verdict = _predicted(f, cert.claim, weight)
            if verdict is False:
                report.discrepancies.append(Discrepancy(cert, "scan hit not predicted by the criterion"))
    log.info("validated %d claims (%d skipped): %d discrepancies", report.checked, report.skipped, len(report.discrepancies))
    return report
