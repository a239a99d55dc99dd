"""
features/criterion/controller.py
---------------------------------
The Hecke criterion for gap congruences.

For a T_p-eigenvalue λ and c = χ(p)p^{k-1} write
1 - λX + cX^2 = (1 - αX)(1 - βX). A form whose coefficients vanish on
p^m(Z∖pZ) must satisfy α^{m+1} = β^{m+1} mod ℓ (α = β: ℓ | m + 1). The
period d of α/β therefore decides every exponent at once.

Operations: analyze_lpoly, impossibility, delta_table, eigenvalue_of,
hecke_verdict, certify_claim, prime_search.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import galois
import numpy as np

from core.config import TABLE_COUNT, TABLE_ELLS, TABLE_PRIMES, TABLE_VERIFY_BOUND
from core.errors import DomainError, DomainMismatchError, RamifiedHeckeDatumError, UsageError
from core.log import get_logger
from features.algebra.controller import field_sqrt, mult_order, quadratic_extension
from features.algebra.model import ExtElement, FieldElement, Residue
from features.algebra.numbers import is_prime, kronecker, primes_up_to
from features.criterion.eigen import eigen_decompose
from features.criterion.model import IRREDUCIBLE, REPEATED, SPLIT, LPolyAnalysis, TableCell
from features.engine.model import CertifiedHecke, CongruenceCertificate, GapProgression
from features.forms.controller import delta
from features.qseries.model import QExpansion

log = get_logger("Criterion")


# ------------------------------------------------------------
# L-polynomial analysis
# ------------------------------------------------------------
def _common_field(lam, c) -> tuple[FieldElement, FieldElement]:
    if isinstance(lam, ExtElement):
        return lam, lam.ctx.embed(c)
    if isinstance(c, ExtElement):
        return c.ctx.embed(lam), c
    if isinstance(lam, Residue) and isinstance(c, Residue):
        if lam.ell != c.ell:
            raise DomainMismatchError("λ and c live modulo different primes", left=lam.ell, right=c.ell)
        return lam, c
    raise DomainError("λ and c must be field elements")


def _norm_one_order(lam: ExtElement, c: ExtElement) -> int:
    """
    Order of α/β when x^2 - λx + c is irreducible over F_q, q the order of
    the field of λ. The roots are computed in GF(q^2), with F_q embedded
    through a root of its modulus.
    """
    ctx = lam.ctx
    big = galois.GF(ctx.ell ** (2 * ctx.degree))
    theta = galois.Poly(list(reversed(ctx.modulus)), field=big).roots()[0]
    powers = [theta**i for i in range(ctx.degree)]

    def up(x: ExtElement) -> galois.FieldArray:
        return sum((big(a) * t for a, t in zip(x.coeffs, powers)), big(0))

    L, C = up(lam), up(c)
    root = np.sqrt(np.atleast_1d(L * L - big(4 % ctx.ell) * C))[0]
    two = big(2)
    alpha, beta = (L + root) / two, (L - root) / two
    return int((alpha / beta).multiplicative_order())


def analyze_lpoly(lam, c, p: int = 0) -> LPolyAnalysis:
    """Classify 1 - λX + cX^2 mod ℓ and compute the period of the root ratio."""
    lam, c = _common_field(lam, c)
    ell = lam.ell if isinstance(lam, Residue) else lam.ctx.ell
    if ell == 2:
        raise DomainError("the criterion needs an odd ℓ", ell=ell)
    if c.is_zero():
        raise RamifiedHeckeDatumError("c vanishes mod ℓ: p divides ℓN", p=p, ell=ell)

    disc = lam * lam - 4 * c
    if disc.is_zero():
        half = lam / 2
        return LPolyAnalysis(p, ell, lam, c, REPEATED, half, half, ell)

    root = field_sqrt(disc)
    if root is not None:
        alpha, beta = (lam + root) / 2, (lam - root) / 2
        return LPolyAnalysis(p, ell, lam, c, SPLIT, alpha, beta, mult_order(alpha / beta))

    if isinstance(lam, Residue):
        ctx = quadratic_extension(ell, disc.value)
        y = ctx.gen()
        alpha, beta = (ctx.embed(lam) + y) / 2, (ctx.embed(lam) - y) / 2
        return LPolyAnalysis(p, ell, lam, c, IRREDUCIBLE, alpha, beta, mult_order(alpha / beta))

    # roots live in a quadratic extension of F_ℓ(λ)
    return LPolyAnalysis(p, ell, lam, c, IRREDUCIBLE, None, None, _norm_one_order(lam, c))


def impossibility(m: int, ell: int, k: int, chi_p: int, p: int) -> bool:
    """True when a gap congruence on p^m(Z∖pZ) forces f ≡ 0 mod ℓ."""
    if m < 2:
        raise DomainError("impossibility needs m ≥ 2", m=m)
    value = (chi_p * pow(p, k - 1, ell)) % ell
    return math.gcd(ell * (ell - 1), m + 1) == 1 and kronecker(value, ell) == -1


# ------------------------------------------------------------
# The Δ table
# ------------------------------------------------------------
def _cell_impossible(exponents: Sequence[int], ell: int, p: int, k: int = 12) -> tuple[int, ...]:
    return tuple(m for m in exponents if m >= 2 and impossibility(m, ell, k, 1, p))


def delta_table(
    ells: Sequence[int] = TABLE_ELLS,
    primes: Sequence[int] = TABLE_PRIMES,
    count: int = TABLE_COUNT,
    verify_bound: int = TABLE_VERIFY_BOUND,
) -> list[TableCell]:
    """Maximal gap congruences of Δ: criterion for p ≠ ℓ, a U_ℓ scan for p = ℓ."""
    cells: list[TableCell] = []
    for ell in ells:
        if ell == 2 or not is_prime(ell):
            raise DomainError("table rows need odd primes", ell=ell)
        precision = max(verify_bound + 1, max(primes) + 1)
        coeffs = delta(precision, ell).dense(precision)
        for p in primes:
            if not is_prime(p):
                raise DomainError("table columns need primes", p=p)
            if p == ell:
                vanishes = not np.any(coeffs[::ell])
                cells.append(TableCell(ell, p, "ell" if vanishes else "empty", verify_bound=verify_bound))
                continue
            analysis = analyze_lpoly(Residue(int(coeffs[p]), ell), Residue(pow(p, 11, ell), ell), p)
            exps = tuple(analysis.exponents(count))
            cells.append(TableCell(ell, p, "gap", exps, analysis, None, _cell_impossible(exps, ell, p)))
        log.info("table row ℓ=%d: %s", ell, " | ".join(c.label() for c in cells if c.ell == ell))
    return cells


# ------------------------------------------------------------
# Certification
# ------------------------------------------------------------
def eigenvalue_of(f: QExpansion, p: int) -> Residue:
    """λ_p = c(f; p) / c(f; 1) for eigen data mod ℓ."""
    if f.modulus is None or not is_prime(f.modulus):
        raise DomainMismatchError("eigen data must be reduced modulo a prime", domain=f.domain)
    a1 = f[1] % f.modulus
    if a1 == 0:
        raise DomainError("c(f; 1) vanishes: not normalizable eigen data", ell=f.modulus)
    return Residue(f[p], f.modulus) / a1


def hecke_verdict(f: QExpansion, p: int, m: int, k: int, eigenform: bool = False) -> tuple[bool, list[LPolyAnalysis]]:
    """Analyses of every eigen component of f, and whether all of them admit m."""
    ell = f.modulus
    if ell is None:
        raise DomainMismatchError("certification needs a series mod ℓ", domain=f.domain)
    if p == ell:
        raise DomainError("the criterion needs p ≠ ℓ", p=p, ell=ell)
    c = Residue(pow(p, k - 1, ell), ell)
    if eigenform:
        eigenvalues = [eigenvalue_of(f, p)]
    else:
        eigenvalues = [comp.eigenvalue for comp in eigen_decompose(f, p, k)]
    analyses = [analyze_lpoly(lam, c, p) for lam in eigenvalues]
    certified = bool(analyses) and all(a.admits(m) for a in analyses)
    return certified, analyses


def certify_claim(
    f: QExpansion,
    p: int,
    m: int,
    k: int,
    beta: int = 0,
    eigenform: Optional[bool] = None,
    form: Optional[str] = None,
) -> Optional[CongruenceCertificate]:
    """Certificate for c(f; p^m n + β) ≡ 0 (p ∤ n), or None when the criterion refuses."""
    if not is_prime(p):
        raise UsageError("p must be prime", p=p)
    if m < 1:
        raise UsageError("gap exponent must be at least 1", m=m)
    if beta % p ** (m + 1):
        raise UsageError("offset must be a multiple of p^(m+1)", beta=beta, p=p, m=m)
    ell = f.modulus
    if eigenform is None:
        eigenform = ell is not None and ell < 5
    certified, analyses = hecke_verdict(f, p, m, k, eigenform)
    if not certified:
        log.info("refused p=%d m=%d mod %s: periods %s", p, m, ell, [a.period for a in analyses])
        return None
    name = form or (f.descriptor.name if f.descriptor else "form")
    claim = GapProgression(p**m, 0, p)
    return CongruenceCertificate(name, ell, claim, CertifiedHecke(tuple(a.to_record() for a in analyses)))


def prime_search(f: QExpansion, mode: str, p_max: int, k: int, form: Optional[str] = None) -> list[tuple[int, CongruenceCertificate]]:
    """Treneer primes (p ≡ -1, λ ≡ 0, m = 1) or Serre primes (p ≡ 1, λ ≡ 2, c ≡ 1, m = ℓ-1)."""
    ell = f.modulus
    if ell is None:
        raise DomainMismatchError("prime search needs a series mod ℓ", domain=f.domain)
    if mode not in ("treneer", "serre"):
        raise UsageError("mode must be treneer or serre", mode=mode)
    name = form or (f.descriptor.name if f.descriptor else "form")
    hits = []
    for p in primes_up_to(p_max):
        if p == ell:
            continue
        lam = eigenvalue_of(f, p)
        c = Residue(pow(p, k - 1, ell), ell)
        if mode == "treneer":
            if p % ell != ell - 1 or not lam.is_zero():
                continue
            m = 1
        else:
            if p % ell != 1 or lam != 2 or c != 1:
                continue
            m = ell - 1
        analysis = analyze_lpoly(lam, c, p)
        if analysis.admits(m):
            cert = CongruenceCertificate(name, ell, GapProgression(p**m, 0, p), CertifiedHecke((analysis.to_record(),)))
            hits.append((p, cert))
    log.info("%s search mod %d to %d: %d primes", mode, ell, p_max, len(hits))
    return hits
