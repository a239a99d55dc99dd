"""
features/heckeops/controller.py
--------------------------------
Hecke operators on mod-ℓ q-expansions.

- hecke_tp: c(T_p f; n) = c(f; pn) + χ(p) p^{k-1} c(f; n/p)
- composite_identity_check: the level-one coefficient identity of the
  operator (p+1) U_{M_p} - p T_{M_p} + p^{k-1} T_{M_p/p^2}, M_p = p^{m+1},
  on a form with a gap congruence on p^m (Z∖pZ).
  At level one the slash-sum of each operator reduces, after clearing the
  unit factor M^{1-k/2}, to
      (p+1) c(M_p n)
      - p      Σ_{a | (M_p, n)}      a^{k-1} c(n M_p / a^2)
      + p^{k-1} Σ_{a | (M_p/p^2, n)} a^{k-1} c(n M_p / (p^2 a^2)),
  with a running over powers of p.
- theta_kill / theta_zero_kill: the Θ constructions that empty ℓZ + β.
"""

from __future__ import annotations

import numpy as np

from core.errors import DomainError, DomainMismatchError, PrecisionError
from core.log import get_logger
from features.algebra.numbers import is_prime, kronecker
from features.heckeops.model import CompositeCheck, HeckeContext
from features.qseries import controller as qs
from features.qseries.model import QExpansion

log = get_logger("Hecke")


def _require_reduced(f: QExpansion) -> int:
    if f.modulus is None:
        raise DomainMismatchError("operator needs a series reduced mod ℓ", domain=f.domain)
    if f.denom != 1:
        raise DomainError("operator needs integral exponents", denom=f.denom)
    return f.modulus


def hecke_tp(f: QExpansion, p: int, ctx: HeckeContext) -> QExpansion:
    """Classical T_p; output precision floor(P/p)."""
    ell = _require_reduced(f)
    if not is_prime(p):
        raise DomainError("Hecke index must be prime", p=p)
    if f.valuation < 0:
        raise DomainError("T_p needs a holomorphic expansion", valuation=f.valuation)
    c = ctx.char_value(p, ell)
    out_prec = f.precision // p
    if out_prec < 1:
        raise PrecisionError("T_p needs precision ≥ p", p=p, precision=f.precision)
    a = f.dense(f.precision)
    out = a[: p * out_prec : p].copy()
    head = (out_prec + p - 1) // p
    out[::p] = (out[::p] + c * a[:head]) % ell
    return QExpansion(1, 0, out % ell, out_prec, ell, f.descriptor)


def composite_identity_check(f: QExpansion, p: int, m: int, k: int, bound: int) -> CompositeCheck:
    """Evaluate the composite identity for n = 1..bound; reports the least failure."""
    ell = _require_reduced(f)
    if m < 1:
        raise DomainError("gap exponent must be at least 1", m=m)
    if not is_prime(p):
        raise DomainError("p must be prime", p=p)
    Mp = p ** (m + 1)
    need = bound * Mp + 1
    if f.precision < need:
        raise PrecisionError("composite identity needs more coefficients", needed=need, precision=f.precision)
    a = f.dense(need)
    ns = np.arange(1, bound + 1, dtype=np.int64)

    total = ((p + 1) % ell) * a[ns * Mp]
    for i in range(m + 2):
        ai = p**i
        mask = ns % ai == 0
        coef = (p * pow(ai, k - 1, ell)) % ell
        total[mask] -= coef * a[ns[mask] * Mp // (ai * ai)]
    pk = pow(p, k - 1, ell)
    for i in range(m):
        ai = p**i
        mask = ns % ai == 0
        coef = (pk * pow(ai, k - 1, ell)) % ell
        total[mask] += coef * a[ns[mask] * Mp // (p * p * ai * ai)]
    total %= ell

    fails = np.flatnonzero(total)
    witness = int(ns[fails[0]]) if fails.size else None
    log.debug("composite identity p=%d m=%d bound=%d: %s", p, m, bound, "pass" if witness is None else f"fails at {witness}")
    return CompositeCheck(witness is None, witness, p, m, bound)


def theta_kill(g: QExpansion, beta: int) -> QExpansion:
    """g - (β|ℓ) Θ^{(ℓ-1)/2} g; vanishes on every ℓZ + β' with (β'|ℓ) = (β|ℓ)."""
    ell = _require_reduced(g)
    if beta % ell == 0:
        raise DomainError("theta_kill needs ℓ ∤ β; use theta_zero_kill", ell=ell, beta=beta)
    sign = kronecker(beta, ell)
    return qs.sub(g, qs.scale(qs.theta_power(g, (ell - 1) // 2), sign))


def theta_zero_kill(g: QExpansion) -> QExpansion:
    """Θg; vanishes on ℓZ."""
    _require_reduced(g)
    return qs.theta(g)
