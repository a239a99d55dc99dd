"""
features/criterion/preimage.py
-------------------------------
U_ℓ preimages and filtrations of level-one forms mod ℓ.

Membership in weight k' is decided on the Sturm window of the starting
weight, using the monomial basis Δ^j E4^a E6^b of weight k' directly.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from core.config import DEFAULT_WEIGHT_CAP, MIN_BASIS_ELL
from core.errors import DegenerateBasisError, DomainError, NoPreimageError, NotInSpanError, PrecisionError, ZeroFormError
from core.log import get_logger
from features.algebra import linalg
from features.forms.controller import dimension, monomial_basis
from features.qseries import controller as qs
from features.qseries.model import QExpansion

log = get_logger("Preimage")


def _require(f: QExpansion) -> int:
    ell = f.modulus
    if ell is None or ell < MIN_BASIS_ELL:
        raise DomainError("needs a series reduced mod a prime ℓ ≥ 5", domain=f.domain)
    if f.denom != 1 or f.valuation < 0:
        raise DomainError("needs a holomorphic integral-grid series")
    return ell


def in_weight_span(f: QExpansion, k: int, ell: int, window: Optional[int] = None) -> Optional[np.ndarray]:
    """Monomial coordinates of f in M_k mod ℓ on the first `window` coefficients, or None."""
    if k < 0 or k % 2 or dimension(k) == 0:
        return None if not f.is_zero() else np.zeros(0, dtype=np.int64)
    window = window or k // 12 + 1
    if f.precision < window:
        raise PrecisionError("span test beyond precision", window=window, precision=f.precision)
    _, rows = monomial_basis(k, ell, window)
    sol = linalg.solve(linalg.to_field(rows.T, ell), linalg.to_field(f.dense(window), ell))
    return None if sol is None else linalg.as_int(sol)


def _preimage_step(g: QExpansion, k: int, ell: int, cap: int) -> tuple[QExpansion, int]:
    """
    Least k' ≡ k (mod ℓ-1), k ≤ k' ≤ cap, with h ∈ M_k' and U_ℓ h ≡ g.
    Among the preimages of that weight, h has the lexicographically least
    coordinates on the reduced echelon basis of M_k'.
    """
    candidates = list(range(k, cap + 1, ell - 1))
    if not candidates:
        raise NoPreimageError("no candidate weight below the cap", k=k, cap=cap)
    width = ell * (cap // 12 + 1)

    def solvable(kp: int) -> bool:
        W = kp // 12 + 1
        if g.precision < W:
            raise PrecisionError("preimage search needs more coefficients of g", needed=W, precision=g.precision)
        _, rows = monomial_basis(kp, ell, width)
        if rows.shape[0] == 0:
            return False
        A = rows[:, ::ell][:, :W].T
        return linalg.solve(linalg.to_field(A, ell), linalg.to_field(g.dense(W), ell)) is not None

    # gallop over candidate indices, then bisect back to the least solvable weight
    lo, hi, found = -1, 0, False
    while hi < len(candidates):
        found = solvable(candidates[hi])
        if found:
            break
        lo, hi = hi, 2 * hi + 1
    if not found:
        if lo != len(candidates) - 1:
            hi = len(candidates) - 1
            found = solvable(candidates[hi])
        if not found:
            raise NoPreimageError("no U_ℓ preimage below the weight cap", k=k, ell=ell, cap=cap)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if solvable(candidates[mid]):
            hi = mid
        else:
            lo = mid
    weight = candidates[hi]

    W = weight // 12 + 1
    _, rows = monomial_basis(weight, ell, width)
    E, _ = linalg.echelon(linalg.to_field(rows, ell))
    coords = linalg.least_solution(E[:, ::ell][:, :W].T, linalg.to_field(g.dense(W), ell))
    if coords is None:
        raise DegenerateBasisError("echelon basis lost the preimage", weight=weight, ell=ell)
    h = QExpansion(1, 0, linalg.as_int(coords @ E), width, ell)
    if np.any(qs.u_operator(h, ell).dense(W) != g.dense(W)):
        raise DegenerateBasisError("preimage does not reproduce g", weight=weight, ell=ell)
    log.info("U_%d preimage found in weight %d", ell, weight)
    return h, weight


def u_ell_preimage(g: QExpansion, k: int, steps: int = 1, weight_cap: int = DEFAULT_WEIGHT_CAP) -> tuple[QExpansion, int]:
    """h and its weight with U_ℓ^steps h ≡ g; g of weight k."""
    ell = _require(g)
    if steps < 0:
        raise DomainError("steps must be non-negative", steps=steps)
    h, weight = g, k
    for _ in range(steps):
        h, weight = _preimage_step(h, weight, ell, weight_cap)
    return h, weight


def filtration(f: QExpansion, k_start: int) -> int:
    """Least k' ≡ k_start (mod ℓ-1), k' ≤ k_start, with f in M_k' mod ℓ."""
    ell = _require(f)
    if f.is_zero():
        raise ZeroFormError("the zero form has no filtration")
    window = k_start // 12 + 1
    if in_weight_span(f, k_start, ell, window) is None:
        raise NotInSpanError("form is not in the starting weight", k=k_start, ell=ell)
    k = k_start
    while k - (ell - 1) >= 0 and in_weight_span(f, k - (ell - 1), ell, window) is not None:
        k -= ell - 1
    return k
