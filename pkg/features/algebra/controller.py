"""
features/algebra/controller.py
-------------------------------
Operations on finite fields and characters:

- residue / mult_order / sqrt_mod / kronecker
- cyclotomic_field_with_root(ℓ, M): least splitting field of x^M - 1 over
  F_ℓ together with a primitive M-th root of unity
- quadratic_extension(ℓ, D): F_ℓ(√D) for a non-residue D
- field_sqrt: square roots inside any FieldContext
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Optional

import galois
import numpy as np

from core.config import EXT_MAX_DEGREE
from core.errors import DomainError, NotAUnitError, RamifiedModulusError
from core.log import get_logger
from features.algebra.model import ExtElement, FieldContext, FieldElement, Residue
from features.algebra.numbers import divisors, is_prime, kronecker, order_mod

log = get_logger("Algebra")

__all__ = [
    "residue", "mult_order", "sqrt_mod", "kronecker", "field_sqrt",
    "cyclotomic_polynomial", "cyclotomic_field_with_root", "quadratic_extension",
    "least_nonresidue",
]


def residue(value: int, ell: int) -> Residue:
    return Residue(value, ell)


def mult_order(x: FieldElement) -> int:
    """Least d ≥ 1 with x^d = 1 in the field of x."""
    if x.is_zero():
        raise NotAUnitError("zero has no multiplicative order")
    return x.multiplicative_order()


def least_nonresidue(ell: int) -> int:
    for n in range(2, ell):
        if kronecker(n, ell) == -1:
            return n
    raise DomainError("no quadratic non-residue", ell=ell)


# ------------------------------------------------------------
# Square roots
# ------------------------------------------------------------
def sqrt_mod(a: Residue) -> Optional[Residue]:
    """Least square root of a in F_ℓ (as an integer in [0, ℓ)), or None."""
    ell, v = a.ell, a.value
    if v == 0:
        return Residue(0, ell)
    if ell == 2:
        return Residue(v, ell)
    if kronecker(v, ell) != 1:
        return None
    q, s = ell - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = least_nonresidue(ell)
    m, c, t, r = s, pow(z, q, ell), pow(v, q, ell), pow(v, (q + 1) // 2, ell)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % ell
            i += 1
        b = pow(c, 1 << (m - i - 1), ell)
        m, c, t, r = i, b * b % ell, t * b * b % ell, r * b % ell
    return Residue(min(r, ell - r), ell)


def field_sqrt(a: FieldElement) -> Optional[FieldElement]:
    """Square root in the field of a; for extensions the root with the smaller integer encoding."""
    if isinstance(a, Residue):
        return sqrt_mod(a)
    if a.is_zero():
        return a.ctx.zero()
    if not a.is_square():
        return None
    r = a.ctx.from_gf_element(np.sqrt(np.atleast_1d(a.gf()))[0])
    return min(r, -r, key=ExtElement.to_int)


# ------------------------------------------------------------
# Cyclotomic fields
# ------------------------------------------------------------
@lru_cache(maxsize=256)
def cyclotomic_polynomial(M: int, ell: int) -> galois.Poly:
    """Φ_M over F_ℓ, by dividing x^M - 1 by the Φ_d of the proper divisors."""
    GF = galois.GF(ell)
    poly = galois.Poly.Degrees([M, 0], coeffs=[1, ell - 1], field=GF)
    for d in divisors(M):
        if d < M:
            poly = poly // cyclotomic_polynomial(d, ell)
    return poly


@lru_cache(maxsize=256)
def cyclotomic_field_with_root(ell: int, M: int) -> tuple[FieldContext, ExtElement]:
    """
    F_ℓ(ζ_M) presented modulo the least irreducible factor of Φ_M
    (coefficients compared from x^{d-1} down to x^0), and ζ the class of x.
    """
    if M < 1:
        raise DomainError("modulus must be positive", modulus=M)
    if not is_prime(ell):
        raise DomainError("field characteristic must be prime", ell=ell)
    if math.gcd(ell, M) != 1:
        raise RamifiedModulusError("ℓ divides the modulus", ell=ell, modulus=M)
    d = order_mod(ell, M)
    if d > EXT_MAX_DEGREE:
        raise DomainError("extension degree above the supported cap", ell=ell, modulus=M, degree=d, cap=EXT_MAX_DEGREE)

    phi = cyclotomic_polynomial(M, ell)
    if phi.degree == d:
        candidates = [phi]
    else:
        candidates, _ = phi.factors()
    best = min(candidates, key=lambda f: tuple(int(c) for c in f.coeffs))
    ctx = FieldContext(ell, d, tuple(int(c) for c in reversed(best.coeffs)))
    zeta = ctx.gen()
    log.debug("F_%d(zeta_%d) has degree %d, modulus %s", ell, M, d, list(ctx.modulus))
    return ctx, zeta


def quadratic_extension(ell: int, D: int) -> FieldContext:
    """F_ℓ[y]/(y^2 - D) for D a non-residue mod ℓ."""
    if ell == 2 or not is_prime(ell):
        raise DomainError("quadratic extensions need an odd prime", ell=ell)
    if kronecker(D % ell, ell) != -1:
        raise DomainError("D must be a quadratic non-residue", ell=ell, D=D)
    return FieldContext(ell, 2, ((-D) % ell, 0, 1))
