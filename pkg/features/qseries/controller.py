"""
features/qseries/controller.py
-------------------------------
Arithmetic and operators on QExpansion:

- series / one                      constructors
- add / sub / neg / scale / mul / invert / power
- theta, theta_power                Θ = q d/dq on the numerator grid
- sieve, u_operator, v_operator     progressions and q -> q^M
- twist, reduce_mod, truncate
- shift_to_grid / raw_grid          lattice coordinates for scanning

Binary operations merge denominators by rescaling to the lcm grid and
refuse to mix an exact series with a reduced one.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from core.errors import DomainError, DomainMismatchError, PrecisionError
from features.algebra.model import KroneckerChar
from features.algebra.numbers import is_prime
from features.qseries.convolve import conv_exact, conv_mod, inverse_exact, inverse_mod
from features.qseries.model import FormDescriptor, QExpansion


# ------------------------------------------------------------
# Constructors
# ------------------------------------------------------------
def series(
    coeffs,
    valuation: int = 0,
    precision: Optional[int] = None,
    modulus: Optional[int] = None,
    denom: int = 1,
    descriptor: Optional[FormDescriptor] = None,
) -> QExpansion:
    """Build a QExpansion from the coefficients at valuation, valuation+1, ..."""
    coeffs = list(coeffs)
    if precision is None:
        precision = valuation + len(coeffs)
    length = precision - valuation
    if len(coeffs) < length:
        coeffs = coeffs + [0] * (length - len(coeffs))
    return QExpansion(denom, valuation, np.array(coeffs[:length], dtype=object), precision, modulus, descriptor)


def one(precision: int, modulus: Optional[int] = None) -> QExpansion:
    return series([1], precision=precision, modulus=modulus)


def _zeros(length: int, modulus: Optional[int]) -> np.ndarray:
    return np.zeros(max(length, 0), dtype=object if modulus is None else np.int64)


def _reduce(arr: np.ndarray, modulus: Optional[int]) -> np.ndarray:
    return arr if modulus is None else arr % modulus


# ------------------------------------------------------------
# Grid helpers
# ------------------------------------------------------------
def _rescale(f: QExpansion, s: int) -> QExpansion:
    """Same series written on the grid with denominator denom·s."""
    if s == 1:
        return f
    arr = _zeros(s * f.coeffs.size, f.modulus)
    arr[::s] = f.coeffs
    return QExpansion(f.denom * s, f.valuation * s, arr, f.precision * s, f.modulus, f.descriptor)


def _merge(f: QExpansion, g: QExpansion) -> tuple[QExpansion, QExpansion]:
    if f.modulus != g.modulus:
        raise DomainMismatchError("series over different coefficient domains", left=f.domain, right=g.domain)
    n = f.denom * g.denom // math.gcd(f.denom, g.denom)
    return _rescale(f, n // f.denom), _rescale(g, n // g.denom)


def _combined_descriptor(f: QExpansion, g: QExpansion) -> Optional[FormDescriptor]:
    a, b = f.descriptor, g.descriptor
    if a is None or b is None:
        return None
    level = a.level * b.level // math.gcd(a.level, b.level)
    return FormDescriptor(f"{a.name}*{b.name}", a.weight + b.weight, level)


# ------------------------------------------------------------
# Ring operations
# ------------------------------------------------------------
def _add_scaled(f: QExpansion, g: QExpansion, sign: int) -> QExpansion:
    f, g = _merge(f, g)
    v = min(f.valuation, g.valuation)
    p = min(f.precision, g.precision)
    out = _zeros(p - v, f.modulus)
    for h, s in ((f, 1), (g, sign)):
        hi = min(h.precision, p)
        if hi > h.valuation:
            chunk = h.coeffs[: hi - h.valuation]
            out[h.valuation - v : hi - v] += chunk if s == 1 else -chunk
    return QExpansion(f.denom, v, _reduce(out, f.modulus), p, f.modulus, f.descriptor)


def add(f: QExpansion, g: QExpansion) -> QExpansion:
    return _add_scaled(f, g, 1)


def sub(f: QExpansion, g: QExpansion) -> QExpansion:
    return _add_scaled(f, g, -1)


def scale(f: QExpansion, c: int) -> QExpansion:
    c = int(c)
    if f.modulus is not None:
        c %= f.modulus
    return f.with_(coeffs=_reduce(f.coeffs * c, f.modulus))


def neg(f: QExpansion) -> QExpansion:
    return scale(f, -1)


def mul(f: QExpansion, g: QExpansion) -> QExpansion:
    """Product; known up to min(P_f + v_g, P_g + v_f)."""
    f, g = _merge(f, g)
    v = f.valuation + g.valuation
    p = min(f.precision + g.valuation, g.precision + f.valuation)
    n = p - v
    if f.modulus is None:
        arr = conv_exact(f.coeffs, g.coeffs, n)
    else:
        arr = conv_mod(f.coeffs, g.coeffs, f.modulus, n)
    return QExpansion(f.denom, v, arr, p, f.modulus, _combined_descriptor(f, g))


def _normalized(f: QExpansion) -> QExpansion:
    """Drop leading zero coefficients so that c(valuation) ≠ 0."""
    nz = np.flatnonzero(f.coeffs != 0)
    if nz.size == 0:
        if f.coeffs.size == 0:
            raise PrecisionError("no known coefficients", valuation=f.valuation, precision=f.precision)
        raise DomainError("zero series has no inverse")
    first = int(nz[0])
    if first == 0:
        return f
    return f.with_(valuation=f.valuation + first, coeffs=f.coeffs[first:])


def invert(f: QExpansion) -> QExpansion:
    """1/f for f with unit leading coefficient; valuation -v, precision P - 2v."""
    f = _normalized(f)
    n = f.precision - f.valuation
    if f.modulus is None:
        arr = inverse_exact(f.coeffs, n)
    else:
        arr = inverse_mod(f.coeffs, f.modulus, n)
    return QExpansion(f.denom, -f.valuation, arr, f.precision - 2 * f.valuation, f.modulus, None)


def power(f: QExpansion, r: int) -> QExpansion:
    if r < 0:
        return power(invert(f), -r)
    result = None
    base = f
    while r > 0:
        if r & 1:
            result = base if result is None else mul(result, base)
        r >>= 1
        if r:
            base = mul(base, base)
    if result is None:
        return QExpansion(f.denom, 0, _one_window(f), f.precision - f.valuation, f.modulus, None)
    return result


def _one_window(f: QExpansion) -> np.ndarray:
    arr = _zeros(f.precision - f.valuation, f.modulus)
    if arr.size:
        arr[0] = 1
    return arr


# ------------------------------------------------------------
# Differential operators
# ------------------------------------------------------------
def theta(f: QExpansion) -> QExpansion:
    """Θf = Σ n c(n) q^n (numerator grid)."""
    return theta_power(f, 1)


def theta_power(f: QExpansion, r: int) -> QExpansion:
    if r < 0:
        raise DomainError("theta power must be non-negative", r=r)
    ns = np.arange(f.valuation, f.precision, dtype=np.int64)
    if f.modulus is None:
        factors = np.array([int(n) ** r for n in ns], dtype=object)
        return f.with_(coeffs=f.coeffs * factors)
    m = f.modulus
    table = np.array([pow(i, r, m) for i in range(m)], dtype=np.int64)
    return f.with_(coeffs=(f.coeffs * table[ns % m]) % m)


# ------------------------------------------------------------
# Progressions and dilations
# ------------------------------------------------------------
def sieve(f: QExpansion, M: int, beta: int) -> QExpansion:
    """Keep the terms with numerator ≡ β (mod M)."""
    if M < 1 or not 0 <= beta < M:
        raise DomainError("sieve needs M ≥ 1 and 0 ≤ β < M", M=M, beta=beta)
    ns = np.arange(f.valuation, f.precision, dtype=np.int64)
    keep = (ns % M) == beta
    arr = f.coeffs.copy()
    arr[~keep] = 0
    return f.with_(coeffs=arr)


def u_operator(f: QExpansion, M: int) -> QExpansion:
    """U_M: Σ c(Mn) q^n."""
    if M < 1:
        raise DomainError("U operator needs M ≥ 1", M=M)
    if f.precision < M:
        raise PrecisionError("U operator needs precision ≥ M", M=M, precision=f.precision)
    v = -((-f.valuation) // M)
    p = f.precision // M
    if p < v:
        p = v
    idx = np.arange(v, p, dtype=np.int64) * M - f.valuation
    return QExpansion(f.denom, v, f.coeffs[idx], p, f.modulus, f.descriptor)


def v_operator(f: QExpansion, M: int) -> QExpansion:
    """V_M: f(q) -> f(q^M)."""
    if M < 1:
        raise DomainError("V operator needs M ≥ 1", M=M)
    out = _rescale(f, M)
    return QExpansion(f.denom, out.valuation, out.coeffs, out.precision, f.modulus, f.descriptor)


def twist(f: QExpansion, chi: KroneckerChar) -> QExpansion:
    """Σ χ(n) c(n) q^n on an integral grid."""
    if f.denom != 1:
        raise DomainError("twists are defined on integral exponents", denom=f.denom)
    values = np.array([chi(int(n)) for n in range(f.valuation, f.precision)], dtype=np.int64)
    if f.modulus is None:
        return f.with_(coeffs=f.coeffs * values.astype(object))
    return f.with_(coeffs=(f.coeffs * values) % f.modulus)


def reduce_mod(f: QExpansion, ell: int) -> QExpansion:
    """Reduction of an exact series modulo a prime ℓ."""
    if not is_prime(ell):
        raise DomainError("reduction modulus must be prime", ell=ell)
    if f.modulus is not None:
        if f.modulus == ell:
            return f
        raise DomainMismatchError("series already reduced modulo another integer", left=f.domain, right=ell)
    arr = np.array([int(c) % ell for c in f.coeffs], dtype=np.int64)
    return QExpansion(f.denom, f.valuation, arr, f.precision, ell, f.descriptor)


def truncate(f: QExpansion, precision: int) -> QExpansion:
    if precision > f.precision:
        raise PrecisionError("cannot raise precision by truncation", requested=precision, precision=f.precision)
    precision = max(precision, f.valuation)
    return f.with_(coeffs=f.coeffs[: precision - f.valuation], precision=precision)


# ------------------------------------------------------------
# Lattice coordinates
# ------------------------------------------------------------
def shift_to_grid(f: QExpansion) -> tuple[QExpansion, int]:
    """
    Write f = Σ c(m) q^{m + r/denom} with all exponents in one coset.
    Returns the integral series m -> c(denom·m + r) and r ∈ (-denom, 0].
    """
    n = f.denom
    if n == 1:
        return f, 0
    nz = f.nonzero_indices()
    anchor = int(nz[0]) if nz.size else f.valuation
    r = anchor % n
    r = r - n if r else 0
    if nz.size and np.any((nz - r) % n != 0):
        raise DomainError("nonzero exponents lie in several cosets", denom=n)
    lo = -((r - f.valuation) // n)
    hi = -((r - f.precision) // n)
    idx = np.arange(lo, hi, dtype=np.int64) * n + r - f.valuation
    return QExpansion(1, lo, f.coeffs[idx], hi, f.modulus, f.descriptor), r


def raw_grid(f: QExpansion) -> QExpansion:
    """The numerator sequence n -> c(n) as an integral series."""
    return QExpansion(1, f.valuation, f.coeffs, f.precision, f.modulus, f.descriptor)
