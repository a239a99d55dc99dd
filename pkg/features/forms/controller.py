"""
features/forms/controller.py
-----------------------------
Generators and level-one bases.

Generators (exact by default, reduced when `modulus` is given):
- eisenstein(4|6), pentagonal, delta = q·∏(1-q^n)^24, eta_power(r)
- partition_series (1/∏(1-q^n)), partition_mod, partition_recurrence

Bases:
- dimension(k), monomial_basis(k, ℓ, P): Δ^j E4^a E6^b with 4a + 6b + 12j = k
- level_one_basis: the echelon form of the monomial basis mod ℓ
- coefficient_full_rank_witness: indices prime to p on which the basis
  coefficient matrix is invertible

Named forms for the CLI come from build_form ("delta", "e4*delta", "eta^-1", ...).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from core.config import BASIS_SLACK, MIN_BASIS_ELL, PARTITION_RECURRENCE_MAX
from core.errors import DegenerateBasisError, DomainError, PrecisionError, UsageError, WitnessError
from core.log import get_logger
from features.algebra import linalg
from features.algebra.model import KroneckerChar
from features.algebra.numbers import is_prime
from features.forms.model import LevelOneBasis
from features.qseries import controller as qs
from features.qseries.convolve import conv_mod, inverse_exact, inverse_mod
from features.qseries.model import FormDescriptor, QExpansion

log = get_logger("Forms")


# ------------------------------------------------------------
# Helpers
# ------------------------------------------------------------
def _finish(arr: np.ndarray, modulus: Optional[int]) -> np.ndarray:
    if modulus is None:
        return arr
    return np.array([int(c) % modulus for c in arr], dtype=np.int64) if arr.dtype == object else arr % modulus


def _divisor_sums(power: int, precision: int, modulus: Optional[int]) -> np.ndarray:
    """σ_power(n) for 0 ≤ n < precision, σ(0) = 0."""
    if modulus is None:
        sig = np.zeros(precision, dtype=object)
        for d in range(1, precision):
            sig[d::d] += d**power
        return sig
    sig = np.zeros(precision, dtype=np.int64)
    for d in range(1, precision):
        sig[d::d] += pow(d, power, modulus)
        if d % 256 == 0:
            sig %= modulus
    return sig % modulus


def _generalized_pentagonals(limit: int) -> list[tuple[int, int]]:
    """(g, sign) with g = k(3k∓1)/2 < limit, sign (-1)^k, in increasing g."""
    out = []
    k = 1
    while k * (3 * k - 1) // 2 < limit:
        sign = -1 if k % 2 else 1
        out.append((k * (3 * k - 1) // 2, sign))
        if k * (3 * k + 1) // 2 < limit:
            out.append((k * (3 * k + 1) // 2, sign))
        k += 1
    return out


# ------------------------------------------------------------
# Generators
# ------------------------------------------------------------
def eisenstein(k: int, precision: int, modulus: Optional[int] = None) -> QExpansion:
    """E4 = 1 + 240 Σ σ3(n) q^n, E6 = 1 - 504 Σ σ5(n) q^n."""
    if k not in (4, 6):
        raise DomainError("only E4 and E6 are generated", k=k)
    if precision < 1:
        raise DomainError("precision must be at least 1", precision=precision)
    factor = 240 if k == 4 else -504
    sig = _divisor_sums(k - 1, precision, modulus)
    arr = sig * (factor if modulus is None else factor % modulus)
    arr[0] = 1
    return QExpansion(1, 0, _finish(arr, modulus), precision, modulus, FormDescriptor(f"e{k}", k))


def pentagonal(precision: int, modulus: Optional[int] = None) -> QExpansion:
    """Euler's product ∏(1 - q^n) = Σ (-1)^k q^{k(3k-1)/2}."""
    arr = np.zeros(precision, dtype=object)
    if precision > 0:
        arr[0] = 1
    for g, sign in _generalized_pentagonals(precision):
        arr[g] = sign
    return QExpansion(1, 0, _finish(arr, modulus), precision, modulus, FormDescriptor("pentagonal", Fraction(1, 2)))


def delta(precision: int, modulus: Optional[int] = None) -> QExpansion:
    """Δ = q·P^24 with P the pentagonal series; P^24 = P^16·P^8 from repeated squaring."""
    if precision < 2:
        raise DomainError("delta needs precision ≥ 2", precision=precision)
    p1 = pentagonal(precision - 1, modulus)
    p2 = qs.mul(p1, p1)
    p4 = qs.mul(p2, p2)
    p8 = qs.mul(p4, p4)
    p16 = qs.mul(p8, p8)
    p24 = qs.mul(p16, p8)
    log.debug("delta to precision %d (%s)", precision, p24.domain)
    return QExpansion(1, 1, p24.coeffs, precision, modulus, FormDescriptor("delta", 12))


def eta_power(r: int, precision: int, modulus: Optional[int] = None) -> QExpansion:
    """η^r on the grid (1/24)Z: valuation r, known up to r + 24·precision."""
    base = qs.power(pentagonal(precision, modulus), r)
    base = qs.truncate(base, precision) if base.precision > precision else base
    stretched = qs.v_operator(base, 24)
    return QExpansion(
        24, r + stretched.valuation, stretched.coeffs, r + stretched.precision,
        modulus, FormDescriptor(f"eta^{r}", Fraction(r, 2)),
    )


def partition_series(precision: int, modulus: Optional[int] = None) -> QExpansion:
    """Σ p(n) q^n on integral exponents (1/η shifted by q^{1/24})."""
    pent = pentagonal(precision)
    if modulus is None:
        arr = inverse_exact(pent.coeffs, precision)
    else:
        arr = inverse_mod(_finish(pent.coeffs, modulus), modulus, precision)
    return QExpansion(1, 0, arr, precision, modulus, FormDescriptor("partition", Fraction(-1, 2)))


def partition_recurrence(m: Optional[int], n_max: int) -> np.ndarray:
    """p(0..n_max) mod m by the pentagonal recurrence (exact integers when m is None)."""
    if n_max < 0:
        raise DomainError("n_max must be non-negative", n_max=n_max)
    pents = _generalized_pentagonals(n_max + 1)
    values = [0] * (n_max + 1)
    values[0] = 1 if m is None else 1 % m
    for n in range(1, n_max + 1):
        s = 0
        for g, sign in pents:
            if g > n:
                break
            # sign (-1)^k enters the recurrence with the opposite sign
            s -= sign * values[n - g]
        values[n] = s if m is None else s % m
    return np.array(values, dtype=object if m is None else np.int64)


def partition_mod(m: int, n_max: int) -> np.ndarray:
    """p(0..n_max) mod m; recurrence for small n_max, series inversion above."""
    if m < 2:
        raise DomainError("modulus must be at least 2", m=m)
    if n_max < 0:
        raise DomainError("n_max must be non-negative", n_max=n_max)
    if n_max <= PARTITION_RECURRENCE_MAX:
        return partition_recurrence(m, n_max)
    log.info("partition values to %d mod %d by series inversion", n_max, m)
    return partition_series(n_max + 1, m).coeffs.copy()


# ------------------------------------------------------------
# Level-one spaces
# ------------------------------------------------------------
def dimension(k: int) -> int:
    """dim M_k(SL2(Z))."""
    if k < 0 or k % 2:
        return 0
    return k // 12 if k % 12 == 2 else k // 12 + 1


def basis_precision(k: int, slack: int = BASIS_SLACK) -> int:
    return max(2 * dimension(k), k // 12 + 1) + slack


def _monomials(k: int) -> list[tuple[int, int, int]]:
    out = []
    for j in range(dimension(k)):
        rest = k - 12 * j
        b = 1 if rest % 4 == 2 else 0
        out.append(((rest - 6 * b) // 4, b, j))
    return out


class _PowerTable:
    """Powers of E4, E6 and Δ mod ℓ on a fixed window, filled on demand."""

    def __init__(self, ell: int, precision: int) -> None:
        self.ell = ell
        self.precision = precision
        one = np.zeros(precision, dtype=np.int64)
        one[0] = 1
        self._base = {
            "e4": eisenstein(4, precision, ell).coeffs,
            "e6": eisenstein(6, precision, ell).coeffs,
            "delta": delta(precision, ell).dense(precision) if precision >= 2 else np.zeros(precision, dtype=np.int64),
        }
        self._powers = {name: [one] for name in self._base}

    def power(self, name: str, e: int) -> np.ndarray:
        powers = self._powers[name]
        while len(powers) <= e:
            powers.append(conv_mod(powers[-1], self._base[name], self.ell, self.precision))
        return powers[e]

    def monomial(self, a: int, b: int, j: int) -> np.ndarray:
        row = self.power("delta", j)
        if a:
            row = conv_mod(row, self.power("e4", a), self.ell, self.precision)
        if b:
            row = conv_mod(row, self.power("e6", b), self.ell, self.precision)
        return row


@lru_cache(maxsize=4)
def _power_table(ell: int, precision: int) -> _PowerTable:
    return _PowerTable(ell, precision)


def monomial_basis(k: int, ell: int, precision: int) -> tuple[list[tuple[int, int, int]], np.ndarray]:
    """Provenance (a, b, j) and the D × precision rows of Δ^j E4^a E6^b mod ℓ."""
    if not is_prime(ell):
        raise DomainError("basis modulus must be prime", ell=ell)
    monos = _monomials(k)
    table = _power_table(ell, precision)
    rows = np.zeros((len(monos), precision), dtype=np.int64)
    for i, (a, b, j) in enumerate(monos):
        rows[i] = table.monomial(a, b, j)
    return monos, rows


def level_one_basis(k: int, ell: int, precision: int) -> LevelOneBasis:
    if ell < MIN_BASIS_ELL or not is_prime(ell):
        raise DomainError("level-one bases need a prime ℓ ≥ 5", ell=ell)
    if k < 0 or k % 2:
        raise DomainError("weight must be even and non-negative", k=k)
    D = dimension(k)
    if precision < max(D, 1):
        raise PrecisionError("basis precision below the dimension", precision=precision, dimension=D)
    if D == 0:
        return LevelOneBasis(k, ell, 0, (), (), precision)
    monos, rows = monomial_basis(k, ell, precision)
    R, pivots = linalg.echelon(linalg.to_field(rows, ell))
    if pivots != list(range(D)):
        raise DegenerateBasisError("echelon pivots are not 0..D-1", k=k, ell=ell, pivots=pivots)
    desc = FormDescriptor(f"M{k}", k)
    basis = tuple(QExpansion(1, 0, linalg.as_int(row), precision, ell, desc) for row in R)
    return LevelOneBasis(k, ell, D, basis, tuple(monos), precision)


def coefficient_full_rank_witness(basis: LevelOneBasis, p: int) -> tuple[int, ...]:
    """Greedy indices n ≥ 1, p ∤ n, whose coefficient columns are independent mod ℓ."""
    if not is_prime(p) or p == basis.ell:
        raise DomainError("witness prime must be a prime different from ℓ", p=p, ell=basis.ell)
    D = basis.dimension
    if D == 0:
        return ()
    M = basis.matrix()
    chosen: list[int] = []
    for n in range(1, basis.precision):
        if n % p == 0:
            continue
        trial = chosen + [n]
        if linalg.rank(linalg.to_field(M[:, trial], basis.ell)) == len(trial):
            chosen = trial
            if len(chosen) == D:
                return tuple(chosen)
    raise WitnessError("no coefficient witness below the precision bound", k=basis.weight, ell=basis.ell, p=p, found=chosen)


# ------------------------------------------------------------
# Named forms and trivial-congruence constructors
# ------------------------------------------------------------
def _build_token(token: str, precision: int, modulus: Optional[int]) -> QExpansion:
    if token == "delta":
        return delta(precision, modulus)
    if token in ("e4", "e6"):
        return eisenstein(int(token[1]), precision, modulus)
    if token == "partition":
        return partition_series(precision, modulus)
    if token.startswith("eta^"):
        try:
            r = int(token[4:])
        except ValueError:
            raise UsageError("eta power must be an integer", form=token) from None
        return eta_power(r, precision, modulus)
    raise UsageError("unknown form", form=token)


def build_form(name: str, precision: int, modulus: Optional[int] = None) -> QExpansion:
    """Registry lookup; '*' multiplies named forms, e.g. 'e4*delta'."""
    tokens = [t.strip() for t in name.lower().split("*") if t.strip()]
    if not tokens:
        raise UsageError("empty form name")
    if precision < 1:
        raise UsageError("precision must be positive", precision=precision)
    result = _build_token(tokens[0], precision, modulus)
    for token in tokens[1:]:
        result = qs.mul(result, _build_token(token, precision, modulus))
    return result


def oldform(f: QExpansion, p: int) -> QExpansion:
    """f(pτ); vanishes on pZ + β for p ∤ β."""
    out = qs.v_operator(f, p)
    d = f.descriptor
    if d is None:
        return out
    return out.with_(descriptor=FormDescriptor(f"{d.name}|V{p}", d.weight, d.level * p, d.character))


def twist_form(f: QExpansion, chi: KroneckerChar) -> QExpansion:
    """Σ χ(n) c(f; n) q^n; a character mod p kills pZ."""
    out = qs.twist(f, chi)
    d = f.descriptor
    if d is None:
        return out
    level = d.level * max(chi.modulus, 1) * (4 * abs(chi.t) if chi.t != 1 else 1)
    return out.with_(descriptor=FormDescriptor(f"{d.name}@{chi.label()}", d.weight, level, chi))
