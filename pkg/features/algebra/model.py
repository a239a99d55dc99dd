"""
features/algebra/model.py
--------------------------
Value types for finite-field arithmetic:

- Residue        element of F_ℓ
- FieldContext   F_ℓ[x]/(f) for a monic irreducible f of degree d
- ExtElement     element of a FieldContext, coefficients low to high
- KroneckerChar  quadratic Dirichlet character n -> (t|n)

Extension arithmetic is done by galois: every context owns a cached
GF(ℓ^d) class built on its modulus, and ExtElement converts its
coefficient tuple to and from that class (digits low to high, the same
integer encoding galois uses).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import galois
import numpy as np

from core.errors import DomainError, DomainMismatchError, NotAUnitError
from features.algebra.numbers import is_prime, kronecker


# ------------------------------------------------------------
# Residue: F_ℓ
# ------------------------------------------------------------
@dataclass(frozen=True)
class Residue:
    value: int
    ell: int

    def __post_init__(self) -> None:
        if not is_prime(self.ell):
            raise DomainError("residue modulus must be prime", ell=self.ell)
        object.__setattr__(self, "value", int(self.value) % self.ell)

    # -- coercion --------------------------------------------------
    def _other(self, other) -> int:
        if isinstance(other, Residue):
            if other.ell != self.ell:
                raise DomainMismatchError("residues modulo different primes", left=self.ell, right=other.ell)
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.ell
        return NotImplemented

    def _wrap(self, value: int) -> "Residue":
        return Residue(value, self.ell)

    # -- arithmetic ------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value * o)

    __rmul__ = __mul__

    def __neg__(self) -> "Residue":
        return self._wrap(-self.value)

    def inverse(self) -> "Residue":
        if self.value == 0:
            raise NotAUnitError("zero has no inverse", ell=self.ell)
        return self._wrap(pow(self.value, -1, self.ell))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self * self._wrap(o).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(o) * self.inverse()

    def __pow__(self, e: int) -> "Residue":
        if e < 0:
            return self.inverse() ** (-e)
        return self._wrap(pow(self.value, e, self.ell))

    # -- comparison ------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Residue):
            return self.ell == other.ell and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.ell
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.ell))

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.ell})"

    # -- field facts -----------------------------------------------
    def is_zero(self) -> bool:
        return self.value == 0

    def is_square(self) -> bool:
        return self.value == 0 or kronecker(self.value, self.ell) == 1

    def multiplicative_order(self) -> int:
        if self.value == 0:
            raise NotAUnitError("order of zero", ell=self.ell)
        return int(galois.GF(self.ell)(self.value).multiplicative_order())

    def to_record(self) -> int:
        return self.value


# ------------------------------------------------------------
# FieldContext: F_ℓ[x]/(f)
# ------------------------------------------------------------
@lru_cache(maxsize=256)
def _field_class(ell: int, modulus: tuple[int, ...]) -> type[galois.FieldArray]:
    """galois GF(ℓ^d) built on the given modulus; GF(ℓ) itself when d = 1."""
    prime = galois.GF(ell)
    if len(modulus) == 2:
        return prime
    poly = galois.Poly(list(reversed(modulus)), field=prime)
    if not poly.is_irreducible():
        raise DomainError("modulus is reducible", ell=ell, modulus=list(modulus))
    return galois.GF(ell ** poly.degree, irreducible_poly=poly)


@dataclass(frozen=True)
class FieldContext:
    ell: int
    degree: int
    modulus: tuple[int, ...]     # monic, low to high, length degree + 1

    def __post_init__(self) -> None:
        modulus = tuple(int(c) % self.ell for c in self.modulus)
        object.__setattr__(self, "modulus", modulus)
        if not is_prime(self.ell):
            raise DomainError("field characteristic must be prime", ell=self.ell)
        if self.degree < 1 or len(modulus) != self.degree + 1 or modulus[-1] != 1:
            raise DomainError("modulus must be monic of the stated degree", degree=self.degree, modulus=list(modulus))
        _field_class(self.ell, modulus)

    @property
    def order(self) -> int:
        return self.ell**self.degree

    @property
    def gf(self) -> type[galois.FieldArray]:
        return _field_class(self.ell, self.modulus)

    # -- coefficient vectors <-> galois ----------------------------
    def to_gf(self, coeffs) -> galois.FieldArray:
        """(..., d) coefficient arrays, low to high, as GF(ℓ^d) elements."""
        arr = np.asarray(coeffs, dtype=np.int64) % self.ell
        if self.degree == 1:
            return self.gf(arr[..., 0])
        return self.gf.Vector(galois.GF(self.ell)(arr[..., ::-1]))

    def from_gf(self, x: galois.FieldArray) -> np.ndarray:
        """Inverse of to_gf."""
        if self.degree == 1:
            return np.asarray(x.view(np.ndarray), dtype=np.int64)[..., None]
        return np.asarray(x.vector().view(np.ndarray), dtype=np.int64)[..., ::-1]

    # -- elements --------------------------------------------------
    def element(self, coeffs) -> "ExtElement":
        return ExtElement(tuple(int(c) for c in coeffs), self)

    def from_gf_element(self, x: galois.FieldArray) -> "ExtElement":
        return self.element(self.from_gf(x))

    def embed(self, value) -> "ExtElement":
        if isinstance(value, ExtElement):
            if value.ctx != self:
                raise DomainMismatchError("elements of different fields")
            return value
        if isinstance(value, Residue):
            if value.ell != self.ell:
                raise DomainMismatchError("residue of another characteristic", left=self.ell, right=value.ell)
            value = value.value
        coeffs = [0] * self.degree
        coeffs[0] = int(value) % self.ell
        return ExtElement(tuple(coeffs), self)

    def zero(self) -> "ExtElement":
        return self.embed(0)

    def one(self) -> "ExtElement":
        return self.embed(1)

    def gen(self) -> "ExtElement":
        """Class of x modulo f."""
        if self.degree == 1:
            return self.embed(-self.modulus[0])
        coeffs = [0] * self.degree
        coeffs[1] = 1
        return ExtElement(tuple(coeffs), self)


# ------------------------------------------------------------
# ExtElement
# ------------------------------------------------------------
@dataclass(frozen=True)
class ExtElement:
    coeffs: tuple[int, ...]
    ctx: FieldContext

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.ctx.degree:
            raise DomainError("coefficient vector has the wrong length", degree=self.ctx.degree, got=len(self.coeffs))
        object.__setattr__(self, "coeffs", tuple(int(c) % self.ctx.ell for c in self.coeffs))

    def _other(self, other) -> "ExtElement":
        if isinstance(other, ExtElement) or isinstance(other, (Residue, int, np.integer)):
            return self.ctx.embed(other)
        return NotImplemented

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=np.int64)

    def gf(self) -> galois.FieldArray:
        return self.ctx.to_gf(self.array)

    def _wrap(self, x: galois.FieldArray) -> "ExtElement":
        return self.ctx.from_gf_element(x)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.gf() + o.gf())

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.gf() - o.gf())

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else o - self

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.gf() * o.gf())

    __rmul__ = __mul__

    def __neg__(self) -> "ExtElement":
        return self._wrap(-self.gf())

    def inverse(self) -> "ExtElement":
        if self.is_zero():
            raise NotAUnitError("zero has no inverse", ell=self.ctx.ell, degree=self.ctx.degree)
        return self._wrap(np.reciprocal(self.gf()))

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else o * self.inverse()

    def __pow__(self, e: int) -> "ExtElement":
        if e < 0:
            return self.inverse() ** (-e)
        return self._wrap(self.gf() ** int(e))

    def __eq__(self, other) -> bool:
        if isinstance(other, ExtElement):
            return self.ctx == other.ctx and self.coeffs == other.coeffs
        if isinstance(other, (Residue, int, np.integer)):
            try:
                return self == self.ctx.embed(other)
            except DomainMismatchError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.coeffs, self.ctx))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __repr__(self) -> str:
        return f"{list(self.coeffs)} in F_{self.ctx.ell}^{self.ctx.degree}"

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_square(self) -> bool:
        return bool(self.gf().is_square())

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise NotAUnitError("order of zero", ell=self.ctx.ell)
        return int(self.gf().multiplicative_order())

    def to_int(self) -> int:
        """Σ c_i ℓ^i, the integer encoding used by galois for GF(ℓ^d)."""
        return sum(c * self.ctx.ell**i for i, c in enumerate(self.coeffs))

    def to_record(self) -> dict:
        return {"coeffs": list(self.coeffs), "modulus": list(self.ctx.modulus)}


FieldElement = Union[Residue, ExtElement]


# ------------------------------------------------------------
# Characters
# ------------------------------------------------------------
@dataclass(frozen=True)
class KroneckerChar:
    """n -> (t|n), forced to 0 when gcd(n, modulus) > 1."""
    t: int = 1
    modulus: int = 1

    def __call__(self, n: int) -> int:
        if self.modulus > 1 and math.gcd(n, self.modulus) > 1:
            return 0
        return kronecker(self.t, n)

    @property
    def is_trivial(self) -> bool:
        return self.t == 1 and self.modulus == 1

    def label(self) -> str:
        if self.is_trivial:
            return "trivial"
        base = "1" if self.t == 1 else f"({self.t}|.)"
        return base if self.modulus == 1 else f"{base} mod {self.modulus}"

    def to_record(self) -> dict:
        return {"t": self.t, "modulus": self.modulus}
