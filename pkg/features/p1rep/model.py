"""
features/p1rep/model.py
------------------------
The projective line P¹(Z/M) and vectors of the permutation module
F_{ℓ^d}{P¹(Z/M)}.

Vector coefficients are a length-n galois FieldArray over the GF(ℓ^d)
class of the vector's FieldContext; entry i is the coefficient of point i.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import galois
import numpy as np

from core.errors import ContextMismatchError
from features.algebra.model import ExtElement, FieldContext


@dataclass(frozen=True, order=True)
class P1Point:
    c: int
    d: int

    def __str__(self) -> str:
        return f"({self.c}:{self.d})"


@dataclass(frozen=True, eq=False)
class P1Space:
    modulus: int
    points: tuple[P1Point, ...]
    index: dict = field(repr=False)
    _perms: dict = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True, eq=False)
class P1Vector:
    space: P1Space
    ctx: FieldContext
    coeffs: galois.FieldArray

    def __post_init__(self) -> None:
        if not isinstance(self.coeffs, self.ctx.gf):
            arr = np.asarray(self.coeffs)
            # integer encodings of F_{ℓ^d} are only reducible mod ℓ when d = 1
            object.__setattr__(self, "coeffs", self.ctx.gf(arr % self.ctx.ell if self.ctx.degree == 1 else arr))

    @property
    def modulus(self) -> int:
        return self.space.modulus

    def coefficient(self, i: int) -> ExtElement:
        return self.ctx.from_gf_element(self.coeffs[i])

    def is_zero(self) -> bool:
        return not np.any(self.coeffs.view(np.ndarray))

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.coeffs.view(np.ndarray))

    def coefficient_sum(self) -> ExtElement:
        return self.ctx.from_gf_element(np.sum(self.coeffs))

    def _check(self, other: "P1Vector") -> None:
        if self.space.modulus != other.space.modulus or self.ctx != other.ctx:
            raise ContextMismatchError("vectors over different modules", left=self.space.modulus, right=other.space.modulus)

    def __add__(self, other: "P1Vector") -> "P1Vector":
        self._check(other)
        return P1Vector(self.space, self.ctx, self.coeffs + other.coeffs)

    def __sub__(self, other: "P1Vector") -> "P1Vector":
        self._check(other)
        return P1Vector(self.space, self.ctx, self.coeffs - other.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, P1Vector):
            return NotImplemented
        return (
            self.space.modulus == other.space.modulus
            and self.ctx == other.ctx
            and bool(np.array_equal(self.coeffs.view(np.ndarray), other.coeffs.view(np.ndarray)))
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Submodule:
    space: P1Space
    ctx: FieldContext
    rows: galois.FieldArray       # (k, n), reduced row echelon form
    pivots: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.pivots)
