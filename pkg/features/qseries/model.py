"""
features/qseries/model.py
--------------------------
Truncated q-expansions with rational exponents on a fixed grid.

A QExpansion stands for Σ c_n q^{n/denom}, valuation ≤ n < precision.
Coefficients are Python integers (object arrays) when `modulus` is None,
otherwise int64 residues in [0, modulus). Reading an index at or beyond
the precision raises PrecisionError; indices below the valuation are 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

import numpy as np

from core.errors import DomainError, PrecisionError
from features.algebra.model import KroneckerChar


@dataclass(frozen=True)
class FormDescriptor:
    name: str
    weight: Fraction
    level: int = 1
    character: KroneckerChar = field(default_factory=KroneckerChar)

    def __post_init__(self) -> None:
        object.__setattr__(self, "weight", Fraction(self.weight))

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "weight": str(self.weight),
            "level": self.level,
            "character": self.character.to_record(),
        }

    @staticmethod
    def from_record(rec: dict) -> "FormDescriptor":
        char = rec.get("character") or {}
        return FormDescriptor(
            name=rec["name"],
            weight=Fraction(rec["weight"]),
            level=int(rec.get("level", 1)),
            character=KroneckerChar(int(char.get("t", 1)), int(char.get("modulus", 1))),
        )


@dataclass(frozen=True, eq=False)
class QExpansion:
    denom: int
    valuation: int
    coeffs: np.ndarray
    precision: int
    modulus: Optional[int] = None
    descriptor: Optional[FormDescriptor] = None

    def __post_init__(self) -> None:
        if self.denom < 1:
            raise DomainError("exponent denominator must be positive", denom=self.denom)
        if self.precision < self.valuation:
            raise DomainError("precision below valuation", valuation=self.valuation, precision=self.precision)
        if self.modulus is None:
            arr = self.coeffs
            if not (isinstance(arr, np.ndarray) and arr.dtype == object):
                arr = np.array([int(c) for c in np.asarray(arr).ravel()], dtype=object)
        else:
            if self.modulus < 2:
                raise DomainError("coefficient modulus must be at least 2", modulus=self.modulus)
            arr = np.asarray(self.coeffs)
            if arr.dtype == object:
                arr = np.array([int(c) % self.modulus for c in arr], dtype=np.int64)
            else:
                arr = arr.astype(np.int64) % self.modulus
        if arr.shape != (self.precision - self.valuation,):
            raise DomainError(
                "coefficient window does not match valuation and precision",
                length=int(arr.size), valuation=self.valuation, precision=self.precision,
            )
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    # ------------------------------------------------------------
    # Reading
    # ------------------------------------------------------------
    @property
    def domain(self) -> str:
        return "int" if self.modulus is None else f"mod {self.modulus}"

    def __getitem__(self, n: int) -> int:
        """Coefficient of q^{n/denom}."""
        if n >= self.precision:
            raise PrecisionError("coefficient beyond precision", index=n, precision=self.precision)
        if n < self.valuation:
            return 0
        return int(self.coeffs[n - self.valuation])

    def coefficient(self, exponent) -> int:
        """Coefficient of q^exponent for a rational exponent; 0 off the grid."""
        x = Fraction(exponent) * self.denom
        if x.denominator != 1:
            return 0
        return self[int(x)]

    def dense(self, length: int) -> np.ndarray:
        """Coefficients for numerators 0 .. length-1 (zeros below the valuation)."""
        if length > self.precision:
            raise PrecisionError("dense window beyond precision", length=length, precision=self.precision)
        dtype = object if self.modulus is None else np.int64
        out = np.zeros(max(length, 0), dtype=dtype)
        lo = max(self.valuation, 0)
        if lo < length:
            out[lo:length] = self.coeffs[lo - self.valuation : length - self.valuation]
        return out

    def is_zero(self) -> bool:
        return not np.any(self.coeffs != 0)

    def nonzero_indices(self) -> np.ndarray:
        return np.flatnonzero(self.coeffs != 0) + self.valuation

    def with_(self, **changes) -> "QExpansion":
        return replace(self, **changes)

    # ------------------------------------------------------------
    # Comparison
    # ------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, QExpansion):
            return NotImplemented
        return (
            self.denom == other.denom
            and self.valuation == other.valuation
            and self.precision == other.precision
            and self.modulus == other.modulus
            and bool(np.all(self.coeffs == other.coeffs))
        )

    __hash__ = None

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:8])
        return (
            f"QExpansion(denom={self.denom}, valuation={self.valuation}, precision={self.precision}, "
            f"{self.domain}, [{head}{', ...' if self.coeffs.size > 8 else ''}])"
        )
