"""
features/criterion/model.py
----------------------------
Results of the Hecke-side analysis:

- LPolyAnalysis   factorization type of 1 - λX + cX^2 mod ℓ and the
                  period d of its root ratio; m admits a gap congruence
                  on p^m(Z∖pZ) iff d | m + 1
- EigenComponent  one T_p-eigen component of a form
- TableCell       one entry of the maximal-congruence table
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from features.algebra.model import FieldElement
from features.qseries.model import QExpansion

REPEATED = "repeated"
SPLIT = "split"
IRREDUCIBLE = "irreducible"


def _element_record(x) -> object:
    return None if x is None else x.to_record()


@dataclass(frozen=True)
class LPolyAnalysis:
    p: int
    ell: int
    lam: FieldElement
    c: FieldElement
    case: str
    alpha: Optional[FieldElement]
    beta: Optional[FieldElement]
    period: int

    def admits(self, m: int) -> bool:
        return m >= 1 and (m + 1) % self.period == 0

    def exponents(self, count: int) -> list[int]:
        """First `count` exponents m ≥ 1 with d | m + 1."""
        d = self.period
        first = d - 1 if d > 1 else 1
        return [first + i * d for i in range(count)]

    def to_record(self) -> dict:
        return {
            "p": self.p,
            "ell": self.ell,
            "lambda": _element_record(self.lam),
            "c": _element_record(self.c),
            "case": self.case,
            "period": self.period,
            "alpha": _element_record(self.alpha),
            "beta": _element_record(self.beta),
        }


@dataclass(frozen=True, eq=False)
class EigenComponent:
    eigenvalue: FieldElement
    degree: int                          # degree of the eigenvalue over F_ℓ
    layers: tuple[QExpansion, ...]       # layer i: coefficient of θ^i, θ generating F_ℓ(λ)
    multiplicity: int

    @property
    def ell(self) -> int:
        return self.layers[0].modulus

    def series(self) -> QExpansion:
        """The component itself when it is F_ℓ-rational."""
        return self.layers[0]


@dataclass(frozen=True)
class TableCell:
    ell: int
    p: int
    kind: str                          # "gap" | "ell" | "empty"
    exponents: tuple[int, ...] = ()
    analysis: Optional[LPolyAnalysis] = None
    verify_bound: Optional[int] = None
    impossible: tuple[int, ...] = ()   # exponents in the cell flagged impossible

    def label(self) -> str:
        if self.kind == "gap":
            return ", ".join(f"{self.p}^{m}" for m in self.exponents)
        if self.kind == "ell":
            return f"{self.p}Z"
        return ""

    def to_record(self) -> dict:
        return {
            "ell": self.ell,
            "p": self.p,
            "kind": self.kind,
            "label": self.label(),
            "exponents": list(self.exponents),
            "analysis": self.analysis.to_record() if self.analysis else None,
            "verify_bound": self.verify_bound,
            "impossible": list(self.impossible),
        }
