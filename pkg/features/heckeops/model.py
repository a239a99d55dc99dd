"""
features/heckeops/model.py
---------------------------
Hecke data: weight, character and level of the space an operator acts
on, and the outcome of a composite-operator identity check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from core.errors import DomainError
from features.algebra.model import KroneckerChar


@dataclass(frozen=True)
class HeckeContext:
    weight: int
    character: KroneckerChar = field(default_factory=KroneckerChar)
    level: int = 1

    def char_value(self, p: int, ell: int) -> int:
        """χ(p)·p^{k-1} mod ℓ."""
        if self.level % p == 0:
            raise DomainError("Hecke prime divides the level", p=p, level=self.level)
        return (self.character(p) * pow(p, self.weight - 1, ell)) % ell


@dataclass(frozen=True)
class CompositeCheck:
    passed: bool
    witness: Optional[int]   # least failing n
    p: int
    m: int
    bound: int

    @property
    def modulus(self) -> int:
        return self.p ** (self.m + 1)
