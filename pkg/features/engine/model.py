"""
features/engine/model.py
-------------------------
Claims, evidence and certificates.

A claim is the set of indices on which a form's coefficients vanish
mod ℓ: a Progression MZ + β or a GapProgression {S·n + o : p ∤ n}.
Evidence says why: a bounded scan, the Hecke criterion, or a rule
applied to a parent certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from core.errors import DomainError
from features.algebra.numbers import is_prime


# ------------------------------------------------------------
# Claims
# ------------------------------------------------------------
@dataclass(frozen=True)
class Progression:
    modulus: int
    residue: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise DomainError("progression modulus must be positive", modulus=self.modulus)
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def contains(self, n: int) -> bool:
        return n % self.modulus == self.residue

    def members(self, upto: int) -> np.ndarray:
        """Members 0 ≤ n ≤ upto."""
        return np.arange(self.residue, upto + 1, self.modulus, dtype=np.int64)

    def to_record(self) -> dict:
        return {"kind": "progression", "modulus": self.modulus, "residue": self.residue}

    def label(self) -> str:
        return f"{self.modulus}Z+{self.residue}"


@dataclass(frozen=True)
class GapProgression:
    stride: int
    offset: int
    gap_prime: int

    def __post_init__(self) -> None:
        if self.stride < 1 or not is_prime(self.gap_prime):
            raise DomainError("gap progression needs a positive stride and a prime gap", stride=self.stride, gap_prime=self.gap_prime)
        # offset matters modulo stride·p
        object.__setattr__(self, "offset", self.offset % (self.stride * self.gap_prime))

    def contains(self, n: int) -> bool:
        d = n - self.offset
        return d % self.stride == 0 and (d // self.stride) % self.gap_prime != 0

    def members(self, upto: int) -> np.ndarray:
        xs = np.arange(self.offset % self.stride, upto + 1, self.stride, dtype=np.int64)
        ns = (xs - self.offset) // self.stride
        return xs[ns % self.gap_prime != 0]

    def to_record(self) -> dict:
        return {"kind": "gap", "stride": self.stride, "offset": self.offset, "gap_prime": self.gap_prime}

    def label(self) -> str:
        shift = f"+{self.offset}" if self.offset else ""
        return f"{self.stride}(Z∖{self.gap_prime}Z){shift}"


Claim = Union[Progression, GapProgression]


def claim_from_record(rec: dict) -> Claim:
    if rec["kind"] == "progression":
        return Progression(int(rec["modulus"]), int(rec["residue"]))
    if rec["kind"] == "gap":
        return GapProgression(int(rec["stride"]), int(rec["offset"]), int(rec["gap_prime"]))
    raise DomainError("unknown claim kind", kind=rec["kind"])


# ------------------------------------------------------------
# Evidence
# ------------------------------------------------------------
@dataclass(frozen=True)
class VerifiedToBound:
    bound: int
    support: int
    grid_denom: int = 1      # lattice index m stands for exponent m + grid_offset/grid_denom
    grid_offset: int = 0

    def to_record(self) -> dict:
        return {
            "kind": "verified",
            "bound": self.bound,
            "support": self.support,
            "grid": {"denom": self.grid_denom, "offset": self.grid_offset},
        }


@dataclass(frozen=True)
class CertifiedHecke:
    analyses: tuple[dict, ...]

    def to_record(self) -> dict:
        return {"kind": "hecke", "analyses": list(self.analyses)}


@dataclass(frozen=True)
class DerivedByRule:
    rule: str
    parent: "CongruenceCertificate"
    reverified: Optional[bool] = None   # None: not re-checked against data
    bound: Optional[int] = None


Evidence = Union[VerifiedToBound, CertifiedHecke, DerivedByRule]


@dataclass(frozen=True)
class Witness:
    progression: Claim
    index: int


@dataclass(frozen=True)
class CongruenceCertificate:
    form: str
    ell: int
    claim: Claim
    evidence: Evidence
    witnesses: tuple[Witness, ...] = ()

    def raw_claim(self) -> Claim:
        """The claim on the numerator grid n (exponent n/denom) for η-family scans."""
        ev = self.evidence
        if not isinstance(ev, VerifiedToBound) or ev.grid_denom == 1 or not isinstance(self.claim, Progression):
            return self.claim
        N = ev.grid_denom
        return Progression(N * self.claim.modulus, N * self.claim.residue + ev.grid_offset)
