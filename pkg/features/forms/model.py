"""
features/forms/model.py
------------------------
Echelonized level-one basis of M_k(SL2(Z)) reduced mod ℓ.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from core.errors import PrecisionError
from features.qseries.model import QExpansion


@dataclass(frozen=True, eq=False)
class LevelOneBasis:
    weight: int
    ell: int
    dimension: int
    basis: tuple[QExpansion, ...]            # row echelon, pivots at q^0 .. q^{D-1}
    provenance: tuple[tuple[int, int, int], ...]   # (a, b, j) for Δ^j E4^a E6^b
    precision: int

    def matrix(self) -> np.ndarray:
        """D × precision int64 array of basis coefficients."""
        if not self.basis:
            return np.zeros((0, self.precision), dtype=np.int64)
        return np.stack([b.coeffs for b in self.basis])

    def coordinates(self, f: QExpansion) -> np.ndarray:
        """Echelon coordinates of f: its first D coefficients."""
        if f.precision < self.dimension:
            raise PrecisionError("form known below the basis dimension", precision=f.precision, dimension=self.dimension)
        return f.dense(self.dimension) % self.ell

    def combination(self, coords) -> QExpansion:
        coords = np.asarray(coords, dtype=np.int64) % self.ell
        arr = (coords @ self.matrix()) % self.ell if self.dimension else np.zeros(self.precision, dtype=np.int64)
        return QExpansion(1, 0, arr, self.precision, self.ell)
