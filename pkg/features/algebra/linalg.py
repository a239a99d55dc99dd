"""
features/algebra/linalg.py
---------------------------
Linear algebra over F_ℓ (and small extensions) on top of galois
FieldArrays: echelon forms, solving, ranks, polynomial evaluation at a
matrix, kernels and minimal polynomials.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

import galois
import numpy as np


@lru_cache(maxsize=64)
def prime_field(ell: int) -> type[galois.FieldArray]:
    return galois.GF(ell)


def to_field(array, ell: int) -> galois.FieldArray:
    return prime_field(ell)(np.asarray(array, dtype=np.int64) % ell)


def as_int(array: galois.FieldArray) -> np.ndarray:
    return np.asarray(array.view(np.ndarray), dtype=np.int64)


def echelon(A: galois.FieldArray) -> tuple[galois.FieldArray, list[int]]:
    """Reduced row echelon form without zero rows, and its pivot columns."""
    R = A.row_reduce()
    raw = R.view(np.ndarray)
    pivots = []
    for row in raw:
        nz = np.flatnonzero(row)
        if nz.size == 0:
            break
        pivots.append(int(nz[0]))
    return R[: len(pivots)], pivots


def rank(A: galois.FieldArray) -> int:
    if A.size == 0:
        return 0
    return len(echelon(A)[1])


def solve(A: galois.FieldArray, b: galois.FieldArray) -> Optional[galois.FieldArray]:
    """One solution of A x = b (free variables set to 0), or None."""
    F = type(A)
    m, n = A.shape
    augmented = F(np.hstack([A.view(np.ndarray), np.asarray(b.view(np.ndarray)).reshape(m, 1)]))
    R, pivots = echelon(augmented)
    if n in pivots:
        return None
    x = F.Zeros(n)
    for row, col in zip(R, pivots):
        x[col] = row[n]
    return x


def least_solution(A: galois.FieldArray, b: galois.FieldArray) -> Optional[galois.FieldArray]:
    """The lexicographically least solution of A x = b, or None."""
    x = solve(A, b)
    if x is None:
        return None
    K = kernel(A)
    if K.shape[0] == 0:
        return x
    # zero x on every kernel pivot; RREF rows touch no other pivot
    R, pivots = echelon(K)
    for row, col in zip(R, pivots):
        x = x - x[col] * row
    return x


def kernel(A: galois.FieldArray) -> galois.FieldArray:
    """Basis of {x : A x = 0} as rows (shape (0, n) when trivial)."""
    F = type(A)
    if A.size == 0:
        return F.Identity(A.shape[1])
    return A.null_space()


def poly_at_matrix(poly: galois.Poly, A: galois.FieldArray) -> galois.FieldArray:
    """Horner evaluation of poly at the square matrix A."""
    F = type(A)
    identity = F.Identity(A.shape[0])
    result = F.Zeros(A.shape)
    for c in poly.coeffs:
        result = result @ A + identity * F(int(c))
    return result


def minimal_polynomial(A: galois.FieldArray) -> galois.Poly:
    """Monic minimal polynomial of A, from the first linear relation among I, A, A^2, ..."""
    F = type(A)
    n = A.shape[0]
    powers = [F.Identity(n)]
    while True:
        nxt = powers[-1] @ A
        S = F(np.stack([P.view(np.ndarray).reshape(-1) for P in powers], axis=1))
        sol = solve(S, nxt.reshape(-1))
        if sol is not None:
            tail = (-sol).view(np.ndarray)[::-1]
            return galois.Poly(F(np.concatenate(([1], tail)).astype(np.int64)), field=F)
        powers.append(nxt)
