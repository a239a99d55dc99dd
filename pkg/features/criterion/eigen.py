"""
features/criterion/eigen.py
----------------------------
Decomposition of a level-one form mod ℓ into T_p-eigen components.

T_p acts on echelon coordinates by the D×D matrix A (row-vector
convention, x ↦ x·A). Its minimal polynomial must be squarefree; each
irreducible factor g gives the idempotent e_g(A) from
s·(m/g) + t·g = 1. Factors of degree e > 1 are split further over
GF(ℓ^e) = F_ℓ[x]/(g) by Lagrange products over the conjugate roots,
so those components carry coefficients in F_{ℓ^e}, stored as e layers
of F_ℓ series (layer i = coefficient of θ^i).
"""

from __future__ import annotations

from typing import Sequence

import galois
import numpy as np

from core.errors import DomainError, DomainMismatchError, NotInSpanError, SemisimplicityError
from core.log import get_logger
from features.algebra import linalg
from features.algebra.model import ExtElement, FieldContext, Residue
from features.criterion.model import EigenComponent
from features.forms.controller import dimension, level_one_basis
from features.heckeops.controller import hecke_tp
from features.heckeops.model import HeckeContext
from features.qseries.model import QExpansion

log = get_logger("Eigen")


def _hecke_matrix(basis, p: int, k: int) -> np.ndarray:
    ctx = HeckeContext(k)
    D = basis.dimension
    A = np.zeros((D, D), dtype=np.int64)
    for i, b in enumerate(basis.basis):
        A[i] = hecke_tp(b, p, ctx).dense(D)
    return A


def _layers(values: np.ndarray, ell: int, precision: int) -> tuple[QExpansion, ...]:
    """(precision, e) low-to-high coefficient array -> e layer series."""
    return tuple(QExpansion(1, 0, values[:, i] % ell, precision, ell) for i in range(values.shape[1]))


def eigen_decompose(f: QExpansion, p: int, k: int) -> list[EigenComponent]:
    """Project f onto the T_p-eigenspaces of M_k mod ℓ; the components sum to f."""
    ell = f.modulus
    if ell is None:
        raise DomainMismatchError("decomposition needs a series mod ℓ", domain=f.domain)
    if p % ell == 0:
        raise DomainError("decomposition needs ℓ ∤ p", p=p, ell=ell)
    if f.valuation < 0 or f.denom != 1:
        raise DomainError("decomposition needs a holomorphic integral-grid series")
    if f.is_zero():
        return []
    D = dimension(k)
    if D == 0:
        raise NotInSpanError("weight has no forms", k=k)

    P = f.precision
    basis = level_one_basis(k, ell, max(P, p * D))
    B = basis.matrix()
    x = f.dense(D) % ell
    residual = (x @ B[:, :P] - f.dense(P)) % ell
    bad = np.flatnonzero(residual)
    if bad.size:
        raise NotInSpanError("form is not in the level-one span", k=k, ell=ell, index=int(bad[0]))

    GF = linalg.prime_field(ell)
    A = GF(_hecke_matrix(basis, p, k))
    X = GF(x)
    mp = linalg.minimal_polynomial(A)
    if not mp.is_square_free():
        raise SemisimplicityError("T_p minimal polynomial is not squarefree", p=p, k=k, ell=ell, polynomial=str(mp))

    factors, _ = mp.factors()
    factors = sorted(factors, key=lambda g: (g.degree, tuple(int(c) for c in g.coeffs)))
    components: list[EigenComponent] = []
    for g in factors:
        h = mp // g
        _, s, _ = galois.egcd(h, g)
        E = linalg.poly_at_matrix((s * h) % mp, A)
        y = X @ E
        if not np.any(y.view(np.ndarray)):
            continue
        e = g.degree
        mult = (D - linalg.rank(linalg.poly_at_matrix(g, A))) // e
        if e == 1:
            lam = Residue(-int(g.coeffs[-1]), ell)
            values = ((linalg.as_int(y) @ B[:, :P]) % ell).reshape(P, 1)
            components.append(EigenComponent(lam, 1, _layers(values, ell, P), mult))
            continue
        components.extend(_split_conjugates(g, A, y, B[:, :P], ell, mult))
    log.debug("T_%d on M_%d mod %d: %d components", p, k, ell, len(components))
    return components


def _split_conjugates(g, A, y, B: np.ndarray, ell: int, mult: int) -> list[EigenComponent]:
    e = g.degree
    ctx = FieldContext(ell, e, tuple(int(c) for c in reversed(g.coeffs)))
    GFe = ctx.gf
    theta = ctx.gen()
    roots = [theta ** (ell**i) for i in range(e)]
    Ae = GFe(A.view(np.ndarray))
    ye = GFe(y.view(np.ndarray))
    Be = GFe(B)
    identity = GFe.Identity(A.shape[0])
    out = []
    for i, root in enumerate(roots):
        proj = identity
        ri = root.gf()
        for j, other in enumerate(roots):
            if j == i:
                continue
            rj = other.gf()
            proj = proj @ (Ae - identity * rj) / (ri - rj)
        values = (ye @ proj) @ Be
        out.append(EigenComponent(root, e, _layers(ctx.from_gf(values), ell, B.shape[1]), mult))
    return out


def _component_array(comp: EigenComponent) -> np.ndarray:
    return np.stack([layer.coeffs for layer in comp.layers], axis=1)


def check_eigen_equation(comp: EigenComponent, p: int, k: int) -> bool:
    """T_p(component) = λ·component on the window T_p can see."""
    ell = comp.ell
    ctx = HeckeContext(k)
    images = np.stack([hecke_tp(layer, p, ctx).coeffs for layer in comp.layers], axis=1) % ell
    n = images.shape[0]
    lam = comp.eigenvalue
    if isinstance(lam, Residue):
        return bool(np.array_equal(images, (_component_array(comp)[:n] * lam.value) % ell))
    field = lam.ctx
    expected = field.to_gf(_component_array(comp)[:n]) * lam.gf()
    return bool(np.array_equal(field.to_gf(images).view(np.ndarray), expected.view(np.ndarray)))


def recombine_components(components: Sequence[EigenComponent]) -> QExpansion:
    """Sum of the components; conjugate groups must sum to F_ℓ-rational series."""
    if not components:
        raise DomainError("no components to recombine")
    ell = components[0].ell
    precision = min(c.layers[0].precision for c in components)
    groups: dict = {}
    for comp in components:
        key = comp.eigenvalue.ctx if isinstance(comp.eigenvalue, ExtElement) else None
        arr = _component_array(comp)[:precision]
        groups[key] = arr if key not in groups else (groups[key] + arr) % ell
    total = np.zeros(precision, dtype=np.int64)
    for arr in groups.values():
        if arr.shape[1] > 1 and np.any(arr[:, 1:] % ell):
            raise DomainError("conjugate components do not sum to a rational series")
        total = (total + arr[:, 0]) % ell
    return QExpansion(1, 0, total, precision, ell)
