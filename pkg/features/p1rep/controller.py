"""
features/p1rep/controller.py
-----------------------------
The SL2(Z/M) permutation module on P¹(Z/M) over F_ℓ(ζ_M).

Normal form of a unimodular pair (c, d) mod M: c' = gcd(c, M), and d'
the least value of u·d over the units u with u·c ≡ c' (mod M). Points
(1:h) sit at index h; the remaining points follow in sorted order.

SL2 acts on row vectors: (c, d)·g. Submodules are closures of seed
vectors under S = [[0,-1],[1,0]] and T = [[1,1],[0,1]], kept as galois
FieldArrays in reduced row echelon form over GF(ℓ^d).
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Optional, Sequence

import galois
import numpy as np

from core.config import P1_MAX_POINTS
from core.errors import (
    ContextMismatchError, DomainError, NonUnimodularError, RamifiedModulusError,
)
from core.log import get_logger
from features.algebra import linalg
from features.algebra.controller import cyclotomic_field_with_root
from features.algebra.model import ExtElement, FieldContext
from features.algebra.numbers import crt, divisors, factorint, is_prime
from features.p1rep.model import P1Point, P1Space, P1Vector, Submodule

log = get_logger("P1")

S = ((0, -1), (1, 0))
T = ((1, 1), (0, 1))


# ------------------------------------------------------------
# Points
# ------------------------------------------------------------
def normalize(c: int, d: int, M: int) -> P1Point:
    """Canonical representative of the unit-scaling class of (c, d) mod M."""
    if M < 1:
        raise DomainError("modulus must be positive", modulus=M)
    if M == 1:
        return P1Point(0, 0)
    c, d = c % M, d % M
    if math.gcd(math.gcd(c, d), M) != 1:
        raise NonUnimodularError("pair is not unimodular", c=c, d=d, modulus=M)
    g = math.gcd(c, M)
    if g == M:
        return P1Point(0, 1)
    Mg = M // g
    u0 = pow(c // g, -1, Mg)
    while math.gcd(u0, M) != 1:
        u0 += Mg
    d0 = u0 * d % M
    if g == 1:
        return P1Point(1, d0)
    # the stabilizer units are s = 1 + Mg·t; s·d0 ≡ r + Mg·((a + t·d0) mod g)
    r, a = d0 % Mg, d0 // Mg
    inv = pow(d0 % g, -1, g)
    for v in range(g):
        t = (v - a) * inv % g
        if math.gcd(1 + Mg * t, M) == 1:
            return P1Point(g, r + Mg * v)
    raise DomainError("no stabilizer unit found", c=c, d=d, modulus=M)


def p1_size(M: int) -> int:
    size = M
    for p in factorint(M):
        size = size // p * (p + 1)
    return size


@lru_cache(maxsize=64)
def p1_space(M: int) -> P1Space:
    """Enumerated P¹(Z/M) with its point index."""
    if M < 1:
        raise DomainError("modulus must be positive", modulus=M)
    if p1_size(M) > P1_MAX_POINTS:
        raise DomainError("P¹ larger than the supported cap", modulus=M, size=p1_size(M), cap=P1_MAX_POINTS)
    if M == 1:
        points = [P1Point(0, 0)]
    else:
        points = [P1Point(1, h) for h in range(M)]
        rest = set()
        for g in divisors(M):
            if g == 1:
                continue
            c = g % M
            for d in range(M):
                if math.gcd(math.gcd(c, d), M) == 1:
                    rest.add(normalize(c, d, M))
        points.extend(sorted(rest))
    index = {pt: i for i, pt in enumerate(points)}
    log.debug("P1(Z/%d): %d points", M, len(points))
    return P1Space(M, tuple(points), index)


def p1_enumerate(M: int) -> tuple[P1Point, ...]:
    return p1_space(M).points


def index_of(space: P1Space, c: int, d: int) -> int:
    return space.index[normalize(c, d, space.modulus)]


def permutation(space: P1Space, g) -> np.ndarray:
    """perm[i] = index of point_i · g."""
    M = space.modulus
    (a, b), (c, d) = g
    key = (a % M, b % M, c % M, d % M)
    cached = space._perms.get(key)
    if cached is not None:
        return cached
    if (a * d - b * c) % M != 1 % M:
        raise NonUnimodularError("matrix does not have determinant 1", modulus=M, matrix=[[a, b], [c, d]])
    perm = np.array([index_of(space, x * a + y * c, x * b + y * d) for x, y in ((pt.c, pt.d) for pt in space.points)], dtype=np.int64)
    space._perms[key] = perm
    return perm


def act(v: P1Vector, g) -> P1Vector:
    """Permute coordinates: the coefficient of x moves to x·g."""
    perm = permutation(v.space, g)
    out = v.ctx.gf.Zeros(len(v.space))
    out[perm] = v.coeffs
    return P1Vector(v.space, v.ctx, out)




def _inverse(perm: np.ndarray) -> np.ndarray:
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm), dtype=perm.dtype)
    return inv


# ------------------------------------------------------------
# Vectors
# ------------------------------------------------------------
def _root_powers(ctx: FieldContext, root: ExtElement, M: int) -> galois.FieldArray:
    z = root.gf()
    out = ctx.gf.Ones(M)
    for i in range(1, M):
        out[i] = out[i - 1] * z
    return out


def tm_vector(M: int, beta: int, ell: int, root: Optional[ExtElement] = None) -> P1Vector:
    """Σ_h ζ^{-hβ} (1:h), ζ a primitive M-th root of unity (default: the cyclotomic root)."""
    if math.gcd(ell, M) != 1:
        raise RamifiedModulusError("ℓ divides the modulus", ell=ell, modulus=M)
    if root is None:
        ctx, root = cyclotomic_field_with_root(ell, M)
    else:
        ctx = root.ctx
    space = p1_space(M)
    coeffs = ctx.gf.Zeros(len(space))
    h = np.arange(M, dtype=np.int64)
    coeffs[:M] = _root_powers(ctx, root, M)[(-h * beta) % M]
    return P1Vector(space, ctx, coeffs)


def invariant_vector(space: P1Space, ctx: FieldContext) -> P1Vector:
    return P1Vector(space, ctx, ctx.gf.Ones(len(space)))


# ------------------------------------------------------------
# Submodules
# ------------------------------------------------------------
def _check_common(vectors: Sequence[P1Vector]) -> tuple[P1Space, FieldContext]:
    if not vectors:
        raise DomainError("no seed vectors")
    space, ctx = vectors[0].space, vectors[0].ctx
    for v in vectors[1:]:
        if v.space.modulus != space.modulus or v.ctx != ctx:
            raise ContextMismatchError("seed vectors over different modules", left=space.modulus, right=v.space.modulus)
    return space, ctx


def generate_submodule(seeds: Sequence[P1Vector]) -> Submodule:
    """Least subspace containing the seeds and stable under S and T."""
    space, ctx = _check_common(seeds)
    GF = ctx.gf
    moves = [_inverse(permutation(space, S)), _inverse(permutation(space, T))]
    R, pivots = linalg.echelon(GF(np.stack([v.coeffs.view(np.ndarray) for v in seeds])))
    while R.shape[0]:
        grown = GF(np.concatenate([R.view(np.ndarray)] + [R.view(np.ndarray)[:, inv] for inv in moves]))
        R2, pivots2 = linalg.echelon(grown)
        if len(pivots2) == len(pivots):
            break
        R, pivots = R2, pivots2
    log.debug("submodule of P1(Z/%d) over F_%d^%d: dimension %d", space.modulus, ctx.ell, ctx.degree, len(pivots))
    return Submodule(space, ctx, R, tuple(pivots))


def membership(v: P1Vector, W: Submodule) -> bool:
    if v.space.modulus != W.space.modulus or v.ctx != W.ctx:
        raise ContextMismatchError("vector and submodule live in different modules", left=v.space.modulus, right=W.space.modulus)
    if W.dimension == 0:
        return v.is_zero()
    stacked = W.ctx.gf(np.vstack([W.rows.view(np.ndarray), v.coeffs.view(np.ndarray)]))
    return linalg.rank(stacked) == W.dimension


def steinberg_subspace(p: int, ell: int) -> Submodule:
    """Augmentation kernel {Σ a_x x : Σ a_x = 0} of F{P¹(F_p)}."""
    if not is_prime(p):
        raise DomainError("Steinberg subspace needs a prime modulus", modulus=p)
    ctx, _ = cyclotomic_field_with_root(ell, p)
    space = p1_space(p)
    n = len(space)
    rows = ctx.gf.Zeros((n - 1, n))
    rows[:, : n - 1] = ctx.gf.Identity(n - 1)
    rows[:, n - 1] = ctx.gf(ell - 1)
    return Submodule(space, ctx, rows, tuple(range(n - 1)))


# ------------------------------------------------------------
# CRT splitting and lifts
# ------------------------------------------------------------
class CrtSplit:
    """Bijection P¹(Z/M) ≅ ∏_p P¹(Z/M_p) by reduction of representatives."""

    def __init__(self, M: int) -> None:
        self.modulus = M
        self.moduli = tuple(p**e for p, e in factorint(M).items())
        self.spaces = tuple(p1_space(m) for m in self.moduli)
        space = p1_space(M)
        shape = tuple(len(s) for s in self.spaces)
        to_product = np.zeros(len(space), dtype=np.int64)
        for i, pt in enumerate(space.points):
            comps = [index_of(s, pt.c, pt.d) for s in self.spaces]
            to_product[i] = np.ravel_multi_index(comps, shape) if shape else 0
        from_product = np.full(len(space), -1, dtype=np.int64)
        from_product[to_product] = np.arange(len(space), dtype=np.int64)
        if np.any(from_product < 0):
            raise DomainError("CRT map is not a bijection", modulus=M)
        self.space = space
        self.shape = shape
        self.to_product = to_product
        self.from_product = from_product


def crt_split(M: int) -> CrtSplit:
    return CrtSplit(M)


def crt_components(M: int, beta: int, ell: int) -> list[P1Vector]:
    """tm_vector(M_p, β_p) with root ζ_M^{1_p}, all over the field of ζ_M."""
    _, zeta = cyclotomic_field_with_root(ell, M)
    out = []
    moduli = [p**e for p, e in factorint(M).items()]
    for Mp in moduli:
        rest = M // Mp
        one_p = crt([1, 0], [Mp, rest]) if rest > 1 else 1
        out.append(tm_vector(Mp, (beta * one_p) % Mp, ell, root=zeta**one_p))
    return out


def crt_outer(vectors: Sequence[P1Vector], split: CrtSplit) -> P1Vector:
    """Outer product of component vectors, transported back to P¹(Z/M)."""
    if len(vectors) != len(split.moduli):
        raise DomainError("one vector per prime-power component is needed", expected=len(split.moduli), got=len(vectors))
    ctx = vectors[0].ctx
    for v, m in zip(vectors, split.moduli):
        if v.ctx != ctx or v.space.modulus != m:
            raise ContextMismatchError("component vector does not match the split", modulus=m)
    acc = vectors[0].coeffs
    for v in vectors[1:]:
        acc = (acc[:, None] * v.coeffs[None, :]).reshape(-1)
    out = ctx.gf.Zeros(len(split.space))
    out[split.from_product] = acc
    return P1Vector(split.space, ctx, out)


def lift_vector(v: P1Vector, M: int) -> P1Vector:
    """Pull back along P¹(Z/M) -> P¹(Z/M'): each point of Z/M' becomes the sum of its fibre."""
    Mp = v.space.modulus
    if M % Mp:
        raise DomainError("lift target must be a multiple of the source modulus", source=Mp, target=M)
    target = p1_space(M)
    red = np.array([index_of(v.space, pt.c, pt.d) for pt in target.points], dtype=np.int64)
    return P1Vector(target, v.ctx, v.coeffs[red])
