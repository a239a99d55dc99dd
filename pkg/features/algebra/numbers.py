"""
features/algebra/numbers.py
----------------------------
Integer number theory used across the lab: primality, factorization,
divisors, Kronecker symbols, multiplicative orders mod M and CRT.

Primality and factoring are delegated to `galois`; everything here is
deterministic.
"""

from __future__ import annotations

import math
from functools import lru_cache

import galois

from core.errors import DomainError


@lru_cache(maxsize=8192)
def is_prime(n: int) -> bool:
    return n >= 2 and bool(galois.is_prime(int(n)))


@lru_cache(maxsize=4096)
def _factor_items(n: int) -> tuple[tuple[int, int], ...]:
    if n == 1:
        return ()
    primes, exponents = galois.factors(int(n))
    return tuple(sorted((int(p), int(e)) for p, e in zip(primes, exponents)))


def factorint(n: int) -> dict[int, int]:
    """{p: e} with n = ∏ p^e, primes ascending."""
    if n < 1:
        raise DomainError("factorint needs a positive integer", n=n)
    return dict(_factor_items(n))


def prime_factors(n: int) -> list[int]:
    return [p for p, _ in _factor_items(n)]


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in _factor_items(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def radical(n: int) -> int:
    """Largest square-free divisor."""
    return math.prod(prime_factors(n)) if n > 1 else 1


def p_part(n: int, p: int) -> tuple[int, int]:
    """Split n = n_p · n_p^# with n_p a power of p and n_p^# prime to p."""
    n_p = 1
    while n % p == 0:
        n //= p
        n_p *= p
    return n_p, n


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise DomainError("valuation of zero", p=p)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    return [int(p) for p in galois.primes(int(n))]


def euler_phi(n: int) -> int:
    return int(galois.euler_phi(int(n)))


def crt(residues: list[int], moduli: list[int]) -> int:
    """Least non-negative x with x ≡ r_i (mod m_i), moduli pairwise coprime."""
    if not moduli:
        return 0
    if len(moduli) == 1:
        return residues[0] % moduli[0]
    return int(galois.crt([int(r) % int(m) for r, m in zip(residues, moduli)], [int(m) for m in moduli]))


# ------------------------------------------------------------
# Kronecker symbol
# ------------------------------------------------------------
@lru_cache(maxsize=65536)
def kronecker(t: int, n: int) -> int:
    """Kronecker symbol (t|n); equals the Legendre symbol for odd prime n."""
    if n == 0:
        return 1 if abs(t) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if t < 0:
            result = -result
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if t % 2 == 0:
            return 0
        if twos % 2 == 1 and t % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * int(galois.jacobi_symbol(t % n, n))


# ------------------------------------------------------------
# Orders
# ------------------------------------------------------------
def order_mod(a: int, modulus: int) -> int:
    """Multiplicative order of a modulo `modulus` (gcd(a, modulus) = 1)."""
    if modulus == 1:
        return 1
    if math.gcd(a, modulus) != 1:
        raise DomainError("order of a non-unit", a=a, modulus=modulus)
    order = euler_phi(modulus)
    for p in prime_factors(order):
        while order % p == 0 and pow(a, order // p, modulus) == 1:
            order //= p
    return order
