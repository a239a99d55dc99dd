"""
features/qseries/convolve.py
-----------------------------
Truncated power-series products and inverses on coefficient arrays.

Modular arrays use numpy: direct convolution for short operands, float64
FFT otherwise, split into base-B digits when a single FFT product could
lose exactness. Exact arrays are object arrays of Python integers.
"""

from __future__ import annotations

import math

import numpy as np

from core.config import DIRECT_CONVOLUTION_MAX, FFT_EXACT_BOUND
from core.errors import NotAUnitError


def _fft_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    full = a.size + b.size - 1
    size = 1 << (full - 1).bit_length()
    fa = np.fft.rfft(a.astype(np.float64), size)
    fb = np.fft.rfft(b.astype(np.float64), size)
    return np.rint(np.fft.irfft(fa * fb, size)[:full]).astype(np.int64)


def _digits(a: np.ndarray, base: int, count: int) -> list[np.ndarray]:
    out = []
    for _ in range(count):
        out.append(a % base)
        a = a // base
    return out


def conv_mod(a: np.ndarray, b: np.ndarray, modulus: int, n: int) -> np.ndarray:
    """First n coefficients of a·b mod `modulus`."""
    a = np.asarray(a[:n], dtype=np.int64)
    b = np.asarray(b[:n], dtype=np.int64)
    out = np.zeros(n, dtype=np.int64)
    if a.size == 0 or b.size == 0 or n <= 0:
        return out
    shortest = min(a.size, b.size)
    if shortest <= DIRECT_CONVOLUTION_MAX and (modulus - 1) ** 2 * shortest < 2**62:
        prod = np.convolve(a, b) % modulus
    elif (modulus - 1) ** 2 * shortest <= FFT_EXACT_BOUND:
        prod = _fft_product(a, b) % modulus
    else:
        count = 2
        while True:
            base = math.ceil(modulus ** (1.0 / count))
            if count * (base - 1) ** 2 * shortest <= FFT_EXACT_BOUND:
                break
            count += 1
        da, db = _digits(a, base, count), _digits(b, base, count)
        prod = np.zeros(a.size + b.size - 1, dtype=np.int64)
        scale = 1
        for s in range(2 * count - 1):
            acc = np.zeros_like(prod)
            for i in range(max(0, s - count + 1), min(s, count - 1) + 1):
                acc += _fft_product(da[i], db[s - i])
            prod = (prod + (acc % modulus) * scale) % modulus
            scale = scale * base % modulus
    m = min(n, prod.size)
    out[:m] = prod[:m]
    return out


def conv_exact(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    """First n coefficients of a·b over Z, skipping zero terms of the sparser factor."""
    out = np.zeros(max(n, 0), dtype=object)
    a, b = a[:n], b[:n]
    if np.count_nonzero(a != 0) > np.count_nonzero(b != 0):
        a, b = b, a
    for i in np.flatnonzero(a != 0):
        span = min(b.size, n - i)
        if span > 0:
            out[i : i + span] += a[i] * b[:span]
    return out


def inverse_mod(a: np.ndarray, modulus: int, n: int) -> np.ndarray:
    """First n coefficients of 1/a mod `modulus` by Newton iteration."""
    a = np.asarray(a, dtype=np.int64) % modulus
    try:
        lead = pow(int(a[0]), -1, modulus)
    except ValueError:
        raise NotAUnitError("constant term is not a unit", constant=int(a[0]), modulus=modulus) from None
    inv = np.array([lead], dtype=np.int64)
    k = 1
    while k < n:
        k = min(2 * k, n)
        # inv <- inv·(2 - a·inv)
        err = conv_mod(a, inv, modulus, k)
        err = (-err) % modulus
        err[0] = (err[0] + 2) % modulus
        inv = conv_mod(inv, err, modulus, k)
    return inv[:n]


def inverse_exact(a: np.ndarray, n: int) -> np.ndarray:
    """First n coefficients of 1/a over Z; the constant term must be ±1."""
    lead = int(a[0])
    if lead not in (1, -1):
        raise NotAUnitError("constant term is not ±1", constant=lead)
    terms = [(int(i), int(a[i])) for i in np.flatnonzero(a[1:n] != 0) + 1]
    out = np.zeros(max(n, 0), dtype=object)
    out[0] = lead
    for k in range(1, n):
        s = 0
        for i, ai in terms:
            if i > k:
                break
            s += ai * out[k - i]
        out[k] = -lead * s
    return out
