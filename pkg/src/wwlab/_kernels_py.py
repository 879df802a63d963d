"""Numpy implementations of the hot kernels.

This is the pure-Python fallback backend.  The compiled extension
(``wwlab._kernels``) implements the same functions with identical integer
semantics; float outputs may differ from this module in the last ulp because
summation orders differ.

All mod-1 circle arithmetic is carried on uint64 numerators, so wraparound of
the 64-bit word is exactly addition mod 1.
"""

from __future__ import annotations

import numpy as np

NAME = "python"

_U64 = np.uint64
_MASK = (1 << 64) - 1

# splitmix64 constants
_GAMMA = _U64(0x9E3779B97F4A7C15)
_MIX1 = _U64(0xBF58476D1CE4E5B9)
_MIX2 = _U64(0x94D049BB133111EB)


def poly_eval_fracs(coeffs, n):
    """Phase numerators of c_1*n + c_2*n^2 + ... + c_k*n^k mod 1.

    ``coeffs`` are uint64 numerators (c_1 first), ``n`` a uint64 array of
    evaluation points.  Horner evaluation in wrapping uint64 arithmetic is
    exact: every intermediate is only ever needed mod 2**64.
    """
    n = np.ascontiguousarray(n, dtype=_U64)
    if len(coeffs) == 0:
        return np.zeros_like(n)
    acc = np.full_like(n, _U64(int(coeffs[-1]) & _MASK))
    for c in list(coeffs[:-1])[::-1]:
        acc = acc * n + _U64(int(c) & _MASK)
    return acc * n


def mul_round(a, b):
    """Elementwise product of fixed-point fractions rounded to nearest 2**-64.

    Computes the high 64 bits of the 128-bit product via 32-bit limbs, then
    rounds half up on bit 63 of the low word.
    """
    a = np.asarray(a, dtype=_U64)
    b = np.asarray(b, dtype=_U64)
    m32 = _U64(0xFFFFFFFF)
    s32 = _U64(32)
    al = a & m32
    ah = a >> s32
    bl = b & m32
    bh = b >> s32
    ll = al * bl
    lh = al * bh
    hl = ah * bl
    carry = (ll >> s32) + (lh & m32) + (hl & m32)
    hi = ah * bh + (lh >> s32) + (hl >> s32) + (carry >> s32)
    lo = a * b  # wrapping low 64 bits
    return hi + (lo >> _U64(63))


def mix64(seed: int, idx) -> np.ndarray:
    """Counter-based uniform uint64 stream: word at each index for this seed."""
    idx = np.asarray(idx, dtype=_U64)
    z = (idx + _U64(1)) * _GAMMA + _U64(seed & _MASK)
    z = (z ^ (z >> _U64(30))) * _MIX1
    z = (z ^ (z >> _U64(27))) * _MIX2
    return z ^ (z >> _U64(31))


def bit_stream(seed: int, idx) -> np.ndarray:
    """One unbiased bit per index (top bit of the mixed word)."""
    return (mix64(seed, idx) >> _U64(63)).astype(np.uint8)


def shifted_corr(a: np.ndarray, H: int) -> np.ndarray:
    """corr[h-1] = sum_{n=0}^{N-h-1} a[n] * conj(a[n+h]) for h = 1..H."""
    a = np.ascontiguousarray(a, dtype=np.complex128)
    N = a.shape[0]
    if not 0 <= H <= N - 1:
        raise ValueError("need 0 <= H <= N-1")
    out = np.empty(H, dtype=np.complex128)
    for h in range(1, H + 1):
        # vdot conjugates its first argument
        out[h - 1] = np.conj(np.vdot(a[: N - h], a[h:]))
    return out


_UK_CHUNK = 128


def uk2_pow4(f: np.ndarray) -> float:
    """Fourth power of the degree-2 uniformity norm of f over Z_N.

    (1/N) sum_h |(1/N) sum_n conj(f(n)) f(n+h mod N)|^2, indices circular.
    """
    f = np.ascontiguousarray(f, dtype=np.complex128)
    N = f.shape[0]
    fc = np.conj(f)
    f2 = np.concatenate([f, f])
    base = np.arange(N)
    total = 0.0
    for h0 in range(0, N, _UK_CHUNK):
        hs = np.arange(h0, min(h0 + _UK_CHUNK, N))
        block = f2[hs[:, None] + base[None, :]]
        means = (block * fc[None, :]).mean(axis=1)
        total += float(np.sum(means.real**2 + means.imag**2))
    return total / N


def uk3_pow8(f: np.ndarray) -> float:
    """Eighth power of the degree-3 uniformity norm of f over Z_N."""
    f = np.ascontiguousarray(f, dtype=np.complex128)
    N = f.shape[0]
    fc = np.conj(f)
    f2 = np.concatenate([f, f])
    total = 0.0
    for h in range(N):
        total += uk2_pow4(fc * f2[h : h + N])
    return total / N
