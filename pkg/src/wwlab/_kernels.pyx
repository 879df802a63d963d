# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementations of the hot kernels.

Integer semantics are identical to ``wwlab._kernels_py`` (wrapping uint64
arithmetic); float reductions may differ in the last ulp because the
summation order differs.
"""

import numpy as np

from libc.stdint cimport uint8_t, uint64_t

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

NAME = "compiled"

cdef uint64_t _GAMMA = 0x9E3779B97F4A7C15u
cdef uint64_t _MIX1 = 0xBF58476D1CE4E5B9u
cdef uint64_t _MIX2 = 0x94D049BB133111EBu

_MASK = (1 << 64) - 1


def poly_eval_fracs(coeffs, n):
    """Phase numerators of c_1*n + ... + c_k*n^k mod 1 (wrapping Horner)."""
    cdef uint64_t[::1] nv = np.ascontiguousarray(n, dtype=np.uint64)
    cdef Py_ssize_t size = nv.shape[0]
    out = np.zeros(size, dtype=np.uint64)
    cdef Py_ssize_t k = len(coeffs)
    if k == 0:
        return out
    cs_arr = np.array([int(c) & _MASK for c in coeffs], dtype=np.uint64)
    cdef uint64_t[::1] cs = cs_arr
    cdef uint64_t[::1] ov = out
    cdef Py_ssize_t i, j
    cdef uint64_t acc, nn
    for i in range(size):
        nn = nv[i]
        acc = cs[k - 1]
        for j in range(k - 2, -1, -1):
            acc = acc * nn + cs[j]
        ov[i] = acc * nn
    return out


def mul_round(a, b):
    """Elementwise fixed-point product rounded to nearest 2**-64 (ties up)."""
    cdef uint64_t[::1] av = np.ascontiguousarray(a, dtype=np.uint64)
    cdef uint64_t[::1] bv = np.ascontiguousarray(b, dtype=np.uint64)
    if av.shape[0] != bv.shape[0]:
        raise ValueError("length mismatch")
    out = np.empty(av.shape[0], dtype=np.uint64)
    cdef uint64_t[::1] ov = out
    cdef Py_ssize_t i
    cdef u128 p
    for i in range(av.shape[0]):
        p = (<u128> av[i]) * bv[i]
        ov[i] = <uint64_t> ((p + ((<u128> 1) << 63)) >> 64)
    return out


cdef inline uint64_t _mix(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * _MIX1
    z = (z ^ (z >> 27)) * _MIX2
    return z ^ (z >> 31)


def mix64(seed, idx):
    """Counter-based uniform uint64 stream: word at each index for this seed."""
    cdef uint64_t[::1] iv = np.ascontiguousarray(idx, dtype=np.uint64)
    out = np.empty(iv.shape[0], dtype=np.uint64)
    cdef uint64_t[::1] ov = out
    cdef uint64_t s = <uint64_t> (int(seed) & _MASK)
    cdef Py_ssize_t i
    for i in range(iv.shape[0]):
        ov[i] = _mix((iv[i] + 1) * _GAMMA + s)
    return out


def bit_stream(seed, idx):
    """One unbiased bit per index (top bit of the mixed word)."""
    cdef uint64_t[::1] iv = np.ascontiguousarray(idx, dtype=np.uint64)
    out = np.empty(iv.shape[0], dtype=np.uint8)
    cdef uint8_t[::1] ov = out
    cdef uint64_t s = <uint64_t> (int(seed) & _MASK)
    cdef Py_ssize_t i
    for i in range(iv.shape[0]):
        ov[i] = <uint8_t> (_mix((iv[i] + 1) * _GAMMA + s) >> 63)
    return out


def shifted_corr(a, H):
    """corr[h-1] = sum_{n=0}^{N-h-1} a[n] * conj(a[n+h]) for h = 1..H."""
    arr = np.ascontiguousarray(a, dtype=np.complex128)
    cdef double[::1] ar = np.ascontiguousarray(arr.real)
    cdef double[::1] ai = np.ascontiguousarray(arr.imag)
    cdef Py_ssize_t N = ar.shape[0]
    cdef Py_ssize_t hmax = int(H)
    if not 0 <= hmax <= N - 1:
        raise ValueError("need 0 <= H <= N-1")
    out = np.empty(hmax, dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef Py_ssize_t h, n
    cdef double sr, si
    for h in range(1, hmax + 1):
        sr = 0.0
        si = 0.0
        for n in range(N - h):
            # a[n] * conj(a[n+h])
            sr += ar[n] * ar[n + h] + ai[n] * ai[n + h]
            si += ai[n] * ar[n + h] - ar[n] * ai[n + h]
        ov[h - 1] = sr + 1j * si
    return out


cdef double _uk2_pow4(double[::1] fr, double[::1] fi) nogil:
    cdef Py_ssize_t N = fr.shape[0]
    cdef Py_ssize_t h, n, m
    cdef double sr, si, total = 0.0
    cdef double inv_n = 1.0 / N
    for h in range(N):
        sr = 0.0
        si = 0.0
        for n in range(N):
            m = n + h
            if m >= N:
                m -= N
            # conj(f[n]) * f[n+h]
            sr += fr[n] * fr[m] + fi[n] * fi[m]
            si += fr[n] * fi[m] - fi[n] * fr[m]
        sr *= inv_n
        si *= inv_n
        total += sr * sr + si * si
    return total * inv_n


def uk2_pow4(f):
    """Fourth power of the degree-2 uniformity norm of f over Z_N."""
    arr = np.ascontiguousarray(f, dtype=np.complex128)
    cdef double[::1] fr = np.ascontiguousarray(arr.real)
    cdef double[::1] fi = np.ascontiguousarray(arr.imag)
    return _uk2_pow4(fr, fi)


def uk3_pow8(f):
    """Eighth power of the degree-3 uniformity norm of f over Z_N."""
    arr = np.ascontiguousarray(f, dtype=np.complex128)
    cdef double[::1] fr = np.ascontiguousarray(arr.real)
    cdef double[::1] fi = np.ascontiguousarray(arr.imag)
    cdef Py_ssize_t N = fr.shape[0]
    dr_arr = np.empty(N, dtype=np.float64)
    di_arr = np.empty(N, dtype=np.float64)
    cdef double[::1] dr = dr_arr
    cdef double[::1] di = di_arr
    cdef Py_ssize_t h, n, m
    cdef double total = 0.0
    for h in range(N):
        for n in range(N):
            m = n + h
            if m >= N:
                m -= N
            dr[n] = fr[n] * fr[m] + fi[n] * fi[m]
            di[n] = fr[n] * fi[m] - fi[n] * fr[m]
        total += _uk2_pow4(dr, di)
    return total / N
