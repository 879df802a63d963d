"""Summation and concurrency helpers shared across modules."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence

import numpy as np


def pairwise_sum(z: np.ndarray) -> complex:
    """Sum by a strict binary tree (zero-padded to a power of two).

    Error grows like log2(n) ulps instead of n.  Crucially, a constant
    sequence sums without any rounding at all (every tree level doubles
    exactly), which downstream code relies on for exact telescoping checks.
    """
    buf = np.ascontiguousarray(z, dtype=np.complex128)
    n = buf.shape[0]
    if n == 0:
        return 0j
    m = 1 << (n - 1).bit_length()
    if m != n:
        padded = np.zeros(m, dtype=np.complex128)
        padded[:n] = buf
        buf = padded
    while buf.shape[0] > 1:
        buf = buf[0::2] + buf[1::2]
    return complex(buf[0])


def _neumaier(s: float, c: float, x: float) -> tuple[float, float]:
    t = s + x
    if abs(s) >= abs(x):
        c += (s - t) + x
    else:
        c += (x - t) + s
    return t, c


def cesaro_prefix(z: np.ndarray, schedule: Sequence[int]) -> np.ndarray:
    """Running Cesaro means (1/N) sum_{n<=N} z_n at each scheduled N.

    Segments between schedule points are summed pairwise; the running total
    carries Neumaier compensation, so the result is correct to a few ulps of
    sum|z_n| and stays exact for constant sequences on power-of-two
    schedules.
    """
    out = np.empty(len(schedule), dtype=np.complex128)
    sr = si = cr = ci = 0.0
    prev = 0
    for i, n in enumerate(schedule):
        seg = pairwise_sum(z[prev:n])
        sr, cr = _neumaier(sr, cr, seg.real)
        si, ci = _neumaier(si, ci, seg.imag)
        prev = n
        out[i] = complex((sr + cr) / n, (si + ci) / n)
    return out


def thread_cap() -> int:
    """Worker cap from WWLAB_THREADS; unset or <2 means serial."""
    raw = os.environ.get("WWLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parallel_map(fn: Callable, items: Iterable, threads: int | None = None) -> list:
    """Map preserving order; results are independent of the thread count.

    Tasks must be pure (all randomness derived from per-item state), so the
    scheduling order cannot influence any value.
    """
    items = list(items)
    cap = thread_cap() if threads is None else max(1, threads)
    if cap <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=min(cap, len(items))) as pool:
        return list(pool.map(fn, items))
