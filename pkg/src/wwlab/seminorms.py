"""Finite-orbit estimators of the inductive uniformity seminorms.

The degree-(k+1) seminorm of f is estimated on a single stride-1 orbit of
length N by the recursion

    est_1(g)     = |(1/L) sum_n g_n|
    est_{k+1}(g) = [ (1/H) sum_{h=1}^{H} est_k(conj(g) * shift_h(g))^(2^k) ]^(1/2^(k+1))

where shift_h drops to the length-(L-h) overlap, so products use orbit
offsets and no differenced sequence is ever longer than the orbit.  Both the
orbit average and the h-average are finite truncations of limits; the (N, H)
pair is the caller's truncation choice and H = sqrt(N) is a sensible default
(the h-average stabilises while L-h stays close to L).

``uk_norm`` is the exact uniformity norm over the cyclic group Z_N (circular
indices), kept brute-force on purpose: it is the independent cross-check for
the orbit estimator, not a fast path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backend import K
from .errors import InputError, UnsupportedError
from .observables import Observable, evaluate_along
from .systems import StatePoint, SystemSpec, orbit
from .util import pairwise_sum

K_MAX = 4
_UK_CAPS = {2: 1 << 14, 3: 1 << 12}


@dataclass(frozen=True)
class SeminormEstimate:
    k: int
    value: float
    n: int
    h_window: int
    observable: str
    system: str

    def to_json_dict(self) -> dict:
        return {
            "system": self.system,
            "observable": self.observable,
            "k": self.k,
            "N": self.n,
            "H": self.h_window,
            "value": self.value,
        }


@dataclass(frozen=True)
class UkNorm:
    k: int
    value: float
    n: int


def _estimate(g: np.ndarray, k: int, h_window: int) -> float:
    length = g.shape[0]
    if k == 1:
        return abs(pairwise_sum(g)) / length
    if k == 2:
        # est_1 of each differenced sequence collapses to one correlation sum
        corr = K.shifted_corr(g, h_window)
        lengths = length - np.arange(1, h_window + 1, dtype=np.float64)
        acc = float(np.sum((np.abs(corr) / lengths) ** 2))
        return (acc / h_window) ** 0.25
    acc = 0.0
    for h in range(1, h_window + 1):
        d = np.conj(g[: length - h]) * g[h:]
        acc += _estimate(d, k - 1, h_window) ** (1 << (k - 1))
    return (acc / h_window) ** (2.0 ** (-k))


def _validate(k: int, n: int, h: int) -> None:
    if k < 1:
        raise InputError("k must be >= 1")
    if k > K_MAX:
        raise UnsupportedError(f"k = {k} not supported (cost doubles per level; max {K_MAX})")
    if not 1 <= h <= n // 2:
        raise InputError("need 1 <= H <= N/2")
    if (k - 1) * h >= n:
        raise InputError("need (k-1)*H < N so differenced sequences stay nonempty")


def ghk_estimate(
    system: SystemSpec, x: StatePoint, f: Observable, k: int, n: int, h: int
) -> SeminormEstimate:
    """Orbit-truncation estimate of the degree-k seminorm of f at x."""
    _validate(k, n, h)
    table = orbit(system, x, 1, n)
    vals = evaluate_along(table, f)
    return SeminormEstimate(
        k=k,
        value=_estimate(vals, k, h),
        n=n,
        h_window=h,
        observable=f.name,
        system=system.label,
    )


def seminorm_ladder(
    system: SystemSpec, x: StatePoint, f: Observable, k_max: int, n: int, h: int
) -> list[SeminormEstimate]:
    """Estimates for k = 1..k_max sharing a single orbit evaluation."""
    _validate(k_max, n, h)
    table = orbit(system, x, 1, n)
    vals = evaluate_along(table, f)
    return [
        SeminormEstimate(
            k=k,
            value=_estimate(vals, k, h),
            n=n,
            h_window=h,
            observable=f.name,
            system=system.label,
        )
        for k in range(1, k_max + 1)
    ]


def uk_norm(values: np.ndarray, k: int) -> UkNorm:
    """Exact degree-k uniformity norm of a sequence over Z_N.

    Cost is N^k; sizes are capped accordingly (k = 2 up to 2^14, k = 3 up to
    2^12 and slow near the cap).
    """
    vals = np.ascontiguousarray(values, dtype=np.complex128)
    n = vals.shape[0]
    if k not in _UK_CAPS:
        raise InputError("k must be 2 or 3")
    if n < 1:
        raise InputError("empty sequence")
    if n > _UK_CAPS[k]:
        raise InputError(f"N = {n} exceeds the size cap {_UK_CAPS[k]} for k = {k}")
    if k == 2:
        return UkNorm(2, K.uk2_pow4(vals) ** 0.25, n)
    return UkNorm(3, K.uk3_pow8(vals) ** 0.125, n)
