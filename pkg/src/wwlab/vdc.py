"""The van der Corput inequality as an exact finite computation, plus the
h-differencing transforms it feeds.

Indexing convention: the inequality is stated for a_0..a_(N-1) with the
inner correlation sums stopping at n = N-h-1.  This is zero-based on
purpose; the averaging code elsewhere sums n = 1..N.  The two conventions
differ by a single term and both appear here deliberately, per call site.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .averages import WeightSequence
from .backend import K
from .errors import InputError
from .fixedpoint import MASK
from .phases import PolynomialPhase
from .util import pairwise_sum


@dataclass(frozen=True)
class VdcReport:
    """Both sides of the inequality at one (N, H); slack = rhs - lhs >= 0
    up to roundoff."""

    n: int
    h: int
    lhs: float
    rhs: float
    slack: float

    def to_json_dict(self) -> dict:
        return {"N": self.n, "H": self.h, "lhs": self.lhs, "rhs": self.rhs, "slack": self.slack}


def vdc_bound(a: np.ndarray, h_window: int) -> VdcReport:
    """lhs = |(1/N) sum_{n=0}^{N-1} a_n|^2 against the two-term bound

    rhs = (N+H)/(N^2 (H+1)) sum |a_n|^2
        + 2 (N+H)/(N^2 (H+1)^2) sum_{h=1}^{H} (H+1-h) Re sum_{n=0}^{N-h-1} a_n conj(a_{n+h}).
    """
    arr = np.ascontiguousarray(a, dtype=np.complex128)
    n = arr.shape[0]
    if n < 1:
        raise InputError("need at least one term")
    if not 0 <= h_window <= n - 1:
        raise InputError("need 0 <= H <= N-1")
    mean = pairwise_sum(arr) / n
    lhs = mean.real**2 + mean.imag**2  # same primitive as the |a_n|^2 side
    sumsq = float(np.sum(arr.real**2 + arr.imag**2))
    rhs = (n + h_window) / (n * n * (h_window + 1)) * sumsq
    if h_window > 0:
        corr = K.shifted_corr(arr, h_window)
        weights = (h_window + 1) - np.arange(1, h_window + 1, dtype=np.float64)
        rhs += (
            2.0
            * (n + h_window)
            / (n * n * (h_window + 1) ** 2)
            * float(np.sum(weights * corr.real))
        )
    return VdcReport(n, h_window, float(lhs), float(rhs), float(rhs - lhs))


def h_difference(w: WeightSequence, h: int) -> WeightSequence:
    """Weights of the h-differenced observable pair, length N-h.

    The differenced weight is u_n * conj(u_(n+h)): the product of the pair
    (f1 * conj f1 o T^(ah), f2 * conj f2 o T^(bh)) along the same orbits, so
    no new orbit is generated.  The result is NOT renormalised; averaging it
    against 1/N or 1/(N-h) is the caller's choice (1/N is the convention
    used downstream).
    """
    length = w.n_max
    if not 1 <= h <= length // 2:
        raise InputError("need 1 <= h <= length/2")
    base = dict(
        system_label=w.system_label,
        f1_label=f"diff(h={h},{w.f1_label})",
        f2_label=f"diff(h={h},{w.f2_label})",
        a=w.a,
        b=w.b,
        n_max=length - h,
    )
    if w.fracs is not None:
        return WeightSequence(fracs=w.fracs[: length - h] - w.fracs[h:], **base)
    vals = w.values
    return WeightSequence(_values=vals[: length - h] * np.conj(vals[h:]), **base)


def difference_phase(p: PolynomialPhase, h: int) -> PolynomialPhase:
    """The phase q_h(n) = p(n+h) - p(n), constant term dropped.

    Binomial expansion mod 1: q_i = sum_{j>i} c_j C(j,i) h^(j-i) for
    i = 1..k-1, so the degree drops by one (the leading terms cancel).  A
    linear p gives the empty (constant) phase.
    """
    k = p.degree
    if k < 1:
        raise InputError("need degree >= 1")
    out = []
    for i in range(1, k):
        s = 0
        for j in range(i + 1, k + 1):
            s = (s + p.coeffs[j - 1] * (comb(j, i) * h ** (j - i))) & MASK
        out.append(s)
    return PolynomialPhase(tuple(out))
