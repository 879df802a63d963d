"""Explicitly computable measure-preserving systems and exact orbits.

Four system kinds are provided:

* ``rotation``     T(x) = x + alpha on the circle
* ``anzai_skew``   T(x, y) = (x + alpha, y + x) on the 2-torus
* ``heisenberg``   T(x, y, z) = (x + alpha, y + beta, z + x*beta) on the
  3-torus, the product x*beta rounded to the nearest 2**-64
* ``bernoulli``    one-sided shift on a seeded bit stream (two symbols)

Torus coordinates are 64-bit fixed-point fractions, so iteration is exact
group arithmetic: rotation and the skew product admit closed-form iterates
that agree bit for bit with step-by-step application.  The Bernoulli shift
reads bits from a counter-based generator, so orbits of any length need O(1)
state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .backend import K
from .errors import InputError
from .fixedpoint import MASK, CirclePoint, frac_from_hex, frac_to_hex

ROTATION = "rotation"
ANZAI_SKEW = "anzai_skew"
BERNOULLI = "bernoulli"
HEISENBERG = "heisenberg"

_KINDS = (ROTATION, ANZAI_SKEW, BERNOULLI, HEISENBERG)
_DIMS = {ROTATION: 1, ANZAI_SKEW: 2, BERNOULLI: 0, HEISENBERG: 3}

_U64 = np.uint64
_CHUNK = 1 << 20


@dataclass(frozen=True)
class BitCursor:
    """Position in a seeded bit stream: the state of the Bernoulli shift."""

    seed: int
    offset: int = 0


@dataclass(frozen=True)
class StatePoint:
    """A point of a system's state space.

    Torus systems use ``coords`` (1-3 circle points); the Bernoulli shift
    uses ``cursor``.
    """

    coords: tuple[CirclePoint, ...] = ()
    cursor: Optional[BitCursor] = None

    @property
    def dim(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class SystemSpec:
    """A system kind together with its rotation parameters and a label."""

    kind: str
    alpha: Optional[CirclePoint] = None
    beta: Optional[CirclePoint] = None
    label: str = ""

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise InputError(f"unknown system kind {self.kind!r}")
        if self.kind in (ROTATION, ANZAI_SKEW, HEISENBERG) and self.alpha is None:
            raise InputError(f"{self.kind} needs alpha")
        if self.kind == HEISENBERG and self.beta is None:
            raise InputError("heisenberg needs beta")
        if not self.label:
            object.__setattr__(self, "label", self.kind)

    @property
    def dim(self) -> int:
        return _DIMS[self.kind]

    @property
    def has_closed_form(self) -> bool:
        """Whether T^n is evaluated by a closed formula rather than stepping."""
        return self.kind in (ROTATION, ANZAI_SKEW, BERNOULLI)

    @classmethod
    def rotation(cls, alpha: CirclePoint, label: str = "") -> "SystemSpec":
        return cls(ROTATION, alpha=alpha, label=label)

    @classmethod
    def anzai(cls, alpha: CirclePoint, label: str = "") -> "SystemSpec":
        return cls(ANZAI_SKEW, alpha=alpha, label=label)

    @classmethod
    def bernoulli(cls, label: str = "") -> "SystemSpec":
        return cls(BERNOULLI, label=label)

    @classmethod
    def heisenberg(cls, alpha: CirclePoint, beta: CirclePoint, label: str = "") -> "SystemSpec":
        return cls(HEISENBERG, alpha=alpha, beta=beta, label=label)

    def to_json_dict(self) -> dict:
        params: dict = {}
        if self.alpha is not None:
            params["alpha"] = frac_to_hex(self.alpha.frac)
        if self.beta is not None:
            params["beta"] = frac_to_hex(self.beta.frac)
        if self.kind == BERNOULLI:
            params["symbols"] = 2
        return {"kind": self.kind, "params": params, "label": self.label}

    @classmethod
    def from_json_dict(cls, data: dict) -> "SystemSpec":
        params = data.get("params", {})
        alpha = params.get("alpha")
        beta = params.get("beta")
        return cls(
            data["kind"],
            alpha=CirclePoint(frac_from_hex(alpha)) if alpha is not None else None,
            beta=CirclePoint(frac_from_hex(beta)) if beta is not None else None,
            label=data.get("label", ""),
        )


def _check_state(system: SystemSpec, x: StatePoint) -> None:
    if system.kind == BERNOULLI:
        if x.cursor is None or x.coords:
            raise InputError("bernoulli state needs a bit cursor")
    else:
        if x.cursor is not None or x.dim != system.dim:
            raise InputError(
                f"state dimension {x.dim} does not match {system.kind} (dim {system.dim})"
            )


class OrbitTable:
    """Sampled orbit: states[i] = T^(stride*i)(start), exactly.

    Torus coordinates are stored as uint64 numerator arrays; the Bernoulli
    shift stores the sampled bits.
    """

    def __init__(self, system, start, stride, length, coords=None, bits=None):
        self.system = system
        self.start = start
        self.stride = stride
        self.length = length
        self.coords = coords  # tuple of uint64 arrays, one per torus coordinate
        self.bits = bits      # uint8 array of sampled bits (bernoulli)

    def __len__(self) -> int:
        return self.length

    def state_at(self, i: int) -> StatePoint:
        if not 0 <= i < self.length:
            raise IndexError(i)
        if self.bits is not None:
            c = self.start.cursor
            return StatePoint(cursor=BitCursor(c.seed, c.offset + self.stride * i))
        return StatePoint(coords=tuple(CirclePoint(int(a[i])) for a in self.coords))


def _binom2_wrapped(m: np.ndarray) -> np.ndarray:
    """m*(m-1)/2 mod 2**64 for uint64 m."""
    if m.size == 0 or int(m.max()) < (1 << 32):
        # product fits in 64 bits, so the halving shift is exact
        return (m * (m - _U64(1))) >> _U64(1)
    return np.array([(int(v) * (int(v) - 1) // 2) & MASK for v in m], dtype=_U64)


def _mul_round_const(arr: np.ndarray, c: int) -> np.ndarray:
    return K.mul_round(arr, np.full(arr.shape[0], _U64(c & MASK)))


def _heisenberg_z_prefix(x0: int, alpha: int, beta: int, sample_steps: np.ndarray) -> np.ndarray:
    """sum_{j<m} round((x0 + j*alpha)*beta) mod 1 at each sampled step m."""
    out = np.zeros(sample_steps.shape[0], dtype=_U64)
    max_step = int(sample_steps.max()) if sample_steps.size else 0
    carry = 0
    filled = 0
    order = np.argsort(sample_steps, kind="stable")
    steps_sorted = sample_steps[order]
    vals_sorted = np.zeros_like(steps_sorted)
    while filled < steps_sorted.shape[0] and int(steps_sorted[filled]) == 0:
        filled += 1  # empty prefix at step 0
    for chunk_start in range(0, max_step, _CHUNK):
        cnt = min(_CHUNK, max_step - chunk_start)
        j = np.arange(chunk_start, chunk_start + cnt, dtype=_U64)
        xs = _U64(x0) + j * _U64(alpha)
        csum = np.cumsum(_mul_round_const(xs, beta))  # wraps mod 2**64
        hi = chunk_start + cnt
        while filled < steps_sorted.shape[0] and chunk_start < int(steps_sorted[filled]) <= hi:
            m = int(steps_sorted[filled])
            vals_sorted[filled] = _U64((carry + int(csum[m - 1 - chunk_start])) & MASK)
            filled += 1
        carry = (carry + int(csum[-1])) & MASK
    out[order] = vals_sorted
    return out


def orbit(system: SystemSpec, x: StatePoint, stride: int, length: int) -> OrbitTable:
    """Sampled forward orbit with states[i] = T^(stride*i)(x).

    Closed forms are used for rotation and the skew product; the Heisenberg
    z-coordinate is a prefix sum of rounded products, accumulated in chunks.
    """
    if length < 1:
        raise InputError("orbit length must be >= 1")
    if stride < 1:
        raise InputError("stride must be >= 1 (forward orbits only)")
    _check_state(system, x)

    n = _U64(stride) * np.arange(length, dtype=_U64)

    if system.kind == BERNOULLI:
        c = x.cursor
        offsets = _U64(c.offset & MASK) + n
        bits = K.bit_stream(c.seed, offsets)
        return OrbitTable(system, x, stride, length, bits=bits)

    a = system.alpha.frac
    if system.kind == ROTATION:
        xs = _U64(x.coords[0].frac) + n * _U64(a)
        return OrbitTable(system, x, stride, length, coords=(xs,))

    if system.kind == ANZAI_SKEW:
        x0 = _U64(x.coords[0].frac)
        xs = x0 + n * _U64(a)
        ys = _U64(x.coords[1].frac) + n * x0 + _binom2_wrapped(n) * _U64(a)
        return OrbitTable(system, x, stride, length, coords=(xs, ys))

    # heisenberg
    b = system.beta.frac
    x0 = x.coords[0].frac
    xs = _U64(x0) + n * _U64(a)
    ys = _U64(x.coords[1].frac) + n * _U64(b)
    zs = _U64(x.coords[2].frac) + _heisenberg_z_prefix(x0, a, b, n)
    return OrbitTable(system, x, stride, length, coords=(xs, ys, zs))


def iterate(system: SystemSpec, x: StatePoint, steps: int) -> StatePoint:
    """T^steps(x), exact under the fixed-point rules."""
    if steps < 0:
        raise InputError("steps must be >= 0")
    _check_state(system, x)
    if steps == 0:
        return x

    if system.kind == BERNOULLI:
        c = x.cursor
        return StatePoint(cursor=BitCursor(c.seed, c.offset + steps))

    a = system.alpha.frac
    if system.kind == ROTATION:
        x0 = x.coords[0].frac
        return StatePoint(coords=(CirclePoint((x0 + steps * a) & MASK),))

    if system.kind == ANZAI_SKEW:
        x0, y0 = (c.frac for c in x.coords)
        c2 = steps * (steps - 1) // 2
        return StatePoint(
            coords=(
                CirclePoint((x0 + steps * a) & MASK),
                CirclePoint((y0 + steps * x0 + c2 * a) & MASK),
            )
        )

    # heisenberg: no closed form for z; reuse the chunked prefix sum
    table = orbit(system, x, steps, 2)
    return table.state_at(1)


def sample_initial_points(system: SystemSpec, count: int, seed: int) -> list[StatePoint]:
    """Deterministic pseudo-random points equidistributed for the invariant
    measure (uniform fixed-point fractions per torus coordinate, fresh
    sub-seeds for the Bernoulli bit stream).  Same seed, same output.
    """
    if count < 1:
        raise InputError("count must be >= 1")
    if system.kind == BERNOULLI:
        subs = K.mix64(seed, np.arange(count, dtype=_U64))
        return [StatePoint(cursor=BitCursor(int(s), 0)) for s in subs]
    d = system.dim
    words = K.mix64(seed, np.arange(count * d, dtype=_U64)).reshape(count, d)
    return [
        StatePoint(coords=tuple(CirclePoint(int(w)) for w in row)) for row in words
    ]


def torus_uniformity_chi2(fracs: np.ndarray, bins: int = 64) -> float:
    """Chi-square statistic of a frac sample against the uniform law."""
    counts, _ = np.histogram(fracs / float(1 << 64), bins=bins, range=(0.0, 1.0))
    expected = fracs.shape[0] / bins
    return float(np.sum((counts - expected) ** 2) / expected)
