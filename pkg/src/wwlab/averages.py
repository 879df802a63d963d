"""Double-recurrence weighted averages and suprema over phase families.

The running average under study is

    W_N = (1/N) * sum_{n=1}^{N} u_n e(p(n)),       u_n = f1(T^(an) x) f2(T^(bn) x),

with p a real-coefficient polynomial phase.  Two supremum scans are provided:

* degree 1: a zero-padded FFT evaluates |W_N| on the grid t = j/(oversample*N)
  in one pass, and a derivative bound turns the grid maximum into a rigorous
  bound for the continuum supremum (``rigor_bound``);
* degree >= 2: an outer grid over (c_2..c_k) with an FFT over c_1 per cell,
  followed by local refinement around the incumbent.  No rigor bound is
  claimed there (``rigorous`` is False): a narrow peak between grid points
  can in principle be missed.

When both observables have an exact phase form, the weights are carried as
fixed-point phase numerators and every modulation below is exact integer
arithmetic; only the final complex exponential rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .backend import K
from .errors import GridBudgetExceeded, InputError
from .fixedpoint import MASK, frac_from_ratio, frac_to_float
from .observables import Observable, evaluate_along, phase_fracs_along, product
from .phases import PolynomialPhase, TrigPolynomial, fracs_to_complex, scale_phase_int
from .systems import StatePoint, SystemSpec, orbit
from .util import cesaro_prefix, parallel_map

_U64 = np.uint64


def geometric_schedule(n_max: int, start: int = 1) -> tuple[int, ...]:
    """Powers of two from ``start`` up to n_max, always ending at n_max."""
    if n_max < 1 or start < 1 or start > n_max:
        raise InputError("need 1 <= start <= n_max")
    out = []
    n = start
    while n <= n_max:
        out.append(n)
        n *= 2
    if out[-1] != n_max:
        out.append(n_max)
    return tuple(out)


@dataclass
class WeightSequence:
    """Weights u_n for n = 1..n_max (index i holds u_(i+1)).

    Either ``fracs`` holds exact phase numerators (u_n = e(fracs[n-1])) or
    ``values`` holds general complex weights.
    """

    system_label: str
    f1_label: str
    f2_label: str
    a: int
    b: int
    n_max: int
    fracs: Optional[np.ndarray] = None
    _values: Optional[np.ndarray] = None
    _max_abs: Optional[float] = None

    @property
    def values(self) -> np.ndarray:
        if self._values is None:
            self._values = fracs_to_complex(self.fracs)
        return self._values

    @property
    def max_abs(self) -> float:
        if self.fracs is not None:
            return 1.0
        if self._max_abs is None:
            self._max_abs = float(np.max(np.abs(self.values))) if self.n_max else 0.0
        return self._max_abs

    def modulated(self, n: int, extra_fracs: Optional[np.ndarray] = None) -> np.ndarray:
        """u_n e(q(n)) for n = 1..n, with q given by phase numerators."""
        if not 1 <= n <= self.n_max:
            raise InputError(f"need 1 <= N <= {self.n_max}")
        if self.fracs is not None:
            total = self.fracs[:n]
            if extra_fracs is not None:
                total = total + extra_fracs[:n]
            return fracs_to_complex(total)
        vals = self.values[:n]
        if extra_fracs is None:
            return vals
        return vals * fracs_to_complex(extra_fracs[:n])


def weight_sequence(
    system: SystemSpec,
    x: StatePoint,
    f1: Observable,
    f2: Observable,
    a: int,
    b: int,
    n_max: int,
) -> WeightSequence:
    """Weights u_n = f1(T^(an) x) f2(T^(bn) x) from two orbits sharing x."""
    if a == b:
        raise InputError(
            "equal strides reduce the average to a single-orbit weighted mean "
            "of the product observable; use single_orbit_weights for that mode"
        )
    if a < 1 or b < 1:
        raise InputError("strides must be >= 1 (forward orbits only)")
    if n_max < 1:
        raise InputError("n_max must be >= 1")
    ta = orbit(system, x, a, n_max + 1)
    tb = orbit(system, x, b, n_max + 1)
    base = dict(
        system_label=system.label,
        f1_label=f1.name,
        f2_label=f2.name,
        a=a,
        b=b,
        n_max=n_max,
    )
    fa = phase_fracs_along(ta, f1)
    fb = phase_fracs_along(tb, f2)
    if fa is not None and fb is not None:
        return WeightSequence(fracs=(fa + fb)[1:], **base)
    va = evaluate_along(ta, f1)
    vb = evaluate_along(tb, f2)
    return WeightSequence(_values=(va * vb)[1:], **base)


def single_orbit_weights(
    system: SystemSpec,
    x: StatePoint,
    f1: Observable,
    f2: Observable,
    a: int,
    n_max: int,
) -> WeightSequence:
    """Equal-stride mode: u_n = (f1*f2)(T^(an) x)."""
    if a < 1 or n_max < 1:
        raise InputError("need a >= 1 and n_max >= 1")
    g = product(f1, f2)
    table = orbit(system, x, a, n_max + 1)
    base = dict(
        system_label=system.label,
        f1_label=f1.name,
        f2_label=f2.name,
        a=a,
        b=a,
        n_max=n_max,
    )
    fr = phase_fracs_along(table, g)
    if fr is not None:
        return WeightSequence(fracs=fr[1:], **base)
    return WeightSequence(_values=evaluate_along(table, g)[1:], **base)


@dataclass
class AverageSeries:
    """W_N at each scheduled truncation."""

    schedule: tuple[int, ...]
    values: np.ndarray
    phase: Optional[PolynomialPhase]
    weight_label: str = ""

    def moduli(self) -> np.ndarray:
        return np.abs(self.values)

    def to_json_dict(self) -> dict:
        return {
            "weights": self.weight_label,
            "phase": self.phase.to_json_dict() if self.phase is not None else None,
            "points": [
                {"N": n, "re": v.real, "im": v.imag, "modulus": abs(v)}
                for n, v in zip(self.schedule, self.values)
            ],
        }


def _check_schedule(schedule: Sequence[int], n_max: int) -> tuple[int, ...]:
    sched = tuple(int(n) for n in schedule)
    if not sched:
        raise InputError("empty truncation schedule")
    if any(n < 1 or n > n_max for n in sched):
        raise InputError(f"schedule entries must lie in [1, {n_max}]")
    if any(b <= a for a, b in zip(sched, sched[1:])):
        raise InputError("schedule must be strictly increasing")
    return sched


def ww_average(
    w: WeightSequence, p: PolynomialPhase, schedule: Sequence[int]
) -> AverageSeries:
    """Running means of u_n e(p(n)) at the scheduled truncations."""
    sched = _check_schedule(schedule, w.n_max)
    top = sched[-1]
    n_arr = np.arange(1, top + 1, dtype=_U64)
    q = K.poly_eval_fracs(p.coeffs, n_arr) if p.coeffs else None
    z = w.modulated(top, q)
    vals = cesaro_prefix(z, sched)
    label = f"{w.f1_label}|{w.f2_label}|a={w.a},b={w.b}"
    return AverageSeries(sched, vals, p, label)


def twisted_average_trig(
    w: WeightSequence,
    phi: TrigPolynomial,
    p: PolynomialPhase,
    schedule: Sequence[int],
) -> AverageSeries:
    """Running means of u_n phi(p(n)), expanded over the trigonometric terms.

    phi(p(n)) = sum_m amp_m e(m p(n)), and each summand is an ordinary phase
    average with the integer-scaled polynomial, so the series is the matching
    linear combination.
    """
    sched = _check_schedule(schedule, w.n_max)
    total = np.zeros(len(sched), dtype=np.complex128)
    for m, amp in phi.terms:
        part = ww_average(w, scale_phase_int(p, m), sched)
        total += amp * part.values
    label = f"{w.f1_label}|{w.f2_label}|trig({len(phi.terms)} terms)"
    return AverageSeries(sched, total, p, label)


@dataclass(frozen=True)
class GridBudget:
    """Scan budget for sup_poly_grid.

    ``grid`` gives the number of cells per coefficient c_2..c_k (an int is
    broadcast); ``levels`` rounds of local refinement halve the cell each
    time; ``max_evals`` caps the number of FFT scans before the scan aborts
    with its incumbent.
    """

    grid: tuple[int, ...] | int = 64
    levels: int = 2
    max_evals: int = 1 << 16
    oversample: int = 4

    def sizes(self, k: int) -> tuple[int, ...]:
        g = self.grid
        if isinstance(g, int):
            return (g,) * (k - 1)
        if len(g) != k - 1:
            raise InputError(f"grid needs {k - 1} sizes for degree {k}")
        return tuple(int(s) for s in g)


@dataclass
class SupScan:
    """Result of a supremum scan over a phase family."""

    family: str
    k: int
    n: int
    sup_value: float
    argmax: tuple[float, ...]
    argmax_fracs: tuple[int, ...]
    rigor_bound: float
    rigorous: bool
    oversample: int
    evals: int = 1
    argmax_index: int = 0
    grid_size: int = 0
    scan: Optional[np.ndarray] = None
    scan_axis: Optional[np.ndarray] = None
    cells: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "k": self.k,
            "N": self.n,
            "sup_value": self.sup_value,
            "argmax": list(self.argmax),
            "argmax_fracs": [f"0x{f:016x}" for f in self.argmax_fracs],
            "rigor_bound": self.rigor_bound,
            "rigorous": self.rigorous,
            "oversample": self.oversample,
            "evals": self.evals,
        }


_FFT_CAP = 1 << 24


def _fft_scan(u: np.ndarray, n: int, oversample: int) -> tuple[float, int, int]:
    """Grid maximum of |(1/N) sum u_n e(n t)| over t = j/(oversample*N).

    Returns (max, argmax bin, grid size).  The inverse transform carries the
    + sign of the modulation, so bin j is exactly t = j/M.
    """
    m = oversample * n
    if m > _FFT_CAP:
        raise InputError(f"FFT grid {m} exceeds the memory cap {_FFT_CAP}")
    buf = np.zeros(m, dtype=np.complex128)
    buf[np.arange(1, n + 1) % m] = u
    mags = np.abs(np.fft.ifft(buf)) * (m / n)
    j = int(np.argmax(mags))
    return float(mags[j]), j, m


def sup_linear_fft(
    w: WeightSequence, n: int, oversample: int = 4, keep_scan: bool = False
) -> SupScan:
    """Supremum of |W_N| over the linear-phase grid, with a rigor bound.

    |d/dt (1/N) sum u_n e(nt)| <= 2 pi N max|u|, and the grid never leaves
    more than half a cell 1/(2M) uncovered, so the continuum supremum exceeds
    the grid maximum by at most pi * mean|u| / oversample.
    """
    if oversample < 1:
        raise InputError("oversample must be >= 1")
    u = w.modulated(n)
    sup, j, m = _fft_scan(u, n, oversample)
    mean_abs = 1.0 if w.fracs is not None else float(np.mean(np.abs(u)))
    frac = frac_from_ratio(j, m)
    scan = SupScan(
        family="linear",
        k=1,
        n=n,
        sup_value=sup,
        argmax=(j / m,),
        argmax_fracs=(frac,),
        rigor_bound=math.pi * mean_abs / oversample,
        rigorous=True,
        oversample=oversample,
        evals=1,
        argmax_index=j,
        grid_size=m,
    )
    if keep_scan:
        buf = np.zeros(m, dtype=np.complex128)
        buf[np.arange(1, n + 1) % m] = u
        scan.scan = np.abs(np.fft.ifft(buf)) * (m / n)
        scan.scan_axis = np.arange(m) / m
    return scan


def sup_poly_grid(
    w: WeightSequence,
    n: int,
    k: int,
    budget: GridBudget,
    threads: int | None = None,
    keep_cells: bool = False,
) -> SupScan:
    """Supremum of |W_N| over degree-k phases on a grid, with refinement.

    Scans a product grid over (c_2..c_k); each cell modulates the weights by
    e(sum_{j>=2} c_j n^j) and delegates the c_1 direction to the FFT scan.
    ``budget.levels`` rounds then halve the cell around the incumbent and
    rescan its 3^(k-1) neighbourhood.  Ties keep the lexicographically first
    grid cell, so chunked or threaded evaluation cannot change the result.
    """
    if k < 1:
        raise InputError("degree must be >= 1")
    if k == 1:
        return sup_linear_fft(w, n, budget.oversample)
    sizes = budget.sizes(k)
    n_arr = np.arange(1, n + 1, dtype=_U64)
    oversample = budget.oversample

    def eval_cell(cell_fracs: tuple[int, ...]) -> tuple[float, int, int]:
        q = K.poly_eval_fracs((0,) + cell_fracs, n_arr)
        u = w.modulated(n, q)
        return _fft_scan(u, n, oversample)

    best: Optional[tuple[float, tuple[int, ...], int, int]] = None  # sup, fracs, j, m
    evals = 0
    cells_out: list = []

    def to_scan(partial: bool) -> SupScan:
        sup, fracs, j, m = best
        all_fracs = (frac_from_ratio(j, m),) + fracs
        mean_abs = 1.0 if w.fracs is not None else float(np.mean(np.abs(w.values[:n])))
        return SupScan(
            family="poly",
            k=k,
            n=n,
            sup_value=sup,
            argmax=tuple(frac_to_float(f) for f in all_fracs),
            argmax_fracs=all_fracs,
            rigor_bound=math.pi * mean_abs / oversample,  # c_1 direction only
            rigorous=False,
            oversample=oversample,
            evals=evals,
            argmax_index=j,
            grid_size=m,
            cells=cells_out if (keep_cells or partial) else [],
        )

    grid_cells = [
        tuple(frac_from_ratio(i, g) for i, g in zip(idx, sizes))
        for idx in np.ndindex(*sizes)
    ]
    chunk = 64
    for start in range(0, len(grid_cells), chunk):
        block = grid_cells[start : start + chunk]
        if evals + len(block) > budget.max_evals:
            if best is None:
                raise GridBudgetExceeded("budget too small for a single cell", None)
            raise GridBudgetExceeded(
                f"scan stopped after {evals} of {len(grid_cells)} cells", to_scan(True)
            )
        results = parallel_map(eval_cell, block, threads=threads)
        evals += len(block)
        for cell_fracs, (sup, j, m) in zip(block, results):
            if keep_cells:
                cells_out.append(
                    tuple(frac_to_float(f) for f in cell_fracs) + (sup,)
                )
            if best is None or sup > best[0]:
                best = (sup, cell_fracs, j, m)

    cell_fracs_sizes = [frac_from_ratio(1, g) for g in sizes]
    for _ in range(budget.levels):
        cell_fracs_sizes = [c >> 1 for c in cell_fracs_sizes]
        center = best[1]
        neighbourhood = []
        for delta in np.ndindex(*([3] * (k - 1))):
            if all(d == 1 for d in delta):
                continue  # centre already evaluated
            cand = tuple(
                (c + (d - 1) * step) & MASK
                for c, d, step in zip(center, delta, cell_fracs_sizes)
            )
            neighbourhood.append(cand)
        if evals + len(neighbourhood) > budget.max_evals:
            raise GridBudgetExceeded(
                f"refinement stopped after {evals} scans", to_scan(True)
            )
        results = parallel_map(eval_cell, neighbourhood, threads=threads)
        evals += len(neighbourhood)
        for cand, (sup, j, m) in zip(neighbourhood, results):
            if sup > best[0]:
                best = (sup, cand, j, m)

    return to_scan(False)
