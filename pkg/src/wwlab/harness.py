"""Experiment runner: Monte-Carlo integrals over sampled initial points,
trend and ordering checks, and flat-file persistence keyed by config hash.

Every run is a pure function of its configuration: initial points come from
counter-based streams derived from (seed, index), tasks are reduced in index
order, and CSV cells are shortest round-trip float reprs, so outputs are
byte-identical across repeat runs and thread caps.
"""

from __future__ import annotations

import hashlib
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from scipy import stats as _st

from . import __version__
from .averages import (
    GridBudget,
    WeightSequence,
    geometric_schedule,
    sup_linear_fft,
    sup_poly_grid,
    weight_sequence,
    ww_average,
)
from .backend import K
from .errors import InputError, UnsupportedError
from .fixedpoint import MASK, CirclePoint
from .observables import (
    Observable,
    catalog_lookup,
    evaluate_along,
    in_structured_complement,
)
from .phases import PolynomialPhase
from .seminorms import ghk_estimate
from .systems import (
    ANZAI_SKEW,
    BERNOULLI,
    HEISENBERG,
    ROTATION,
    OrbitTable,
    StatePoint,
    SystemSpec,
    orbit,
    sample_initial_points,
)
from .util import thread_cap, parallel_map

_U64 = np.uint64

EXPERIMENT_KINDS = ("uniformity", "domination", "convergence", "maximal", "return-time")


@dataclass
class MonteCarloIntegral:
    """Per-point values of one statistic over sampled initial points."""

    statistic: str
    per_point: np.ndarray

    @property
    def count(self) -> int:
        return int(self.per_point.shape[0])

    @property
    def mean(self) -> float:
        return float(np.mean(self.per_point))

    @property
    def stderr(self) -> float:
        n = self.count
        if n < 2:
            return 0.0
        return float(np.std(self.per_point, ddof=1) / np.sqrt(n))

    @property
    def minimum(self) -> float:
        return float(np.min(self.per_point))

    @property
    def maximum(self) -> float:
        return float(np.max(self.per_point))


@dataclass
class ExperimentConfig:
    """Everything a run depends on; the canonical form is hashed into output
    file names (the output directory itself is excluded from the hash)."""

    system: SystemSpec
    f1: str = "const_one"
    f2: str = "const_one"
    a: int = 1
    b: int = 2
    degree: int = 1
    n_max: int = 1 << 14
    schedule: Optional[tuple[int, ...]] = None
    schedule_start: int = 1
    h_window: int = 1 << 6
    tolerance: float = 0.05
    oversample: int = 4
    grid: tuple[int, ...] | int = 64
    levels: int = 2
    max_evals: int = 1 << 16
    kind: str = "uniformity"
    samples: int = 50
    samples_y: int = 32
    seed: int = 0
    outdir: str = "runs"
    family: tuple[str, ...] = ()
    phases: tuple[str, ...] = ()
    observable: str = "const_one"
    return_system: Optional[SystemSpec] = None
    return_g: str = "character_x(1)"
    return_poly: tuple[int, ...] = (1,)

    def resolved_schedule(self) -> tuple[int, ...]:
        if self.schedule is not None:
            return tuple(self.schedule)
        return geometric_schedule(self.n_max, self.schedule_start)

    def budget(self) -> GridBudget:
        return GridBudget(
            grid=self.grid,
            levels=self.levels,
            max_evals=self.max_evals,
            oversample=self.oversample,
        )

    def canonical(self) -> dict:
        phases = [PolynomialPhase.parse(s).to_json_dict() for s in self.phases]
        out = {
            "system": self.system.to_json_dict(),
            "weights": {"f1": self.f1, "f2": self.f2, "a": self.a, "b": self.b},
            "average": {
                "degree": self.degree,
                "n_max": self.n_max,
                "schedule": list(self.resolved_schedule()),
                "h_window": self.h_window,
                "tolerance": self.tolerance,
            },
            "sup": {
                "oversample": self.oversample,
                "grid": list(self.grid) if not isinstance(self.grid, int) else [self.grid],
                "levels": self.levels,
                "max_evals": self.max_evals,
            },
            "experiment": {
                "kind": self.kind,
                "samples": self.samples,
                "samples_y": self.samples_y,
                "seed": self.seed,
                "family": list(self.family),
                "phases": phases,
                "observable": self.observable,
            },
        }
        if self.return_system is not None:
            out["experiment"]["return"] = {
                "system": self.return_system.to_json_dict(),
                "g": self.return_g,
                "poly": list(self.return_poly),
            }
        return out

    def config_hash(self) -> str:
        blob = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:12]

    @classmethod
    def from_toml_dict(cls, data: dict) -> "ExperimentConfig":
        sysd = data.get("system", {})
        kind = sysd.get("kind", "rotation")
        alias = {"anzai": ANZAI_SKEW, "skew": ANZAI_SKEW}
        kind = alias.get(kind, kind)
        alpha = sysd.get("alpha")
        beta = sysd.get("beta")
        system = SystemSpec(
            kind,
            alpha=CirclePoint.parse(alpha) if alpha is not None else None,
            beta=CirclePoint.parse(beta) if beta is not None else None,
            label=sysd.get("label", ""),
        )
        wd = data.get("weights", {})
        ad = data.get("average", {})
        sd = data.get("sup", {})
        ed = data.get("experiment", {})
        grid = sd.get("grid", 64)
        if isinstance(grid, list):
            grid = tuple(int(g) for g in grid)
        ret = ed.get("return")
        return_system = None
        return_g = "character_x(1)"
        return_poly = (1,)
        if ret:
            rsys = ret.get("system", {})
            rkind = alias.get(rsys.get("kind", "rotation"), rsys.get("kind", "rotation"))
            ralpha = rsys.get("alpha")
            rbeta = rsys.get("beta")
            return_system = SystemSpec(
                rkind,
                alpha=CirclePoint.parse(ralpha) if ralpha is not None else None,
                beta=CirclePoint.parse(rbeta) if rbeta is not None else None,
                label=rsys.get("label", ""),
            )
            return_g = ret.get("g", return_g)
            return_poly = tuple(int(c) for c in ret.get("poly", [1]))
        sched = ad.get("schedule")
        return cls(
            system=system,
            f1=wd.get("f1", "const_one"),
            f2=wd.get("f2", "const_one"),
            a=int(wd.get("a", 1)),
            b=int(wd.get("b", 2)),
            degree=int(ad.get("degree", 1)),
            n_max=int(ad.get("n_max", 1 << 14)),
            schedule=tuple(int(n) for n in sched) if sched else None,
            schedule_start=int(ad.get("schedule_start", 1)),
            h_window=int(ad.get("h_window", 64)),
            tolerance=float(ad.get("tolerance", 0.05)),
            oversample=int(sd.get("oversample", 4)),
            grid=grid,
            levels=int(sd.get("levels", 2)),
            max_evals=int(sd.get("max_evals", 1 << 16)),
            kind=ed.get("kind", "uniformity"),
            samples=int(ed.get("samples", 50)),
            samples_y=int(ed.get("samples_y", 32)),
            seed=int(ed.get("seed", 0)),
            outdir=ed.get("outdir", "runs"),
            family=tuple(ed.get("family", [])),
            phases=tuple(ed.get("phases", [])),
            observable=ed.get("observable", "const_one"),
            return_system=return_system,
            return_g=return_g,
            return_poly=return_poly,
        )

    @classmethod
    def from_toml(cls, path: str | Path) -> "ExperimentConfig":
        try:
            import tomllib  # type: ignore[import-not-found]
        except ModuleNotFoundError:
            import tomli as tomllib  # type: ignore[no-redef]
        with open(path, "rb") as fh:
            return cls.from_toml_dict(tomllib.load(fh))


def _weights_for_point(cfg: ExperimentConfig, x: StatePoint, n_max: int) -> WeightSequence:
    f1 = catalog_lookup(cfg.f1)
    f2 = catalog_lookup(cfg.f2)
    return weight_sequence(cfg.system, x, f1, f2, cfg.a, cfg.b, n_max)


# ---------------------------------------------------------------------------
# uniformity decay


@dataclass
class UniformityReport:
    schedule: tuple[int, ...]
    integrals: list[MonteCarloIntegral]
    rigor_means: list[float]
    expected_decay: bool
    rigorous: bool

    def rows(self) -> list[list]:
        out = []
        for n, integ, rig in zip(self.schedule, self.integrals, self.rigor_means):
            out.append(
                [n, integ.mean, integ.stderr, integ.minimum, integ.maximum, rig]
            )
        return out


def run_uniformity_experiment(cfg: ExperimentConfig) -> UniformityReport:
    """Mean over sampled x of (sup over the phase family of |W_N|)^2, per N.

    The grid supremum and its rigor bound are reported side by side; decay is
    only *expected* when one observable is flagged orthogonal to every
    structured factor, but the run itself asserts nothing.
    """
    sched = cfg.resolved_schedule()
    points = sample_initial_points(cfg.system, cfg.samples, cfg.seed)
    budget = cfg.budget()

    def task(x: StatePoint):
        w = _weights_for_point(cfg, x, sched[-1])
        sups, rigs = [], []
        for n in sched:
            if cfg.degree == 1:
                scan = sup_linear_fft(w, n, cfg.oversample)
            else:
                scan = sup_poly_grid(w, n, cfg.degree, budget, threads=1)
            sups.append(scan.sup_value**2)
            rigs.append(scan.rigor_bound)
        return sups, rigs

    results = parallel_map(task, points)
    sup_mat = np.array([r[0] for r in results])
    rig_mat = np.array([r[1] for r in results])
    f1 = catalog_lookup(cfg.f1)
    f2 = catalog_lookup(cfg.f2)
    expected = in_structured_complement(f1, cfg.system.kind) or in_structured_complement(
        f2, cfg.system.kind
    )
    return UniformityReport(
        schedule=sched,
        integrals=[
            MonteCarloIntegral(f"sup2@N={n}", sup_mat[:, i]) for i, n in enumerate(sched)
        ],
        rigor_means=[float(np.mean(rig_mat[:, i])) for i in range(len(sched))],
        expected_decay=expected,
        rigorous=cfg.degree == 1,
    )


# ---------------------------------------------------------------------------
# seminorm domination ordering


@dataclass
class DominationReport:
    members: list[str]
    lhs: list[MonteCarloIntegral]
    rhs: list[float]
    rhs_f1: list[float]
    rhs_f2: list[float]
    spearman: float
    seminorm_degree: int

    def rows(self) -> list[list]:
        out = []
        for i, name in enumerate(self.members):
            out.append(
                [
                    name,
                    self.lhs[i].mean,
                    self.lhs[i].stderr,
                    self.rhs[i],
                    self.rhs_f1[i],
                    self.rhs_f2[i],
                ]
            )
        return out


def run_seminorm_domination(cfg: ExperimentConfig) -> DominationReport:
    """Ordering check: E_x[sup |W_N|^2] at the top N against the smaller of
    the two degree-(k+2) seminorm estimates, over an observable family.

    Only the rank correlation is meaningful (the domination constant is
    unknown), so the report carries Spearman's rho across the family.
    """
    if len(cfg.family) < 3:
        raise InputError("observable family needs at least 3 members")
    sched = cfg.resolved_schedule()
    top = sched[-1]
    points = sample_initial_points(cfg.system, cfg.samples, cfg.seed)
    sem_points = points[: min(8, len(points))]
    k_sem = cfg.degree + 2
    budget = cfg.budget()
    f2 = catalog_lookup(cfg.f2)

    def sem_sq(f: Observable) -> float:
        vals = [
            ghk_estimate(cfg.system, x, f, k_sem, top, cfg.h_window).value
            for x in sem_points
        ]
        return float(np.mean(vals)) ** 2

    lhs_list, rhs_list, r1_list, r2_list = [], [], [], []
    rhs_f2_sq = sem_sq(f2)
    for name in cfg.family:
        f1 = catalog_lookup(name)

        def task(x: StatePoint, f1=f1):
            w = weight_sequence(cfg.system, x, f1, f2, cfg.a, cfg.b, top)
            if cfg.degree == 1:
                scan = sup_linear_fft(w, top, cfg.oversample)
            else:
                scan = sup_poly_grid(w, top, cfg.degree, budget, threads=1)
            return scan.sup_value**2

        per_point = np.array(parallel_map(task, points))
        rhs_f1_sq = sem_sq(f1)
        lhs_list.append(MonteCarloIntegral(f"sup2[{name}]", per_point))
        r1_list.append(rhs_f1_sq)
        r2_list.append(rhs_f2_sq)
        rhs_list.append(min(rhs_f1_sq, rhs_f2_sq))
    rho = float(_st.spearmanr([m.mean for m in lhs_list], rhs_list).statistic)
    return DominationReport(
        members=list(cfg.family),
        lhs=lhs_list,
        rhs=rhs_list,
        rhs_f1=r1_list,
        rhs_f2=r2_list,
        spearman=rho,
        seminorm_degree=k_sem,
    )


# ---------------------------------------------------------------------------
# convergence on structured systems


@dataclass
class ConvergenceReport:
    schedule: tuple[int, ...]
    phase_labels: list[str]
    diffs: np.ndarray  # (points, phases, doublings) |W_next - W_prev|
    tolerance: float

    def final_pass_share(self, phase_idx: int) -> float:
        return float(np.mean(self.diffs[:, phase_idx, -1] <= self.tolerance))

    def flagged(self) -> list[tuple[int, int]]:
        """(point, phase) pairs whose final Cauchy difference exceeds tol."""
        bad = np.argwhere(self.diffs[:, :, -1] > self.tolerance)
        return [tuple(map(int, row)) for row in bad]

    def rows(self) -> list[list]:
        out = []
        pts, phs, dbl = self.diffs.shape
        for i in range(pts):
            for j in range(phs):
                for d in range(dbl):
                    out.append([i, j, self.schedule[d + 1], self.diffs[i, j, d]])
        return out


def run_convergence_experiment(cfg: ExperimentConfig) -> ConvergenceReport:
    """Cauchy differences |W_2N - W_N| along the schedule, per point and
    phase, on a structured system."""
    if cfg.system.kind == BERNOULLI:
        raise InputError("convergence recipe expects a structured (torus) system")
    if not cfg.phases:
        raise InputError("convergence recipe needs a fixed phase list")
    sched = cfg.resolved_schedule()
    if len(sched) < 2:
        raise InputError("schedule needs at least two truncations")
    phases = [PolynomialPhase.parse(s) for s in cfg.phases]
    points = sample_initial_points(cfg.system, cfg.samples, cfg.seed)

    def task(x: StatePoint):
        w = _weights_for_point(cfg, x, sched[-1])
        rows = []
        for p in phases:
            series = ww_average(w, p, sched)
            rows.append(np.abs(np.diff(series.values)))
        return np.array(rows)

    results = parallel_map(task, points)
    diffs = np.stack(results)  # (points, phases, doublings)
    return ConvergenceReport(
        schedule=sched,
        phase_labels=[p.label() for p in phases],
        diffs=diffs,
        tolerance=cfg.tolerance,
    )


# ---------------------------------------------------------------------------
# maximal inequality


@dataclass
class MaximalReport:
    observable: str
    lhs: float
    f_norm: float
    ratio: float
    rel_margin: float
    bound: float
    passed: bool

    def rows(self) -> list[list]:
        return [
            [
                self.observable,
                self.lhs,
                self.f_norm,
                self.ratio,
                self.rel_margin,
                self.bound,
                int(self.passed),
            ]
        ]


def run_maximal_inequality_check(
    system: SystemSpec,
    f: Observable,
    n_max: int,
    samples: int,
    seed: int,
) -> MaximalReport:
    """Monte-Carlo check of the alpha = 2 maximal bound.

    LHS is the L2 norm over sampled x of max_{N <= n_max} of the running
    averages of |f| along the orbit; it is compared against 2 ||f||_2 with a
    3-standard-error guard band on the ratio.
    """
    points = sample_initial_points(system, samples, seed)

    def task(x: StatePoint):
        table = orbit(system, x, 1, n_max + 1)
        vals = np.abs(evaluate_along(table, f))[1:]
        running = np.cumsum(vals) / np.arange(1, n_max + 1)
        return float(np.max(running) ** 2), float(np.mean(vals**2))

    results = parallel_map(task, points)
    max_sq = np.array([r[0] for r in results])
    norm_sq = np.array([r[1] for r in results])
    lhs = float(np.sqrt(np.mean(max_sq)))
    f_norm = float(np.sqrt(np.mean(norm_sq)))
    if f_norm == 0.0:
        return MaximalReport(f.name, lhs, f_norm, 0.0, 0.0, 0.0, lhs == 0.0)
    rel = 0.0
    if samples > 1:
        rel_lhs = float(np.std(max_sq, ddof=1) / np.sqrt(samples)) / max(np.mean(max_sq), 1e-300)
        rel_nrm = float(np.std(norm_sq, ddof=1) / np.sqrt(samples)) / max(np.mean(norm_sq), 1e-300)
        rel = 0.5 * (rel_lhs + rel_nrm)  # half: the ratio involves square roots
    ratio = lhs / f_norm
    bound = 2.0 * (1.0 + 3.0 * rel)
    return MaximalReport(f.name, lhs, f_norm, ratio, rel, bound, ratio <= bound)


# ---------------------------------------------------------------------------
# return-time averages


def _torus_power_coords(system: SystemSpec, y: StatePoint, powers: np.ndarray):
    """Coordinates of T^m(y) for an int64 array of powers m (closed forms)."""
    mu = powers.astype(np.int64).view(_U64)
    if system.kind == ROTATION:
        return (_U64(y.coords[0].frac) + mu * _U64(system.alpha.frac),)
    if system.kind == ANZAI_SKEW:
        prod = powers * (powers - 1)
        if prod.size and (np.abs(powers).max() > (1 << 31)):
            c2 = np.array(
                [(int(m) * (int(m) - 1) // 2) & MASK for m in powers], dtype=_U64
            )
        else:
            c2 = (prod // 2).astype(np.int64).view(_U64)
        x0 = _U64(y.coords[0].frac)
        a = _U64(system.alpha.frac)
        xs = x0 + mu * a
        ys = _U64(y.coords[1].frac) + mu * x0 + c2 * a
        return (xs, ys)
    raise UnsupportedError(f"return-time powers not supported on {system.kind}")


def _states_at_powers(system: SystemSpec, y: StatePoint, powers: np.ndarray) -> OrbitTable:
    if system.kind == BERNOULLI:
        if powers.size and int(powers.min()) < 0:
            raise InputError("one-sided shift: polynomial powers must stay >= 0")
        offsets = (_U64(y.cursor.offset & MASK) + powers.astype(np.int64).view(_U64))
        bits = K.bit_stream(y.cursor.seed, offsets)
        return OrbitTable(system, y, 1, len(powers), bits=bits)
    if system.kind == HEISENBERG:
        raise UnsupportedError("return-time powers not supported on heisenberg")
    coords = _torus_power_coords(system, y, powers)
    return OrbitTable(system, y, 1, len(powers), coords=coords)


def _int_poly_values(coeffs: Sequence[int], n_max: int) -> np.ndarray:
    """p(n) for n = 1..n_max with integer coefficients, exact in int64."""
    for c in coeffs:
        if not isinstance(c, (int, np.integer)):
            raise InputError("return-time polynomial needs integer coefficients")
    n = np.arange(1, n_max + 1, dtype=np.int64)
    bound = sum(abs(int(c)) * n_max ** (j + 1) for j, c in enumerate(coeffs))
    if bound >= 1 << 62:
        raise InputError("polynomial values overflow the supported range")
    out = np.zeros(n_max, dtype=np.int64)
    for c in reversed(coeffs):
        out = out * n + np.int64(int(c))
    return out * n


@dataclass
class ReturnTimeReport:
    schedule: tuple[int, ...]
    l2_diffs: np.ndarray  # (points_x, doublings): ||V_2N - V_N||_{L2(nu)} per x
    mean_diffs: np.ndarray  # mean over x per doubling

    def rows(self) -> list[list]:
        out = []
        for d in range(self.l2_diffs.shape[1]):
            col = self.l2_diffs[:, d]
            out.append(
                [
                    self.schedule[d + 1],
                    float(self.mean_diffs[d]),
                    float(np.min(col)),
                    float(np.max(col)),
                ]
            )
        return out


def run_return_time_experiment(cfg: ExperimentConfig) -> ReturnTimeReport:
    """Two-system weighted averages V_N(y) = (1/N) sum u_n(x) g(S^p(n) y).

    For each sampled x the report carries the Monte-Carlo L2(nu) Cauchy
    differences ||V_2N - V_N|| along the schedule (nu sampled by y points).
    The polynomial must have integer coefficients so S^p(n) is a group
    element; the exponent may go negative only on invertible torus systems.
    """
    if cfg.return_system is None:
        raise InputError("return-time recipe needs a second system")
    sched = cfg.resolved_schedule()
    if len(sched) < 2:
        raise InputError("schedule needs at least two truncations")
    top = sched[-1]
    powers = _int_poly_values(cfg.return_poly, top)
    g = catalog_lookup(cfg.return_g)
    xs = sample_initial_points(cfg.system, cfg.samples, cfg.seed)
    y_seed = int(K.mix64(cfg.seed, np.array([0], dtype=_U64))[0])
    ys = sample_initial_points(cfg.return_system, cfg.samples_y, y_seed)
    g_vals = [
        evaluate_along(_states_at_powers(cfg.return_system, y, powers), g) for y in ys
    ]

    def task(x: StatePoint):
        w = _weights_for_point(cfg, x, top)
        u = w.values
        diffs_sq = np.zeros((len(ys), len(sched) - 1))
        for yi, gv in enumerate(g_vals):
            series = ww_average(
                WeightSequence(
                    system_label=w.system_label,
                    f1_label=w.f1_label,
                    f2_label=w.f2_label,
                    a=w.a,
                    b=w.b,
                    n_max=top,
                    _values=u * gv,
                ),
                PolynomialPhase.zero(),
                sched,
            )
            diffs_sq[yi] = np.abs(np.diff(series.values)) ** 2
        return np.sqrt(np.mean(diffs_sq, axis=0))

    results = parallel_map(task, xs)
    l2 = np.stack(results)
    return ReturnTimeReport(
        schedule=sched, l2_diffs=l2, mean_diffs=np.mean(l2, axis=0)
    )


# ---------------------------------------------------------------------------
# persistence


def _fmt(cell) -> str:
    if isinstance(cell, (float, np.floating)):
        return repr(float(cell))  # shortest round-trip form
    if isinstance(cell, np.integer):
        return str(int(cell))
    return str(cell)


def write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(c) for c in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_series_csv(path: Path, schedule, values) -> None:
    rows = [
        [n, v.real, v.imag, abs(v)] for n, v in zip(schedule, np.asarray(values))
    ]
    write_csv(path, ["N", "re", "im", "modulus"], rows)


def write_supscan_csv(path: Path, scan) -> None:
    if scan.scan is not None:
        rows = list(zip(scan.scan_axis, scan.scan))
        write_csv(path, ["grid_point", "value"], rows)
    else:
        write_csv(
            path,
            [f"c{j}" for j in range(2, scan.k + 1)] + ["value"],
            scan.cells,
        )


def hash_of_config(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def write_manifest(
    path: Path,
    config_hash: str,
    config: dict,
    seed: int,
    outputs: list[str],
    wall_time: float,
    extras: dict,
) -> None:
    manifest = {
        "config_hash": config_hash,
        "config": config,
        "seed": seed,
        "versions": {
            "wwlab": __version__,
            "python": sys.version.split()[0],
            "numpy": np.__version__,
        },
        "backend": K.NAME,
        "threads": thread_cap(),
        "wall_time_s": wall_time,
        "outputs": outputs,
        **extras,
    }
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def write_plot_script(
    path: Path, csv_name: str, ylabel: str, using: str = "1:2", logx: bool = True
) -> None:
    lines = [
        "set datafile separator ','",
        "set key off",
        "set xlabel 'N'",
        f"set ylabel '{ylabel}'",
    ]
    if logx:
        lines.append("set logscale x 2")
    lines.append(f"plot '{csv_name}' every ::1 using {using} with linespoints")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def run_experiment(cfg: ExperimentConfig) -> tuple[dict, list[Path]]:
    """Dispatch one experiment, write its artifacts, return (summary, paths).

    Artifacts: <hash>.<kind>.csv, <hash>.manifest.json, <hash>.plot.gp.
    """
    if cfg.kind not in EXPERIMENT_KINDS:
        raise InputError(f"unknown experiment kind {cfg.kind!r}")
    outdir = Path(cfg.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    h = cfg.config_hash()
    started = time.perf_counter()
    stem = cfg.kind.replace("-", "_")
    csv_path = outdir / f"{h}.{stem}.csv"
    extras: dict = {"kind": cfg.kind}
    summary: dict = {"config_hash": h, "kind": cfg.kind}

    if cfg.kind == "uniformity":
        rep = run_uniformity_experiment(cfg)
        write_csv(
            csv_path,
            ["N", "mean_sup2", "stderr", "min", "max", "rigor_mean"],
            rep.rows(),
        )
        extras["expected_decay"] = rep.expected_decay
        extras["rigorous"] = rep.rigorous
        summary["final_mean_sup2"] = rep.integrals[-1].mean
        plot_using = "1:2"
        ylabel = "mean sup^2"
    elif cfg.kind == "domination":
        rep = run_seminorm_domination(cfg)
        write_csv(
            csv_path,
            ["member", "lhs_mean", "lhs_stderr", "rhs_min_seminorm2", "seminorm2_f1", "seminorm2_f2"],
            rep.rows(),
        )
        extras["spearman"] = rep.spearman
        extras["seminorm_degree"] = rep.seminorm_degree
        summary["spearman"] = rep.spearman
        plot_using = "2:4"
        ylabel = "min seminorm^2 vs mean sup^2"
    elif cfg.kind == "convergence":
        rep = run_convergence_experiment(cfg)
        write_csv(csv_path, ["point", "phase", "N", "abs_diff"], rep.rows())
        shares = {
            lab: rep.final_pass_share(i) for i, lab in enumerate(rep.phase_labels)
        }
        extras["final_pass_share"] = shares
        extras["tolerance"] = rep.tolerance
        summary["final_pass_share"] = shares
        summary["flagged"] = len(rep.flagged())
        plot_using = "3:4"
        ylabel = "|W_2N - W_N|"
    elif cfg.kind == "maximal":
        rep = run_maximal_inequality_check(
            cfg.system, catalog_lookup(cfg.observable), cfg.n_max, cfg.samples, cfg.seed
        )
        write_csv(
            csv_path,
            ["observable", "lhs", "f_norm", "ratio", "rel_margin", "bound", "passed"],
            rep.rows(),
        )
        summary["ratio"] = rep.ratio
        summary["passed"] = rep.passed
        extras["passed"] = rep.passed
        plot_using = "4:6"
        ylabel = "ratio vs bound"
    else:  # return-time
        rep = run_return_time_experiment(cfg)
        write_csv(csv_path, ["N", "mean_l2_diff", "min", "max"], rep.rows())
        summary["mean_diffs"] = [float(v) for v in rep.mean_diffs]
        plot_using = "1:2"
        ylabel = "||V_2N - V_N||_2"

    wall = time.perf_counter() - started
    plot_path = outdir / f"{h}.plot.gp"
    write_plot_script(plot_path, csv_path.name, ylabel, using=plot_using)
    manifest_path = outdir / f"{h}.manifest.json"
    write_manifest(
        manifest_path,
        h,
        cfg.canonical(),
        cfg.seed,
        [csv_path.name, plot_path.name],
        wall,
        extras,
    )
    summary["outputs"] = [str(csv_path), str(manifest_path), str(plot_path)]
    summary["report"] = rep
    return summary, [csv_path, manifest_path, plot_path]
