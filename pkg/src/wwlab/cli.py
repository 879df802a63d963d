"""Batch command-line interface.

Subcommands: orbit, average, sup-ww, seminorm, vdc-check, experiment.
Every run writes its outputs under a config-hash file stem together with a
run manifest.  Exit codes: 0 success, 1 input error, 2 assertion or
experiment failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from .averages import (
    geometric_schedule,
    single_orbit_weights,
    sup_linear_fft,
    sup_poly_grid,
    weight_sequence,
    ww_average,
)
from .errors import CatalogError, GridBudgetExceeded, InputError
from .fixedpoint import CirclePoint, frac_to_hex, parse_frac
from .harness import (
    ExperimentConfig,
    hash_of_config,
    run_experiment,
    write_csv,
    write_manifest,
    write_plot_script,
    write_series_csv,
    write_supscan_csv,
)
from .observables import catalog_lookup
from .phases import PolynomialPhase
from .seminorms import seminorm_ladder
from .systems import (
    ANZAI_SKEW,
    BERNOULLI,
    BitCursor,
    StatePoint,
    SystemSpec,
    orbit,
    sample_initial_points,
)
from .vdc import vdc_bound

SLACK_FLOOR = -1e-9


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; the contract here is usage text + exit 1
    def error(self, message):
        raise _UsageError(message)


def _add_system_flags(sp) -> None:
    sp.add_argument(
        "--system",
        default="rotation",
        choices=["rotation", "anzai", "anzai_skew", "bernoulli", "heisenberg"],
    )
    sp.add_argument("--alpha", help="circle point: p/q, decimal, 0x.., or named (golden, sqrt2)")
    sp.add_argument("--alpha-num", type=int, help="alpha numerator (with --alpha-den)")
    sp.add_argument("--alpha-den", type=int, help="alpha denominator")
    sp.add_argument("--beta", help="second angle (heisenberg)")
    sp.add_argument("--beta-num", type=int)
    sp.add_argument("--beta-den", type=int)
    sp.add_argument("--label", default="")
    sp.add_argument("--start", help="start point coordinates, comma separated")
    sp.add_argument("--cursor-seed", type=int, help="bit-stream seed of the start point (bernoulli)")


def _angle(args, name: str) -> CirclePoint | None:
    text = getattr(args, name)
    num = getattr(args, f"{name}_num")
    den = getattr(args, f"{name}_den")
    if num is not None or den is not None:
        if num is None or den is None:
            raise InputError(f"--{name}-num and --{name}-den go together")
        return CirclePoint.from_ratio(num, den)
    if text is not None:
        return CirclePoint.parse(text)
    return None


def _system_from_args(args) -> SystemSpec:
    kind = {"anzai": ANZAI_SKEW}.get(args.system, args.system)
    return SystemSpec(kind, alpha=_angle(args, "alpha"), beta=_angle(args, "beta"), label=args.label)


def _start_point(args, system: SystemSpec, seed: int) -> StatePoint:
    if system.kind == BERNOULLI:
        cseed = args.cursor_seed if args.cursor_seed is not None else seed
        return StatePoint(cursor=BitCursor(cseed, 0))
    if args.start:
        coords = tuple(CirclePoint(parse_frac(tok)) for tok in args.start.split(","))
        if len(coords) != system.dim:
            raise InputError(f"{system.kind} needs {system.dim} start coordinate(s)")
        return StatePoint(coords=coords)
    return StatePoint(coords=(CirclePoint(0),) * system.dim)


def build_parser() -> _Parser:
    p = _Parser(prog="wwlab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("orbit", help="sample an exact orbit to CSV")
    _add_system_flags(sp)
    sp.add_argument("--stride", type=int, default=1)
    sp.add_argument("--length", type=int, default=64)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--outdir", default="runs")

    sp = sub.add_parser("average", help="running weighted averages over a schedule")
    _add_system_flags(sp)
    sp.add_argument("--f1", default="const_one")
    sp.add_argument("--f2", default="const_one")
    sp.add_argument("--a", type=int, default=1)
    sp.add_argument("--b", type=int, default=2)
    sp.add_argument("--p", default="", help="phase coefficients c1,c2,... (empty = zero phase)")
    sp.add_argument("--n-max", type=int, default=1 << 12)
    sp.add_argument("--schedule-start", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--outdir", default="runs")

    sp = sub.add_parser("sup-ww", help="supremum of |W_N| over a phase family")
    _add_system_flags(sp)
    sp.add_argument("--f1", default="const_one")
    sp.add_argument("--f2", default="const_one")
    sp.add_argument("--a", type=int, default=1)
    sp.add_argument("--b", type=int, default=2)
    sp.add_argument("--n", type=int, default=1 << 10)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--oversample", type=int, default=4)
    sp.add_argument("--grid", type=int, default=64)
    sp.add_argument("--levels", type=int, default=2)
    sp.add_argument("--max-evals", type=int, default=1 << 16)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--outdir", default="runs")

    sp = sub.add_parser("seminorm", help="seminorm estimate ladder over sampled points")
    _add_system_flags(sp)
    sp.add_argument("--f", default="const_one")
    sp.add_argument("--k-max", type=int, default=2)
    sp.add_argument("--n", type=int, default=1 << 12)
    sp.add_argument("--h-window", type=int, default=1 << 6)
    sp.add_argument("--samples", type=int, default=4)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--outdir", default="runs")

    sp = sub.add_parser("vdc-check", help="finite two-sided inequality checks")
    sp.add_argument("--random", action="store_true", help="generate random trials")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--csv", help="CSV of complex values (columns re,im)")
    sp.add_argument("--h", type=int, help="window for --csv input (default N//2)")
    sp.add_argument("--out", help="also write the JSON lines to this file")

    sp = sub.add_parser("experiment", help="run a recipe from a TOML config")
    sp.add_argument("--config", required=True)
    sp.add_argument("--kind", choices=["uniformity", "domination", "convergence", "maximal", "return-time"])
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--outdir")
    sp.add_argument("--n-max", type=int)
    sp.add_argument("--f1", help="override the first observable")
    sp.add_argument("--f2", help="override the second observable")
    sp.add_argument("--g", dest="return_g", help="override the return-time observable")
    sp.add_argument("--observable", help="override the maximal-inequality observable")

    return p


def _cmd_orbit(args) -> int:
    system = _system_from_args(args)
    x = _start_point(args, system, args.seed)
    table = orbit(system, x, args.stride, args.length)
    config = {
        "command": "orbit",
        "system": system.to_json_dict(),
        "stride": args.stride,
        "length": args.length,
        "seed": args.seed,
    }
    h = hash_of_config(config)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    started = time.perf_counter()
    csv_path = outdir / f"{h}.orbit.csv"
    if table.bits is not None:
        rows = [[i, args.stride * i, int(b)] for i, b in enumerate(table.bits)]
        write_csv(csv_path, ["i", "step", "bit"], rows)
    else:
        d = len(table.coords)
        header = ["i", "step"]
        for c in range(d):
            header += [f"c{c}_hex", f"c{c}"]
        rows = []
        for i in range(len(table)):
            row: list = [i, args.stride * i]
            for c in range(d):
                frac = int(table.coords[c][i])
                row += [frac_to_hex(frac), frac / 2.0**64]
            rows.append(row)
        write_csv(csv_path, header, rows)
    write_manifest(
        outdir / f"{h}.manifest.json",
        h,
        config,
        args.seed,
        [csv_path.name],
        time.perf_counter() - started,
        {"kind": "orbit"},
    )
    print(f"wrote {csv_path}")
    return 0


def _cmd_average(args) -> int:
    system = _system_from_args(args)
    x = _start_point(args, system, args.seed)
    f1 = catalog_lookup(args.f1)
    f2 = catalog_lookup(args.f2)
    p = PolynomialPhase.parse(args.p)
    if args.a == args.b:
        print(
            "note: equal strides collapse the two orbits; computing the "
            "single-orbit mode with the product observable",
            file=sys.stderr,
        )
        w = single_orbit_weights(system, x, f1, f2, args.a, args.n_max)
    else:
        w = weight_sequence(system, x, f1, f2, args.a, args.b, args.n_max)
    sched = geometric_schedule(args.n_max, args.schedule_start)
    series = ww_average(w, p, sched)
    config = {
        "command": "average",
        "system": system.to_json_dict(),
        "f1": args.f1,
        "f2": args.f2,
        "a": args.a,
        "b": args.b,
        "p": p.to_json_dict(),
        "n_max": args.n_max,
        "schedule_start": args.schedule_start,
        "seed": args.seed,
    }
    h = hash_of_config(config)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    started = time.perf_counter()
    csv_path = outdir / f"{h}.average.csv"
    write_series_csv(csv_path, series.schedule, series.values)
    plot_path = outdir / f"{h}.plot.gp"
    write_plot_script(plot_path, csv_path.name, "|W_N|", using="1:4")
    write_manifest(
        outdir / f"{h}.manifest.json",
        h,
        config,
        args.seed,
        [csv_path.name, plot_path.name],
        time.perf_counter() - started,
        {"kind": "average"},
    )
    for n, v in zip(series.schedule, series.values):
        print(f"N={n} W_N={float(v.real)!r}{float(v.imag):+}j |W_N|={float(abs(v))!r}")
    print(f"wrote {csv_path}")
    return 0


def _cmd_sup_ww(args) -> int:
    system = _system_from_args(args)
    x = _start_point(args, system, args.seed)
    f1 = catalog_lookup(args.f1)
    f2 = catalog_lookup(args.f2)
    w = weight_sequence(system, x, f1, f2, args.a, args.b, args.n)
    from .averages import GridBudget

    if args.k == 1:
        keep = args.oversample * args.n <= 1 << 20
        scan = sup_linear_fft(w, args.n, args.oversample, keep_scan=keep)
    else:
        budget = GridBudget(
            grid=args.grid, levels=args.levels, max_evals=args.max_evals, oversample=args.oversample
        )
        scan = sup_poly_grid(w, args.n, args.k, budget, keep_cells=True)
    config = {
        "command": "sup-ww",
        "system": system.to_json_dict(),
        "f1": args.f1,
        "f2": args.f2,
        "a": args.a,
        "b": args.b,
        "n": args.n,
        "k": args.k,
        "oversample": args.oversample,
        "grid": args.grid,
        "levels": args.levels,
        "seed": args.seed,
    }
    h = hash_of_config(config)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    started = time.perf_counter()
    csv_path = outdir / f"{h}.sup_ww.csv"
    write_supscan_csv(csv_path, scan)
    write_manifest(
        outdir / f"{h}.manifest.json",
        h,
        config,
        args.seed,
        [csv_path.name],
        time.perf_counter() - started,
        {"kind": "sup-ww", "scan": scan.to_json_dict()},
    )
    print(
        f"sup={scan.sup_value!r} argmax={scan.argmax} "
        f"rigor_bound={scan.rigor_bound!r} rigorous={scan.rigorous}"
    )
    print(f"wrote {csv_path}")
    return 0


def _cmd_seminorm(args) -> int:
    system = _system_from_args(args)
    f = catalog_lookup(args.f)
    points = sample_initial_points(system, args.samples, args.seed)
    records = []
    for i, x in enumerate(points):
        for est in seminorm_ladder(system, x, f, args.k_max, args.n, args.h_window):
            rec = est.to_json_dict()
            rec["seed"] = args.seed
            rec["point"] = i
            records.append(rec)
    config = {
        "command": "seminorm",
        "system": system.to_json_dict(),
        "f": args.f,
        "k_max": args.k_max,
        "n": args.n,
        "h_window": args.h_window,
        "samples": args.samples,
        "seed": args.seed,
    }
    h = hash_of_config(config)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    started = time.perf_counter()
    out_path = outdir / f"{h}.seminorm.jsonl"
    out_path.write_text(
        "".join(json.dumps(r, sort_keys=True) + "\n" for r in records), encoding="utf-8"
    )
    write_manifest(
        outdir / f"{h}.manifest.json",
        h,
        config,
        args.seed,
        [out_path.name],
        time.perf_counter() - started,
        {"kind": "seminorm"},
    )
    for r in records:
        print(json.dumps(r, sort_keys=True))
    return 0


def _cmd_vdc_check(args) -> int:
    reports = []
    if args.csv:
        data = np.loadtxt(args.csv, delimiter=",", skiprows=1, ndmin=2)
        vals = data[:, 0] + 1j * (data[:, 1] if data.shape[1] > 1 else 0.0)
        h = args.h if args.h is not None else len(vals) // 2
        reports.append(vdc_bound(vals, h))
    elif args.random:
        rng = np.random.default_rng(args.seed)
        for _ in range(args.trials):
            n = int(rng.integers(8, 513))
            h = int(rng.integers(0, n))
            r = np.sqrt(rng.random(n))
            theta = rng.random(n)
            reports.append(vdc_bound(r * np.exp(2j * np.pi * theta), h))
    else:
        raise InputError("vdc-check needs --random or --csv")
    lines = [json.dumps(r.to_json_dict(), sort_keys=True) for r in reports]
    for line in lines:
        print(line)
    if args.out:
        Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    worst = min(r.slack for r in reports)
    if worst < SLACK_FLOOR:
        print(f"FAIL: slack {worst!r} below {SLACK_FLOOR!r}", file=sys.stderr)
        return 2
    return 0


def _cmd_experiment(args) -> int:
    path = Path(args.config)
    if not path.exists():
        raise FileNotFoundError(f"config file not found: {path}")
    cfg = ExperimentConfig.from_toml(path)
    overrides = ("kind", "samples", "seed", "outdir", "n_max", "f1", "f2", "return_g", "observable")
    for field_name in overrides:
        value = getattr(args, field_name, None)
        if value is not None:
            setattr(cfg, field_name, value)
    summary, _paths = run_experiment(cfg)
    printable = {k: v for k, v in summary.items() if k != "report"}
    print(json.dumps(printable, sort_keys=True, default=str))
    if cfg.kind == "maximal" and not summary.get("passed", True):
        return 2
    return 0


_COMMANDS = {
    "orbit": _cmd_orbit,
    "average": _cmd_average,
    "sup-ww": _cmd_sup_ww,
    "seminorm": _cmd_seminorm,
    "vdc-check": _cmd_vdc_check,
    "experiment": _cmd_experiment,
}


def cli_dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InputError, CatalogError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GridBudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        if exc.partial is not None:
            print(f"incumbent sup={exc.partial.sup_value!r} at {exc.partial.argmax}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
