#!/usr/bin/env python3
"""Benchmark the compiled kernel extension against the numpy fallback.

Times each hot kernel on representative sizes plus one end-to-end supremum
scan, and prints a side-by-side table.  Run after building the extension:

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --quick
"""

import argparse
import time

import numpy as np

from wwlab.averages import WeightSequence, sup_linear_fft
from wwlab.backend import available_backends


def _best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _cases(quick: bool):
    n_big = 1 << 17 if quick else 1 << 20
    n_corr = 1 << 12 if quick else 1 << 14
    n_uk2 = 1 << 10 if quick else 1 << 12
    n_uk3 = 1 << 8 if quick else 1 << 9

    rng = np.random.default_rng(0)
    n_arr = np.arange(1, n_big + 1, dtype=np.uint64)
    coeffs = [int(c) for c in rng.integers(0, 2**64, 3, dtype=np.uint64)]
    a64 = rng.integers(0, 2**64, n_big, dtype=np.uint64)
    b64 = rng.integers(0, 2**64, n_big, dtype=np.uint64)
    idx = np.arange(n_big, dtype=np.uint64)
    z_corr = np.exp(2j * np.pi * rng.random(n_corr))
    z_uk2 = rng.choice([-1.0, 1.0], n_uk2).astype(complex)
    z_uk3 = rng.choice([-1.0, 1.0], n_uk3).astype(complex)

    return [
        (f"poly_eval_fracs deg=3 n={n_big}", lambda k: k.poly_eval_fracs(coeffs, n_arr)),
        (f"mul_round n={n_big}", lambda k: k.mul_round(a64, b64)),
        (f"bit_stream n={n_big}", lambda k: k.bit_stream(7, idx)),
        (f"shifted_corr N={n_corr} H={n_corr // 128}", lambda k: k.shifted_corr(z_corr, n_corr // 128)),
        (f"uk2_pow4 N={n_uk2}", lambda k: k.uk2_pow4(z_uk2)),
        (f"uk3_pow8 N={n_uk3}", lambda k: k.uk3_pow8(z_uk3)),
    ]


def _sup_scan_case(quick: bool):
    n = 1 << 14 if quick else 1 << 16
    rng = np.random.default_rng(1)
    fracs = rng.integers(0, 2**64, n, dtype=np.uint64)
    w = WeightSequence("bench", "f1", "f2", 1, 2, n, fracs=fracs)
    return f"sup_linear_fft N={n} (end to end)", lambda: sup_linear_fft(w, n, 4)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller sizes")
    parser.add_argument("--repeat", type=int, default=3, help="best-of repetitions")
    args = parser.parse_args()

    backends = available_backends()
    names = sorted(backends)
    if len(names) == 1:
        print("note: only the numpy fallback is importable; build the extension "
              "to compare (pip install -e . --no-build-isolation)")

    width = 44
    header = "kernel".ljust(width) + "".join(n.rjust(14) for n in names)
    if len(names) == 2:
        header += "speedup".rjust(10)
    print(header)
    print("-" * len(header))

    for label, call in _cases(args.quick):
        times = {}
        for name in names:
            kern = backends[name]
            call(kern)  # warm up
            times[name] = _best_of(lambda: call(kern), args.repeat)
        row = label.ljust(width) + "".join(f"{times[n] * 1e3:11.2f} ms" for n in names)
        if len(names) == 2:
            row += f"{times['python'] / times['compiled']:9.1f}x"
        print(row)

    label, call = _sup_scan_case(args.quick)
    call()
    t = _best_of(call, args.repeat)
    print(f"{label.ljust(width)}{t * 1e3:11.2f} ms   (active backend, fft-dominated)")


if __name__ == "__main__":
    main()
