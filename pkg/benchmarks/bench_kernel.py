#!/usr/bin/env python3
"""Time the pure-Python and compiled arithmetic kernels on one workload.

Runs three tiers -- raw coefficient-dict multiplies, truncated series
multiplies, and a full loop-count computation -- once per available
kernel, with a fixed seed so both sides see byte-identical inputs.

Usage: python3 benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import random
import time

from flowloop import _kernel, parse_braid
from flowloop.zhat import phi_homogeneous, phi_positive


def laurent(rng, size=8, span=12):
    return {
        rng.randrange(-span, span + 1): rng.randrange(-99, 100) or 1
        for _ in range(size)
    }


def xseries(rng, width=6):
    return {2 * k: laurent(rng) for k in range(width)}


def bench_raw(kernel, rng, rounds):
    pairs = [(laurent(rng), laurent(rng)) for _ in range(rounds)]
    t0 = time.perf_counter()
    for a, b in pairs:
        kernel.ql_mul(a, b)
    return time.perf_counter() - t0


def bench_series(kernel, rng, rounds):
    pairs = [(xseries(rng), xseries(rng)) for _ in range(rounds)]
    t0 = time.perf_counter()
    for a, b in pairs:
        kernel.xs_mul(a, b, 8)
    return time.perf_counter() - t0


def bench_end_to_end():
    fig8 = parse_braid("1 -2 1 -2")
    wide = parse_braid("n=4; 1 -2 1 -3 -2")
    t0 = time.perf_counter()
    phi_homogeneous(fig8, 8, stabilize=False)
    phi_homogeneous(wide, 6, stabilize=False)
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3,
                    help="best-of-N timing (default 3)")
    args = ap.parse_args()

    names = _kernel.available()
    start = _kernel.active_name
    results = {}
    try:
        for name in names:
            kernel = _kernel.set_active(name)
            rows = {}
            for label, fn in (
                ("ql_mul x20000", lambda: bench_raw(
                    kernel, random.Random(11), 20000)),
                ("xs_mul x2000", lambda: bench_series(
                    kernel, random.Random(13), 2000)),
                ("phi fig8@8 + 5-crossing B4@6", bench_end_to_end),
            ):
                rows[label] = min(fn() for _ in range(args.repeat))
            results[name] = rows
    finally:
        _kernel.set_active(start)

    width = max(len(label) for rows in results.values() for label in rows)
    for name, rows in results.items():
        print(f"kernel {name}:")
        for label, dt in rows.items():
            print(f"  {label:<{width}}  {dt * 1000:9.2f} ms")
    if {"py", "c"} <= set(results):
        print("speedup c vs py:")
        for label in results["py"]:
            ratio = results["py"][label] / max(results["c"][label], 1e-9)
            print(f"  {label:<{width}}  {ratio:6.2f}x")


if __name__ == "__main__":
    main()
