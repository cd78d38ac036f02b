#!/usr/bin/env python3
"""Compare the jit-accelerated and plain-numpy backends on the hot kernels.

Two stages dominate runtime: the Eulerian cover walk inside compress() and
the suffix array construction behind the BWT. Both carry a compiled kernel
and a numpy fallback; this script times the same inputs on each and reports
medians plus the speedup.

Usage:
    python3 benchmarks/backend_benchmark.py [--sizes 100000,400000]
                                            [--k 16] [--repeat 3]
                                            [--csv results.csv]
"""
from __future__ import annotations

import argparse
import statistics
import sys
import time

import numpy as np

from kmerctr import KmerMultiset, compress, set_backend
from kmerctr._sa import suffix_array

BACKENDS = ("numba", "numpy")


def median_seconds(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def make_multiset(rng: np.random.Generator, k: int, n: int) -> KmerMultiset:
    codes = rng.integers(0, 4 ** k, size=n, dtype=np.int64)
    return KmerMultiset.from_codes(codes, k, "list")


def make_payload(rng: np.random.Generator, n: int) -> bytes:
    body = rng.integers(0, 4, size=n - 1, dtype=np.uint8)
    return bytes(np.frombuffer(b"ACGT", dtype=np.uint8)[body].tobytes()) + b"$"


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="100000,200000,400000",
                    help="comma-separated input sizes")
    ap.add_argument("--k", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--csv", default=None)
    args = ap.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    rng = np.random.default_rng(args.seed)

    # compile everything once so the jit rows time steady-state work
    warm = make_multiset(rng, args.k, 1000)
    warm_payload = make_payload(rng, 2000)
    for backend in BACKENDS:
        set_backend(backend)
        compress(warm, mode="list")
        suffix_array(warm_payload)

    rows = []
    for n in sizes:
        m = make_multiset(rng, args.k, n)
        payload = make_payload(rng, n)
        timings = {}
        for backend in BACKENDS:
            set_backend(backend)
            timings[backend] = (
                median_seconds(lambda: compress(m, mode="list"), args.repeat),
                median_seconds(lambda: suffix_array(payload), args.repeat),
            )
        for i, stage in enumerate(("cover pipeline", "suffix array")):
            nb, plain = timings["numba"][i], timings["numpy"][i]
            rows.append((stage, n, nb, plain, plain / nb))
    set_backend("auto")

    header = f"{'stage':<16} {'n':>9} {'numba s':>10} {'numpy s':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for stage, n, nb, plain, speed in rows:
        print(f"{stage:<16} {n:>9} {nb:>10.4f} {plain:>10.4f} {speed:>7.2f}x")

    if args.csv:
        with open(args.csv, "w", encoding="ascii") as fh:
            fh.write("stage,n,numba_s,numpy_s,speedup\n")
            for stage, n, nb, plain, speed in rows:
                fh.write(f"{stage},{n},{nb:.6f},{plain:.6f},{speed:.3f}\n")
        print(f"\nwrote {args.csv}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
