#!/usr/bin/env python3
"""Benchmark the compiled exact kernel against the pure-Python fallback.

Times fraction-free Gauss-Jordan and exact matmul on random Gaussian-integer
matrices, plus one end-to-end intertwiner-space computation routed through
whichever kernel is selected.  Run:

    python3 benchmarks/bench_kernel.py
"""

import random
import time

from relpos import _gaussint

try:
    from relpos import _gaussint_c
except ImportError:
    _gaussint_c = None


def rand_matrix(rng, rows, cols, span):
    re = [rng.randint(-span, span) for _ in range(rows * cols)]
    im = [rng.randint(-span, span) for _ in range(rows * cols)]
    return re, im


def time_call(fn, *args, repeats=3):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_ffgj(sizes=((20, 20), (40, 40), (80, 80), (120, 160)), span=9):
    print(f"{'ffgj size':>12} {'span':>5} {'pure (s)':>10} {'cython (s)':>11} {'speedup':>8}")
    for rows, cols in sizes:
        rng = random.Random(rows * 1000 + cols)
        re, im = rand_matrix(rng, rows, cols, span)
        t_pure, out_pure = time_call(_gaussint.ffgj, re, im, rows, cols)
        if _gaussint_c is None:
            print(f"{rows}x{cols:>5} {span:>5} {t_pure:>10.4f} {'n/a':>11}")
            continue
        t_cy, out_cy = time_call(_gaussint_c.ffgj, re, im, rows, cols)
        assert out_pure == out_cy, "kernel twins disagree"
        print(
            f"{rows:>6}x{cols:<5} {span:>5} {t_pure:>10.4f} {t_cy:>11.4f} "
            f"{t_pure / t_cy:>7.2f}x"
        )


def bench_matmul(sizes=(30, 60, 100), span=50):
    print(f"\n{'matmul size':>12} {'span':>5} {'pure (s)':>10} {'cython (s)':>11} {'speedup':>8}")
    for n in sizes:
        rng = random.Random(n)
        are, aim = rand_matrix(rng, n, n, span)
        bre, bim = rand_matrix(rng, n, n, span)
        t_pure, out_pure = time_call(_gaussint.matmul, are, aim, n, n, bre, bim, n)
        if _gaussint_c is None:
            print(f"{n:>6}x{n:<5} {span:>5} {t_pure:>10.4f} {'n/a':>11}")
            continue
        t_cy, out_cy = time_call(_gaussint_c.matmul, are, aim, n, n, bre, bim, n)
        assert out_pure == out_cy
        print(
            f"{n:>6}x{n:<5} {span:>5} {t_pure:>10.4f} {t_cy:>11.4f} "
            f"{t_pure / t_cy:>7.2f}x"
        )


def bench_end_to_end():
    """Endomorphism algebra of a mid-size canonical system through the
    currently selected kernel (set RELPOS_PURE=1 to route the fallback)."""
    from relpos import kernel
    from relpos.catalog import build_gp4
    from relpos.gaussian import GQ
    from relpos.system import hom_space

    s = build_gp4("S(2k,0;l)", 4, GQ(2))
    t0 = time.perf_counter()
    hom = hom_space(s, s)
    dt = time.perf_counter() - t0
    print(
        f"\nend-to-end End(S(2k,0;l), k=4) via {kernel.backend_name()} kernel: "
        f"dim {hom.dim}, {dt:.4f}s"
    )


if __name__ == "__main__":
    if _gaussint_c is None:
        print("compiled kernel not built; timing the pure kernel only\n")
    bench_ffgj()
    bench_matmul()
    bench_end_to_end()
