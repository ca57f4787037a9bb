"""Compare the numba kernels with their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--primes 13 19 23] [--repeat 3]

Both paths are called directly, so one process times both and checks that they
return identical arrays.  The first numba call per signature includes JIT
compilation and is reported separately.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from invbundles import _kernels as K
from invbundles._accel import NUMBA_ENABLED


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def bench_conjugation(p, repeat):
    elems = K.enumerate_sl2(p)
    lookup = np.full(p ** 4, -1, dtype=np.int64)
    codes = ((elems[:, 0] * p + elems[:, 1]) * p + elems[:, 2]) * p + elems[:, 3]
    lookup[codes] = np.arange(len(elems))
    t0 = time.perf_counter()
    K._labels_union_find(elems, lookup, p, False)
    first = time.perf_counter() - t0
    tn, a = _best(lambda: K._labels_union_find(elems, lookup, p, False), repeat)
    tp, b = _best(lambda: K._labels_propagate(elems, lookup, p, False), repeat)
    return first, tn, tp, bool(np.array_equal(a, b))


def bench_gram(rows, positions, terms, M, repeat, seed=0):
    rng = np.random.default_rng(seed)
    counts = rng.integers(0, terms + 1, size=rows * positions)
    ptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    exps = rng.integers(0, M, size=ptr[-1]).astype(np.int64)
    coefs = rng.integers(-3, 4, size=ptr[-1]).astype(np.int64)
    w = rng.integers(1, 50, size=positions).astype(np.int64)
    args = (ptr, exps, coefs, ptr, exps, coefs, w, rows, rows, positions, M)
    t0 = time.perf_counter()
    K._gram_numba(*args)
    first = time.perf_counter() - t0
    tn, a = _best(lambda: K._gram_numba(*args), repeat)
    tp, b = _best(lambda: K._gram_numpy(*args), repeat)
    return first, tn, tp, bool(np.array_equal(a, b))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=[13, 19, 23])
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args(argv)
    if not NUMBA_ENABLED:
        print("note: INVBUNDLES_DISABLE_NUMBA is set; the 'numba' column runs the Python fallback of njit")
    print(f"{'kernel':<28}{'first call':>12}{'numba':>12}{'numpy':>12}{'speedup':>10}  equal")
    for p in a.primes:
        first, tn, tp, eq = bench_conjugation(p, a.repeat)
        print(f"{'conjugation_labels p=' + str(p):<28}{first:>12.4f}{tn:>12.4f}{tp:>12.4f}{tp / tn:>10.1f}  {eq}")
    for rows, pos, terms, M in ((12, 20, 6, 168), (24, 40, 10, 660), (40, 60, 12, 1092)):
        first, tn, tp, eq = bench_gram(rows, pos, terms, M, a.repeat)
        label = f"gram_accumulate {rows}x{pos} M={M}"
        print(f"{label:<28}{first:>12.4f}{tn:>12.4f}{tp:>12.4f}{tp / tn:>10.1f}  {eq}")


if __name__ == "__main__":
    main()
