#!/usr/bin/env python3
"""Timings of the compiled kernels against the pure-Python fallback.

Covers the two hot loops behind index construction: the rolling-hash trigger
scan and SA-IS suffix sorting (byte texts and parse-scale integer
sequences). Run after `pip install -e .` so the extension is built.
"""

import argparse
import time

import numpy as np

from pfwg._kernels import HASH_BASE, HASH_MOD, fallback

try:
    from pfwg._kernels import _native as native
except ImportError:
    native = None


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--scan-bytes", type=int, default=2_000_000)
    ap.add_argument("--sa-bytes", type=int, default=200_000)
    ap.add_argument("--sa-ints", type=int, default=50_000)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    scan_data = rng.integers(0, 4, size=args.scan_bytes, dtype=np.uint8) + 2
    sa_bytes = (rng.integers(0, 4, size=args.sa_bytes, dtype=np.uint8) + 1).astype(np.int64)
    sa_bytes[-1] = 0
    sa_ints = rng.integers(1, args.sa_ints // 10 + 2, size=args.sa_ints).astype(np.int64)
    sa_ints[-1] = 0

    cases = [
        ("trigger scan",
         lambda impl, data=bytes(scan_data.tobytes()): impl.scan_triggers(
             np.frombuffer(data, dtype=np.uint8) if impl is native else data,
             0, args.scan_bytes - 3, 4, 50, HASH_BASE, HASH_MOD)),
        ("suffix array (bytes)",
         lambda impl, data=sa_bytes: impl.suffix_array(
             data if impl is native else data.tolist(), 6)),
        ("suffix array (ints)",
         lambda impl, data=sa_ints: impl.suffix_array(
             data if impl is native else data.tolist(), int(sa_ints.max()) + 1)),
    ]

    print(f"{'kernel':24} {'fallback':>12} {'native':>12} {'speedup':>9}")
    for name, runner in cases:
        t_fb = timeit(lambda: runner(fallback), args.repeats)
        if native is None:
            print(f"{name:24} {t_fb:11.3f}s {'n/a':>12} {'-':>9}")
            continue
        t_nat = timeit(lambda: runner(native), args.repeats)
        print(f"{name:24} {t_fb:11.3f}s {t_nat:11.3f}s {t_fb / t_nat:8.1f}x")


if __name__ == "__main__":
    main()
