import os
import subprocess
import sys

import numpy as np
import pytest

from pfwg._kernels import HASH_BASE, HASH_MOD, IMPLEMENTATION, scan_triggers, suffix_array, window_hash
from pfwg._kernels import fallback


@pytest.mark.skipif(bool(os.environ.get("PFWG_PURE")), reason="fallback forced via PFWG_PURE")
def test_native_extension_selected_by_default():
    assert IMPLEMENTATION == "native"


def test_env_var_forces_fallback():
    out = subprocess.run(
        [sys.executable, "-c", "from pfwg._kernels import IMPLEMENTATION; print(IMPLEMENTATION)"],
        env={"PFWG_PURE": "1", "PATH": "/usr/bin:/bin"},
        capture_output=True, text=True,
    )
    assert out.stdout.strip() == "fallback"


def test_suffix_array_parity():
    rng = np.random.default_rng(6)
    for _ in range(120):
        n = int(rng.integers(0, 400))
        sigma = int(rng.choice([2, 5, 30, 1000]))
        seq = rng.integers(0, sigma, size=n, dtype=np.int64)
        native = suffix_array(seq, sigma)
        pure = fallback.suffix_array(seq.tolist(), sigma)
        assert native.tolist() == pure
        # brute-force cross-check on a subsample
        if n <= 60:
            tup = tuple(seq.tolist())
            expected = sorted(range(n), key=lambda i: tup[i:])
            assert native.tolist() == expected


def test_scan_triggers_parity():
    rng = np.random.default_rng(9)
    for _ in range(60):
        n = int(rng.integers(8, 600))
        data = bytes(rng.integers(0, 256, size=n, dtype=np.uint8).tobytes())
        w = int(rng.integers(1, 7))
        p = int(rng.choice([1, 2, 7, 50]))
        lo = int(rng.integers(0, 3))
        hi = max(lo, n - w + 1 - int(rng.integers(0, 3)))
        native = scan_triggers(data, lo, hi, w, p).tolist()
        pure = fallback.scan_triggers(data, lo, hi, w, p, HASH_BASE, HASH_MOD)
        assert native == pure


def test_window_hash_parity_and_range():
    rng = np.random.default_rng(10)
    for _ in range(200):
        w = int(rng.integers(1, 12))
        win = rng.integers(0, 256, size=w).tolist()
        h = window_hash(win)
        assert h == fallback.window_hash(win, HASH_BASE, HASH_MOD)
        assert 0 <= h < HASH_MOD
