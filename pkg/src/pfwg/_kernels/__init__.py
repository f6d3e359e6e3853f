"""Kernel selection: compiled extension when available, pure Python otherwise.

Set PFWG_PURE=1 to force the fallback (used by the kernel benchmark and the
parity tests).
"""

import os

import numpy as np

if os.environ.get("PFWG_PURE"):
    from . import fallback as _impl
else:
    try:
        from . import _native as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import fallback as _impl

IMPLEMENTATION = _impl.NAME

# Karp-Rabin parameters shared by every trigger-scan call site. The modulus
# is the 61-bit Mersenne prime; the base is odd and fixed so that parse
# boundaries are identical across platforms and runs.
HASH_MOD = (1 << 61) - 1
HASH_BASE = 1_000_000_007


def window_hash(window, base=HASH_BASE, mod=HASH_MOD):
    """Polynomial hash of one window of symbol codes."""
    return int(_impl.window_hash(list(window), base, mod))


def scan_triggers(data, start, end, w, p, base=HASH_BASE, mod=HASH_MOD):
    """Positions i in [start, end) whose length-w window hashes to 0 mod p."""
    if _impl.NAME == "native":
        buf = np.ascontiguousarray(np.frombuffer(bytes(data), dtype=np.uint8))
        return np.asarray(_impl.scan_triggers(buf, start, end, w, p, base, mod), dtype=np.int64)
    return np.asarray(_impl.scan_triggers(data, start, end, w, p, base, mod), dtype=np.int64)


def suffix_array(seq, sigma=None):
    """Suffix array (0-based starts) of an integer sequence, as int64 array."""
    arr = np.ascontiguousarray(seq, dtype=np.int64)
    if arr.size and arr.min() < 0:
        raise ValueError("negative symbol code")
    if sigma is None:
        sigma = int(arr.max()) + 1 if arr.size else 1
    if _impl.NAME == "native":
        return np.asarray(_impl.suffix_array(arr, sigma), dtype=np.int64)
    return np.asarray(_impl.suffix_array(arr.tolist(), sigma), dtype=np.int64)
