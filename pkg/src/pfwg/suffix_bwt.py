"""Suffix arrays, BWT derivation and inversion, and the rotation-sort oracle.

Operations are generic over integer sequences (bytes or int64 arrays) so the
same code path serves byte texts and the large-alphabet parse.
"""

from dataclasses import dataclass

import numpy as np

from ._kernels import suffix_array as _suffix_array_0
from .errors import CorruptionError, ParameterError


def _as_codes(seq):
    if isinstance(seq, (bytes, bytearray)):
        return np.frombuffer(bytes(seq), dtype=np.uint8).astype(np.int64)
    arr = np.ascontiguousarray(seq, dtype=np.int64)
    return arr


@dataclass
class SuffixArray:
    """Suffix permutation in the 1-based convention: sa[i] is the start of
    the i-th smallest suffix of T[1..n]."""

    sa: np.ndarray

    def zero_based(self):
        return self.sa - 1

    def to_bytes(self) -> bytes:
        return self.sa.astype("<u8").tobytes()


@dataclass
class BwtString:
    data: np.ndarray  # int64 symbol codes
    char_counts: np.ndarray  # bincount over codes

    def __len__(self):
        return int(self.data.size)

    def to_bytes(self):
        if self.data.size and self.data.max() > 255:
            raise ValueError("labels exceed byte range")
        return self.data.astype(np.uint8).tobytes()


def _check_terminated(codes):
    if codes.size == 0:
        raise ParameterError("empty text")
    term = int(codes.min())
    if int(codes[-1]) != term:
        raise ParameterError("text does not end with its terminator")
    if int((codes == term).sum()) != 1:
        raise ParameterError("terminator must occur exactly once")


def build_suffix_array(seq) -> SuffixArray:
    """Suffix array of a null-terminated text (unique, smallest terminator)."""
    codes = _as_codes(seq)
    _check_terminated(codes)
    sa0 = _suffix_array_0(codes)
    return SuffixArray(sa0 + 1)


def bwt_from_sa(seq, sa) -> BwtString:
    """Last column of the sorted-rotation matrix, read off the suffix array."""
    codes = _as_codes(seq)
    sa0 = sa.zero_based() if isinstance(sa, SuffixArray) else np.asarray(sa) - 1
    bwt = codes[sa0 - 1]  # index -1 wraps to the final symbol
    return BwtString(bwt.astype(np.int64), np.bincount(bwt).astype(np.int64))


def lf_map(bwt: BwtString) -> np.ndarray:
    """Rank-preserving map from BWT row i to the row of the preceding symbol."""
    order = np.argsort(bwt.data, kind="stable")
    lf = np.empty(bwt.data.size, dtype=np.int64)
    lf[order] = np.arange(bwt.data.size, dtype=np.int64)
    return lf


def invert_bwt(bwt: BwtString) -> np.ndarray:
    """Recover the unique null-terminated text with this BWT."""
    n = len(bwt)
    if n == 0:
        raise ParameterError("empty BWT")
    term = int(bwt.data.min())
    if int((bwt.data == term).sum()) != 1:
        raise CorruptionError("BWT must contain exactly one terminator")
    lf = lf_map(bwt)
    out = np.empty(n, dtype=np.int64)
    row = 0  # row 0 is the rotation starting with the terminator
    for k in range(n):
        out[k] = bwt.data[row]
        row = int(lf[row])
        if row == 0 and k != n - 1:
            raise CorruptionError("LF cycle shorter than the text")
    if row != 0:
        raise CorruptionError("LF walk did not close")
    # The walk emits the text backwards starting at the symbol before the
    # terminator; reversing yields "terminator + body", i.e. one left rotation
    # short of the null-terminated form.
    text = out[::-1]
    return np.concatenate([text[1:], text[:1]])


def naive_bwt_oracle(seq) -> BwtString:
    """Literal rotation sort; quadratic-ish, for test-scale inputs only."""
    codes = _as_codes(seq)
    n = codes.size
    if n > 10_000:
        raise ParameterError("oracle limited to n <= 10000")
    if n == 0:
        raise ParameterError("empty text")
    doubled = np.concatenate([codes, codes])
    if codes.max() <= 255:
        buf = doubled.astype(np.uint8).tobytes()
        order = sorted(range(n), key=lambda i: buf[i:i + n])
    else:
        tup = tuple(doubled.tolist())
        order = sorted(range(n), key=lambda i: tup[i:i + n])
    bwt = codes[(np.array(order, dtype=np.int64) - 1) % n]
    return BwtString(bwt.astype(np.int64), np.bincount(bwt).astype(np.int64))
