"""Plain bitvector with rank/select support.

Rank uses a cumulative-count array, select a binary search over it; no
compression. Bit arrays are small numpy uint8 vectors of 0/1 values.
"""

import numpy as np


class BitVector:
    def __init__(self, bits):
        self.bits = np.ascontiguousarray(bits, dtype=np.uint8)
        if self.bits.size and self.bits.max() > 1:
            raise ValueError("bit values must be 0 or 1")
        # _cum[i] = number of ones in bits[0:i]
        self._cum = np.zeros(self.bits.size + 1, dtype=np.int64)
        np.cumsum(self.bits, out=self._cum[1:])
        self._one_positions = np.flatnonzero(self.bits).astype(np.int64)

    def __len__(self):
        return int(self.bits.size)

    @property
    def num_ones(self):
        return int(self._one_positions.size)

    def rank1(self, pos):
        """Number of ones in bits[0:pos]."""
        return int(self._cum[pos])

    def select1(self, k):
        """Position of the k-th one (0-based k)."""
        return int(self._one_positions[k])

    def __getitem__(self, i):
        return int(self.bits[i])

    def __eq__(self, other):
        return isinstance(other, BitVector) and np.array_equal(self.bits, other.bits)


def unary_degrees(bits):
    """Run lengths of the 1 0^(d-1) encoding: degree of each marked element."""
    bits = np.ascontiguousarray(bits, dtype=np.uint8)
    starts = np.flatnonzero(bits)
    if starts.size == 0:
        return np.zeros(0, dtype=np.int64)
    ends = np.append(starts[1:], bits.size)
    return (ends - starts).astype(np.int64)


def degrees_to_unary(degrees):
    """Inverse of unary_degrees: 1 0^(d-1) per degree, as uint8 bits."""
    degrees = np.ascontiguousarray(degrees, dtype=np.int64)
    total = int(degrees.sum())
    bits = np.zeros(total, dtype=np.uint8)
    if degrees.size:
        starts = np.zeros(degrees.size, dtype=np.int64)
        np.cumsum(degrees[:-1], out=starts[1:])
        bits[starts] = 1
    return bits
