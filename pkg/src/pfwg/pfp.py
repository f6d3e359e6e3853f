"""Prefix-free parsing: framed text -> sorted phrase dictionary + rank parse.

A sliding window of length w scans the framed text. Wherever the window is a
trigger (hash residue 0 mod p, or membership in an explicit trigger set) the
current phrase ends *including* the trigger word and the next phrase starts
*at* it, so consecutive phrases overlap by exactly w symbols. The start
marker opens the first phrase and the terminator run closes the last one.
"""

from collections import deque
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .corpus import Alphabet, START_MARKER, TERMINATOR, Text
from .errors import CorruptionError, ParameterError

HASH_BASE = _kernels.HASH_BASE
HASH_MOD = _kernels.HASH_MOD


@dataclass(frozen=True)
class PfpParams:
    w: int
    p: int = 1
    trigger_words: frozenset | None = None  # explicit mode when set

    def __post_init__(self):
        if self.w < 1:
            raise ParameterError("w must be >= 1")
        if self.p < 1:
            raise ParameterError("p must be >= 1")
        if self.trigger_words is not None:
            for word in self.trigger_words:
                if len(word) != self.w:
                    raise ParameterError("trigger words must have length w")


@dataclass
class PfpOutput:
    dictionary: list  # phrases (bytes of internal codes), strictly sorted
    parse: np.ndarray  # 0-based ranks into dictionary, in text order
    w: int
    occurrence_counts: np.ndarray
    alphabet: Alphabet

    @property
    def n_phrases(self):
        return len(self.dictionary)

    def phrase_lengths(self):
        return np.array([len(d) for d in self.dictionary], dtype=np.int64)


def rolling_hash(window, p):
    """Karp-Rabin residue of one window, reduced mod p (0 means trigger)."""
    return _kernels.window_hash(window) % p


class RollingHash:
    """Incremental window hash with O(1) slides; same residues as the scan."""

    def __init__(self, w, base=HASH_BASE, mod=HASH_MOD):
        self.w = w
        self.base = base
        self.mod = mod
        self._shift = pow(base, w - 1, mod)
        self._win = deque()
        self.value = 0

    def push(self, symbol):
        if len(self._win) == self.w:
            out = self._win.popleft()
            self.value = (self.value - out * self._shift) % self.mod
        self._win.append(symbol)
        self.value = (self.value * self.base + symbol) % self.mod
        return self.value


def _trigger_positions(data: bytes, params: PfpParams):
    """Window starts that end a phrase, excluding the forced final window.

    Windows overlapping the terminator run never trigger; the run is closed
    by the forced trigger at the final window. The start marker only opens
    the first phrase (windows begin at position 1).
    """
    n = len(data)
    w = params.w
    lo, hi = 1, n - 2 * w + 1  # scan [lo, hi): windows free of sentinels
    if hi <= lo:
        return []
    if params.trigger_words is not None:
        words = {bytes(t) for t in params.trigger_words}
        return [i for i in range(lo, hi) if data[i:i + w] in words]
    return [int(i) for i in _kernels.scan_triggers(data, lo, hi, w, params.p)]


def parse_pfp(text: Text, params: PfpParams) -> PfpOutput:
    if not text.framed:
        raise ParameterError("text must be framed before parsing")
    if text.frame_w != params.w:
        raise ParameterError("text framed with a different w")
    data = text.data
    n = len(data)

    boundaries = _trigger_positions(data, params)
    phrases = []
    start = 0
    for pos in boundaries:
        phrases.append(data[start:pos + params.w])
        start = pos
    phrases.append(data[start:n])  # forced trigger at the final window

    ranks = {}
    for ph in phrases:
        ranks.setdefault(ph, 0)
    dictionary = sorted(ranks)
    for r, ph in enumerate(dictionary):
        ranks[ph] = r
    parse = np.array([ranks[ph] for ph in phrases], dtype=np.int64)
    counts = np.bincount(parse, minlength=len(dictionary)).astype(np.int64)
    return PfpOutput(dictionary, parse, params.w, counts, text.alphabet)


def parse_symbols(pfp: PfpOutput) -> np.ndarray:
    """Parse as a null-terminated symbol sequence: ranks shifted to 1..k with
    a trailing 0 terminator, ready for suffix sorting."""
    return np.concatenate([pfp.parse + 1, np.zeros(1, dtype=np.int64)])


def reconstruct(pfp: PfpOutput) -> Text:
    """Rejoin the parse: first phrase whole, then each phrase minus its
    leading w symbols; overlapping regions must agree."""
    if len(pfp.parse) == 0:
        raise CorruptionError("empty parse")
    w = pfp.w
    parts = [pfp.dictionary[pfp.parse[0]]]
    prev = parts[0]
    for r in pfp.parse[1:]:
        ph = pfp.dictionary[r]
        if prev[-w:] != ph[:w]:
            raise CorruptionError("phrase overlap mismatch")
        parts.append(ph[w:])
        prev = ph
    data = b"".join(parts)
    return Text(data, pfp.alphabet, framed=True, frame_w=w)


# On-disk formats: the dictionary file stores readable phrase bytes, each
# phrase terminated by 0x01 and the file by 0x00; the parse file stores
# little-endian 64-bit 0-based ranks.

def write_dict_file(pfp: PfpOutput) -> bytes:
    out = bytearray()
    for ph in pfp.dictionary:
        out += pfp.alphabet.decode(ph)
        out.append(0x01)
    out.append(0x00)
    return bytes(out)


def read_dict_file(blob: bytes, alphabet: Alphabet) -> list:
    if not blob.endswith(b"\x00"):
        raise CorruptionError("dictionary file missing terminator byte")
    body = blob[:-1]
    phrases = []
    for chunk in body.split(b"\x01")[:-1]:
        text = Text.from_readable(chunk, alphabet)
        phrases.append(text.data)
    return phrases


def write_parse_file(pfp: PfpOutput) -> bytes:
    return pfp.parse.astype("<u8").tobytes()


def read_parse_file(blob: bytes) -> np.ndarray:
    if len(blob) % 8:
        raise CorruptionError("parse file length not a multiple of 8")
    return np.frombuffer(blob, dtype="<u8").astype(np.int64)
