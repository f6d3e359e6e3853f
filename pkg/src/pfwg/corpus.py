"""Input text model: alphabet normalization, FASTA ingestion, sentinel framing.

Symbols are stored as internal codes so that ordering is a plain integer
comparison: terminator = 0, start marker = 1, corpus symbols 2..sigma+1 in
byte order of their source characters. The readable forms of the two
sentinels are '$' and '#'.
"""

from dataclasses import dataclass

from .errors import ParameterError

TERMINATOR = 0
START_MARKER = 1
READABLE_TERMINATOR = ord("$")
READABLE_START = ord("#")

_FASTA_SYMBOLS = b"ACGT"
_CASEFOLD = bytes.maketrans(b"acgt", b"ACGT")


@dataclass(frozen=True)
class Alphabet:
    """Ordered corpus symbol set; source symbols map to codes 2..sigma+1."""

    symbols: bytes

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise ParameterError("alphabet symbols must be unique")
        if bytes(sorted(self.symbols)) != self.symbols:
            raise ParameterError("alphabet symbols must be sorted")
        if READABLE_TERMINATOR in self.symbols or READABLE_START in self.symbols:
            raise ParameterError("'$' and '#' are reserved sentinel characters")

    @property
    def sigma(self):
        return len(self.symbols)

    @classmethod
    def from_source(cls, data: bytes) -> "Alphabet":
        return cls(bytes(sorted(set(data))))

    def encode(self, data: bytes) -> bytes:
        data = bytes(data)
        stray = set(data) - set(self.symbols)
        if stray:
            raise ParameterError(f"symbol {min(stray)!r} not in alphabet")
        return data.translate(bytes.maketrans(self.symbols, bytes(range(2, 2 + self.sigma))))

    def decode(self, codes) -> bytes:
        table = bytearray(range(256))
        table[TERMINATOR] = READABLE_TERMINATOR
        table[START_MARKER] = READABLE_START
        table[2:2 + self.sigma] = self.symbols
        if isinstance(codes, (bytes, bytearray)):
            data = bytes(codes)
        else:
            data = bytes(int(c) for c in codes)
        if data and max(data) >= 2 + self.sigma:
            raise ParameterError("code outside the alphabet range")
        return data.translate(bytes(table))


@dataclass(frozen=True)
class Text:
    """A symbol sequence in internal codes, optionally framed with sentinels."""

    data: bytes
    alphabet: Alphabet
    framed: bool = False
    frame_w: int = 0

    @property
    def n(self):
        return len(self.data)

    def to_readable(self) -> bytes:
        return self.alphabet.decode(self.data)

    @classmethod
    def from_readable(cls, s, alphabet: Alphabet | None = None) -> "Text":
        """Build a Text from a human-readable string; '#'/'$' become sentinels."""
        raw = s.encode() if isinstance(s, str) else bytes(s)
        body = bytes(c for c in raw if c not in (READABLE_TERMINATOR, READABLE_START))
        if alphabet is None:
            alphabet = Alphabet.from_source(body)
        table = {c: i + 2 for i, c in enumerate(alphabet.symbols)}
        table[READABLE_TERMINATOR] = TERMINATOR
        table[READABLE_START] = START_MARKER
        codes = bytes(table[c] for c in raw)
        framed = raw.startswith(b"#") and raw.endswith(b"$")
        w = 0
        if framed:
            while w < len(raw) and raw[len(raw) - 1 - w] == READABLE_TERMINATOR:
                w += 1
        return cls(codes, alphabet, framed=framed, frame_w=w)


def ingest_fasta(raw: bytes) -> Text:
    """Concatenate all FASTA records, keeping only A/C/G/T (case-folded)."""
    kept = bytearray()
    for line in raw.splitlines():
        if line.startswith(b">"):
            continue
        for c in line.translate(_CASEFOLD):
            if c in _FASTA_SYMBOLS:
                kept.append(c)
    if not kept:
        raise ParameterError("empty corpus")
    alphabet = Alphabet(_FASTA_SYMBOLS)
    return Text(alphabet.encode(bytes(kept)), alphabet)


def frame(text: Text, w: int) -> Text:
    """Attach the start marker and w terminator copies."""
    if w < 1:
        raise ParameterError("window length w must be >= 1")
    if text.framed:
        raise ParameterError("text is already framed")
    data = bytes([START_MARKER]) + text.data + bytes([TERMINATOR]) * w
    return Text(data, text.alphabet, framed=True, frame_w=w)
