"""Lift a (possibly tunnelled) Wheeler graph of the parse to a Wheeler graph
of the original framed text.

Every parse edge labelled by a phrase becomes a path spelling that phrase
minus its trailing w-symbol overlap; the parse terminator's edge becomes the
path spelling the terminator run, which closes the text cycle through the
start marker. Vertices of the result are emitted in one streaming pass over
the distinct phrase suffixes (longer than w) in lexicographic order; where a
suffix belongs to several phrases, the vertices of the participating edge
streams are merged with a heap keyed by the Wheeler rank of each edge's
continuation in the parse graph, which the succinct layout exposes as the
edge's position in L.
"""

import heapq
from dataclasses import dataclass

import numpy as np

from ._kernels import suffix_array
from .bitvec import degrees_to_unary
from .corpus import START_MARKER, TERMINATOR
from .errors import CorruptionError, ParameterError
from .pfp import PfpOutput, parse_symbols
from .tunnel import decode_tunnelled
from .wheeler import WheelerGraphSuccinct


@dataclass
class DictionarySuffixIndex:
    """Sentinel-separated dictionary concatenation with its suffix array and
    the grouping of equal phrase suffixes.

    Phrase symbols are shifted above k unique sentinels (phrase i gets
    sentinel k-i, descending), so suffix comparisons never cross a phrase
    boundary and equal suffixes of different phrases sit adjacent in sa_d.
    """

    pfp: PfpOutput
    concat: np.ndarray
    phrase_starts: np.ndarray
    sa_d: np.ndarray
    classes: list  # [(suffix codes, [(phrase_id, offset0), ...])] in lex order

    def suffix_to_phrase(self, pos):
        pid = int(np.searchsorted(self.phrase_starts, pos, side="right") - 1)
        return pid, int(pos - self.phrase_starts[pid])

    def ambiguity_class(self, suffix) -> set:
        suffix = bytes(suffix)
        for content, members in self.classes:
            if content == suffix:
                return {pid for pid, _ in members}
        return set()


def build_dictionary_index(pfp: PfpOutput) -> DictionarySuffixIndex:
    k = pfp.n_phrases
    shift = k + 1
    pieces = []
    starts = np.zeros(k, dtype=np.int64)
    pos = 0
    for i, ph in enumerate(pfp.dictionary):
        starts[i] = pos
        arr = np.frombuffer(ph, dtype=np.uint8).astype(np.int64) + shift
        pieces.append(arr)
        pieces.append(np.array([k - i], dtype=np.int64))  # descending sentinels
        pos += arr.size + 1
    concat = np.concatenate(pieces) if pieces else np.zeros(0, dtype=np.int64)
    sa_d = suffix_array(concat, int(concat.max()) + 1 if concat.size else 1)

    w = pfp.w
    classes = []
    prev = None
    for pos in sa_d.tolist():
        pid = int(np.searchsorted(starts, pos, side="right") - 1)
        off = pos - int(starts[pid])
        ln = len(pfp.dictionary[pid])
        if off >= ln:  # sentinel position
            continue
        if ln - off <= w:  # covered by the following phrase's overlap
            continue
        content = pfp.dictionary[pid][off:]
        if prev is not None and content == prev:
            classes[-1][1].append((pid, off))
        else:
            classes.append((content, [(pid, off)]))
        prev = content
    return DictionarySuffixIndex(pfp, concat, starts, sa_d, classes)


class _LabelStreams:
    """Per-label edge streams of the parse graph, in edge-rank order (which
    sorts by the continuation vertex, then by slot)."""

    def __init__(self, g_p: WheelerGraphSuccinct):
        self.g_p = g_p
        ranks = np.arange(g_p.n_edges, dtype=np.int64)
        self.tgt = g_p._vertex_of_in_slot[ranks]
        self.q = g_p._q_of_rank

    def edges(self, c):
        lo, hi = int(self.g_p.C[c]), int(self.g_p.C[c + 1])
        return self.q[lo:hi], self.tgt[lo:hi]

    def boundary_groups(self, c):
        """Deduplicated targets of label-c edges: (vertex, in-degree, key)."""
        qs, tgts = self.edges(c)
        out = []
        a = 0
        m = tgts.size
        while a < m:
            b = a + 1
            while b < m and tgts[b] == tgts[a]:
                b += 1
            out.append((int(tgts[a]), b - a, int(qs[a])))
            a = b
        return out


def _closing_phrase(pfp: PfpOutput):
    """Pseudo-phrase that closes the cycle: w terminators, then the first
    phrase's opening symbols as the overlap."""
    first = pfp.dictionary[pfp.parse[0]]
    return bytes([TERMINATOR]) * pfp.w + first[: pfp.w]


def _exposed_tables(pfp: PfpOutput):
    k = pfp.n_phrases
    exposed = [None] * (k + 1)
    exposed[0] = bytes([TERMINATOR]) * pfp.w
    for i, ph in enumerate(pfp.dictionary):
        exposed[i + 1] = ph[: len(ph) - pfp.w]
    return exposed


def iter_suffix_classes(idx: DictionarySuffixIndex, g_p: WheelerGraphSuccinct):
    """Suffix classes in expanded Wheeler order: (content, [(label, offset1)])
    with offset1 the 1-based start of the suffix inside its phrase. The
    closing pseudo-phrase's suffixes come first (they start with the
    terminator); dictionary suffixes follow in sa_d order."""
    pfp = idx.pfp
    closing = _closing_phrase(pfp)
    for i in range(1, pfp.w + 1):
        yield closing[i - 1:], [(0, i)]
    for content, members in idx.classes:
        yield content, [(pid + 1, off + 1) for pid, off in members]


def order_phrase_suffixes(idx: DictionarySuffixIndex, g_p: WheelerGraphSuccinct):
    """Iterator of (suffix, emit instructions) in output order.

    Each instruction is (key, kind, payload): kind "internal" carries
    (label, offset, out_label); kind "boundary" carries (parse_vertex,
    in_degree). Keys are parse-graph L positions; within one class they
    realize the order induced by comparing continuations at phrase
    boundaries.
    """
    pfp = idx.pfp
    streams = _LabelStreams(g_p)
    exposed = _exposed_tables(pfp)
    for content, members in iter_suffix_classes(idx, g_p):
        instructions = []
        for c, i in members:
            qs, _ = streams.edges(c)
            if i == 1:
                for u, din, key in streams.boundary_groups(c):
                    instructions.append((key, "boundary", (u, din)))
            else:
                out_label = exposed[c][i - 2]
                for q in qs.tolist():
                    instructions.append((q, "internal", (c, i, out_label)))
        instructions.sort(key=lambda rec: rec[0])
        yield content, instructions


def expand_wg(g_p: WheelerGraphSuccinct, pfp: PfpOutput, idx: DictionarySuffixIndex) -> WheelerGraphSuccinct:
    """Expanded graph over the framed text's symbol codes."""
    k = pfp.n_phrases
    if g_p.sigma != k + 1:
        raise ParameterError("parse graph alphabet does not match the dictionary")
    expected = parse_symbols(pfp)
    if not np.array_equal(decode_tunnelled(g_p), expected):
        raise ParameterError("parse graph does not decode to this parse")

    streams = _LabelStreams(g_p)
    exposed = _exposed_tables(pfp)
    lastexp = [ex[-1] for ex in exposed]
    gp_L = g_p.L

    label_counts = np.diff(g_p.C)
    expected_edges = int(sum(int(label_counts[c]) * len(exposed[c]) for c in range(k + 1)))

    douts = []
    dins = []
    labels_out = []

    def emit_boundary(u, din):
        olo, ohi = g_p.out_slots(u)
        douts.append(ohi - olo)
        dins.append(din)
        for q in range(olo, ohi):
            labels_out.append(lastexp[gp_L[q]])

    for content, members in iter_suffix_classes(idx, g_p):
        if len(members) == 1:
            c, i = members[0]
            if i == 1:
                for u, din, _key in streams.boundary_groups(c):
                    emit_boundary(u, din)
            else:
                m = int(label_counts[c])
                out_label = exposed[c][i - 2]
                douts.extend([1] * m)
                dins.extend([1] * m)
                labels_out.extend([out_label] * m)
            continue
        # ambiguous class: merge the member streams by continuation rank
        entry_streams = []
        for c, i in members:
            if i == 1:
                entry_streams.append([(key, ("b", u, din)) for u, din, key in streams.boundary_groups(c)])
            else:
                qs, _ = streams.edges(c)
                out_label = exposed[c][i - 2]
                entry_streams.append([(int(q), ("i", out_label)) for q in qs])
        for _key, rec in heapq.merge(*entry_streams, key=lambda r: r[0]):
            if rec[0] == "b":
                emit_boundary(rec[1], rec[2])
            else:
                douts.append(1)
                dins.append(1)
                labels_out.append(rec[1])

    L = np.array(labels_out, dtype=np.int64)
    if L.size != expected_edges or int(np.sum(dins)) != expected_edges:
        raise CorruptionError("expansion emitted an inconsistent edge count")
    sigma = int(L.max()) + 1
    counts = np.bincount(L, minlength=sigma)
    C = np.zeros(sigma + 1, dtype=np.int64)
    np.cumsum(counts, out=C[1:])
    out = WheelerGraphSuccinct(C, L, degrees_to_unary(np.array(douts, dtype=np.int64)),
                               degrees_to_unary(np.array(dins, dtype=np.int64)))
    internal_count = int(sum(int(label_counts[c]) * (len(exposed[c]) - 1) for c in range(k + 1)))
    if out.n_vertices != g_p.n_vertices + internal_count:
        raise CorruptionError("expansion emitted an inconsistent vertex count")
    return out
