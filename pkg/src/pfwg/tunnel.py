"""Tunnelling: find disjoint blocks of parallel equally-labelled paths in a
Wheeler cycle graph and merge each block into a single path.

A block is k >= 2 paths over ell >= 2 columns; every column is a contiguous
interval of Wheeler ranks, each transition carries one label shared by all k
strands, and the first column additionally shares one incoming label (the
merged vertex must keep uniform in-labels). Merging drops (k-1)(ell-1)
edges. Decoding walks the cycle backwards and carries a strand offset
through merged sections: the offset is fixed where a merged exit fans out
(out-degree k) and consumed where a merged entry fans in (in-degree k); the
i-th entry slot continues the strand of the i-th exit slot.
"""

from dataclasses import dataclass

import numpy as np

from .bitvec import degrees_to_unary
from .errors import CorruptionError, ParameterError
from .wheeler import WheelerGraphSuccinct, _canonical_rotation, walk_cycle


@dataclass(frozen=True)
class Block:
    col_starts: tuple  # first Wheeler rank of each column
    k: int  # strand count (column height)
    length: int  # number of columns (ell)

    @property
    def saving(self):
        return (self.k - 1) * (self.length - 1)

    def columns(self):
        return [(s, s + self.k) for s in self.col_starts]

    def vertices(self):
        out = []
        for s in self.col_starts:
            out.extend(range(s, s + self.k))
        return out


@dataclass
class TunnelPlan:
    blocks: list
    projected_edge_saving: int

    @classmethod
    def of(cls, blocks):
        return cls(list(blocks), sum(b.saving for b in blocks))


def plan_to_text(plan: TunnelPlan) -> str:
    lines = [f"{b.k} {b.length} " + " ".join(str(s) for s in b.col_starts) for b in plan.blocks]
    return "\n".join(lines) + ("\n" if lines else "")


def plan_from_text(text: str) -> TunnelPlan:
    blocks = []
    for line in text.splitlines():
        if not line.strip():
            continue
        parts = [int(x) for x in line.split()]
        k, length, starts = parts[0], parts[1], parts[2:]
        if len(starts) != length:
            raise ParameterError("malformed tunnel plan line")
        blocks.append(Block(tuple(starts), k, length))
    return TunnelPlan.of(blocks)


def _cycle_views(wg: WheelerGraphSuccinct):
    """Per-vertex label, in-label, and LF target for an all-degree-1 graph."""
    labels = wg.L  # position q == vertex id when O is all ones
    in_label = np.searchsorted(wg.C, np.arange(wg.n_vertices), side="right") - 1
    lf = np.empty(wg.n_vertices, dtype=np.int64)
    lf[wg._q_of_rank] = np.arange(wg.n_edges, dtype=np.int64)
    return labels, in_label, lf


_SUBRUN_LIMIT = 24  # runs up to this length spawn all sub-interval candidates


def find_blocks(wg: WheelerGraphSuccinct, entry_labels=None) -> TunnelPlan:
    """Greedy block selection, highest (k-1)(ell-1) first.

    Candidates start at runs of vertices sharing both the outgoing label and
    the incoming label (all sub-intervals for short runs, the maximal run
    plus period-narrowed retries for long ones), and extend column-by-column
    through LF images while the image stays equally labelled and disjoint
    from the block so far. Already-tunnelled graphs (any degree > 1) yield
    an empty plan.
    """
    if np.any(wg._out_deg != 1) or np.any(wg._in_deg != 1):
        return TunnelPlan.of([])
    n = wg.n_vertices
    if n < 4:
        return TunnelPlan.of([])
    labels, in_label, lf = _cycle_views(wg)

    seeds = []
    run_start = 0
    for v in range(1, n + 1):
        if v < n and labels[v] == labels[run_start] and in_label[v] == in_label[run_start]:
            continue
        m = v - run_start
        if m >= 2 and (entry_labels is None or int(in_label[run_start]) in entry_labels):
            if m <= _SUBRUN_LIMIT:
                # short runs: every sub-interval is a candidate start column
                for off in range(m - 1):
                    for k in range(2, m - off + 1):
                        seeds.append((run_start + off, k))
            else:
                seeds.append((run_start, m))
        run_start = v

    candidates = []
    seen = set(seeds)
    seeds.reverse()
    while seeds:
        start, k = seeds.pop()
        block, shift = _extend_block(start, k, labels, lf)
        if block is not None:
            candidates.append(block)
        # A self-overlapping image means a periodic repeat; the run narrowed
        # to the overlap shift tunnels where the full width cannot.
        if shift is not None and 2 <= shift < k and (start, shift) not in seen:
            seen.add((start, shift))
            seeds.append((start, shift))

    candidates.sort(key=lambda b: (-b.saving, b.col_starts[0]))
    used = np.zeros(n, dtype=bool)
    chosen = []
    for b in candidates:
        verts = b.vertices()
        if used[verts].any():
            continue
        used[verts] = True
        chosen.append(b)
    return TunnelPlan.of(chosen)


def _extend_block(start, k, labels, lf):
    """Extend a uniform run through LF images; returns (block or None,
    overlap shift or None) where the shift is set when extension halted on a
    collision with the block's own previous column."""
    cols = [start]
    spans = [(start, start + k)]
    cur = start
    shift = None
    while True:
        col = labels[cur:cur + k]
        if not (col == col[0]).all():
            break  # exits diverge; this column ends the block
        nxt = int(lf[cur])  # LF image of an equal run is the contiguous run at LF(start)
        nspan = (nxt, nxt + k)
        if any(lo < nspan[1] and nspan[0] < hi for lo, hi in spans):
            if nxt != cur and abs(nxt - cur) < k:
                shift = abs(nxt - cur)
            break  # would overlap the block itself
        cols.append(nxt)
        spans.append(nspan)
        cur = nxt
    if len(cols) < 2:
        return None, shift
    return Block(tuple(cols), k, len(cols)), shift


def _check_plan(wg, plan):
    if np.any(wg._out_deg != 1) or np.any(wg._in_deg != 1):
        raise ParameterError("apply_tunnel expects an untunnelled cycle graph")
    seen = np.zeros(wg.n_vertices, dtype=bool)
    labels, in_label, lf = _cycle_views(wg)
    for b in plan.blocks:
        if b.k < 2 or b.length < 2:
            raise ParameterError("blocks need k >= 2 and ell >= 2")
        verts = b.vertices()
        if max(verts) >= wg.n_vertices:
            raise ParameterError("block exceeds the vertex range")
        if seen[verts].any():
            raise ParameterError("overlapping blocks")
        seen[verts] = True
        for j, s in enumerate(b.col_starts):
            col_in = in_label[s:s + b.k]
            if not (col_in == col_in[0]).all():
                raise ParameterError("column in-labels not uniform")
            if j + 1 < b.length:
                col_lab = labels[s:s + b.k]
                if not (col_lab == col_lab[0]).all():
                    raise ParameterError("strand labels diverge inside the block")
                if int(lf[s]) != b.col_starts[j + 1]:
                    raise ParameterError("columns are not successive LF images")
    return labels, in_label, lf


def apply_tunnel(wg: WheelerGraphSuccinct, plan: TunnelPlan) -> WheelerGraphSuccinct:
    """Merge each block's columns; entry edges share the merged first column
    (zeros in I), exit edges fan out of the merged last column (zeros in O)."""
    if not plan.blocks:
        return wg
    labels, in_label, lf = _check_plan(wg, plan)
    n = wg.n_vertices

    rep = np.arange(n, dtype=np.int64)
    drop_edge = np.zeros(n, dtype=bool)  # edge of old vertex v is an inner duplicate
    for b in plan.blocks:
        for j, s in enumerate(b.col_starts):
            rep[s:s + b.k] = s
            if j + 1 < b.length:
                drop_edge[s + 1:s + b.k] = True

    keep = rep == np.arange(n)
    new_id = np.cumsum(keep, dtype=np.int64) - 1
    n_new = int(keep.sum())

    order = np.flatnonzero(~drop_edge)  # old vertex ids, ascending = slot order
    src = new_id[rep[order]]
    tgt = new_id[rep[lf[order]]]
    lab = labels[order]
    # out-slots grouped by source, preserving old vertex order (strand order)
    slot_order = np.argsort(src, kind="stable")
    src, tgt, lab = src[slot_order], tgt[slot_order], lab[slot_order]

    out_deg = np.bincount(src, minlength=n_new).astype(np.int64)
    in_deg = np.bincount(tgt, minlength=n_new).astype(np.int64)
    sigma = wg.sigma
    counts = np.bincount(lab, minlength=sigma)
    C = np.zeros(sigma + 1, dtype=np.int64)
    np.cumsum(counts[:sigma], out=C[1:])

    # edge ranks sort by (label, slot position); their targets must line up
    # with the in-degree layout or the plan was not tunnel-consistent
    rank_targets = tgt[np.argsort(lab, kind="stable")]
    slot_targets = np.repeat(np.arange(n_new, dtype=np.int64), in_deg)
    if not np.array_equal(rank_targets, slot_targets):
        raise CorruptionError("tunnelled edges inconsistent with Wheeler layout")

    out = WheelerGraphSuccinct(C, lab, degrees_to_unary(out_deg), degrees_to_unary(in_deg))
    assert out.n_edges == wg.n_edges - plan.projected_edge_saving
    return out


def tunnel_multiplicities(wg: WheelerGraphSuccinct):
    """Edge-count surplus of the logical cycle over the physical graph.

    Follows each merged entry (in-degree k > 1) forward to its exit and
    accounts (k-1) extra logical passes per path edge. Raises on imbalanced
    tunnels (entry and exit widths differing, or nested merges).
    """
    extra = 0
    exits_matched = set()
    for v in range(wg.n_vertices):
        k = wg.in_degree(v)
        if k <= 1:
            continue
        if wg.out_degree(v) > 1:
            raise CorruptionError("vertex both enters and exits a tunnel")
        cur = v
        path_edges = 0
        while True:
            q_lo, q_hi = wg.out_slots(cur)
            if q_hi - q_lo > 1:
                if q_hi - q_lo != k:
                    raise CorruptionError("tunnel entry and exit widths differ")
                exits_matched.add(cur)
                break
            r = wg.edge_rank_of_slot(q_lo)
            nxt = int(wg._vertex_of_in_slot[r])
            path_edges += 1
            if path_edges > wg.n_edges:
                raise CorruptionError("unterminated tunnel path")
            if nxt == v or (wg.in_degree(nxt) > 1):
                raise CorruptionError("nested or colliding tunnels")
            cur = nxt
        extra += (k - 1) * path_edges
    for v in range(wg.n_vertices):
        if wg.out_degree(v) > 1 and v not in exits_matched:
            raise CorruptionError("exit fan-out without a matching entry")
    return extra


def decode_tunnelled(wg: WheelerGraphSuccinct) -> np.ndarray:
    """Decode a possibly tunnelled single-string graph back to its text."""
    logical = wg.n_edges + tunnel_multiplicities(wg)
    labels, steps = walk_cycle(wg, 0, max_steps=logical)
    if steps != logical:
        raise CorruptionError("logical cycle length mismatch")
    return _canonical_rotation(labels)
