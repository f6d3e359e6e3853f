"""End-to-end index construction and persistence.

Stages: ingest -> frame -> parse -> parse BWT -> optional tunnelling ->
expansion -> serialization. The index file carries the succinct graph; a
sidecar .meta file records the build parameters and statistics as key=value
lines.
"""

import os
from dataclasses import dataclass

import numpy as np

from ._kernels import suffix_array
from .corpus import Alphabet, Text, frame
from .errors import FormatError, ParameterError, PfwgError
from .expand import build_dictionary_index, expand_wg
from .pfp import PfpOutput, PfpParams, parse_pfp, parse_symbols, write_dict_file, write_parse_file
from .suffix_bwt import BwtString
from .tunnel import TunnelPlan, find_blocks, apply_tunnel
from .wheeler import WheelerGraphSuccinct, wg_from_bwt


@dataclass
class BuildResult:
    wg: WheelerGraphSuccinct
    pfp: PfpOutput
    plan: TunnelPlan
    parse_graph_edges: int
    tunnelled_graph_edges: int

    @property
    def dict_bytes(self):
        return len(write_dict_file(self.pfp))

    @property
    def parse_len(self):
        return int(self.pfp.parse.size)


def build_parse_graph(pfp: PfpOutput) -> WheelerGraphSuccinct:
    pseq = parse_symbols(pfp)
    sa0 = suffix_array(pseq, pfp.n_phrases + 1)
    bwt = pseq[sa0 - 1]
    return wg_from_bwt(BwtString(bwt, np.bincount(bwt).astype(np.int64)))


def tunnel_entry_labels(pfp: PfpOutput) -> set:
    """Labels usable as merged-entry in-labels: the phrase's exposed part
    must span at least two symbols so entry-path sources stay grouped."""
    allowed = set()
    if pfp.w >= 2:
        allowed.add(0)
    for i, ph in enumerate(pfp.dictionary):
        if len(ph) - pfp.w >= 2:
            allowed.add(i + 1)
    return allowed


class Stage:
    """Tags errors with the pipeline stage they came from."""

    def __init__(self, name):
        self.name = name

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is not None and isinstance(exc, PfwgError) and not getattr(exc, "stage", None):
            exc.stage = self.name
            exc.args = (f"[{self.name}] {exc.args[0]}",) + exc.args[1:]
        return False


def build_index(text: Text, w: int, p: int = 50, trigger_words=None, tunnel: bool = True) -> BuildResult:
    with Stage("frame"):
        framed = text if text.framed else frame(text, w)
        if framed.frame_w != w:
            raise ParameterError("text framed with a different w")
    with Stage("parse"):
        params = PfpParams(w=w, p=p, trigger_words=None if trigger_words is None else frozenset(trigger_words))
        pfp = parse_pfp(framed, params)
    with Stage("parse-bwt"):
        g_p = build_parse_graph(pfp)
    plan = TunnelPlan.of([])
    g_t = g_p
    if tunnel:
        with Stage("tunnel"):
            plan = find_blocks(g_p, entry_labels=tunnel_entry_labels(pfp))
            if plan.blocks:
                g_t = apply_tunnel(g_p, plan)
    with Stage("expand"):
        idx = build_dictionary_index(pfp)
        wg = expand_wg(g_t, pfp, idx)
    return BuildResult(wg, pfp, plan, g_p.n_edges, g_t.n_edges)


def decode_index(wg: WheelerGraphSuccinct, alphabet: Alphabet) -> bytes:
    """Readable framed text recovered from an index."""
    from .tunnel import decode_tunnelled

    return alphabet.decode(decode_tunnelled(wg).tolist())


# --- persistence ---------------------------------------------------------------

def meta_to_text(meta: dict) -> str:
    return "".join(f"{k}={v}\n" for k, v in meta.items())


def meta_from_text(text: str) -> dict:
    meta = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        if "=" not in line:
            raise FormatError("malformed meta line")
        k, v = line.split("=", 1)
        meta[k] = v
    return meta


def save_index(path: str, result: BuildResult, input_bytes: int, w: int, p: int, trigger_words=None):
    blob = result.wg.to_bytes()
    with open(path, "wb") as fh:
        fh.write(blob)
    meta = {
        "w": w,
        "p": p,
        "trigger_mode": "explicit" if trigger_words is not None else "hash",
        "alphabet": result.pfp.alphabet.symbols.decode("latin-1"),
        "input_bytes": input_bytes,
        "dict_phrases": result.pfp.n_phrases,
        "dict_bytes": result.dict_bytes,
        "parse_len": result.parse_len,
        "tunnel_blocks": len(result.plan.blocks),
        "tunnel_edge_saving": result.plan.projected_edge_saving,
        "n_vertices": result.wg.n_vertices,
        "n_edges": result.wg.n_edges,
    }
    with open(path + ".meta", "w") as fh:
        fh.write(meta_to_text(meta))
    return len(blob)


def load_index(path: str):
    with open(path, "rb") as fh:
        wg = WheelerGraphSuccinct.from_bytes(fh.read())
    meta_path = path + ".meta"
    meta = {}
    if os.path.exists(meta_path):
        with open(meta_path) as fh:
            meta = meta_from_text(fh.read())
    return wg, meta


def write_pfp_files(out_prefix: str, pfp: PfpOutput):
    with open(out_prefix + ".dict", "wb") as fh:
        fh.write(write_dict_file(pfp))
    with open(out_prefix + ".parse", "wb") as fh:
        fh.write(write_parse_file(pfp))
