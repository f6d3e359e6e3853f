"""pfwg: Wheeler-graph indexes of repetitive texts via prefix-free parsing,
tunnelling of the parse graph, and expansion back to the text."""

from ._kernels import IMPLEMENTATION
from .corpus import Alphabet, Text, frame, ingest_fasta
from .expand import DictionarySuffixIndex, build_dictionary_index, expand_wg, order_phrase_suffixes
from .pfp import PfpOutput, PfpParams, parse_pfp, reconstruct, rolling_hash
from .pipeline import BuildResult, build_index, build_parse_graph, decode_index, load_index, save_index
from .suffix_bwt import BwtString, SuffixArray, build_suffix_array, bwt_from_sa, invert_bwt, naive_bwt_oracle
from .tunnel import Block, TunnelPlan, apply_tunnel, decode_tunnelled, find_blocks
from .wheeler import (
    EdgeListGraph,
    WheelerGraphSuccinct,
    decode_text,
    edges_to_succinct,
    matches,
    succinct_to_edges,
    validate_wheeler,
    wg_from_bwt,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "Block",
    "BuildResult",
    "BwtString",
    "DictionarySuffixIndex",
    "EdgeListGraph",
    "IMPLEMENTATION",
    "PfpOutput",
    "PfpParams",
    "SuffixArray",
    "Text",
    "TunnelPlan",
    "WheelerGraphSuccinct",
    "apply_tunnel",
    "build_dictionary_index",
    "build_index",
    "build_parse_graph",
    "build_suffix_array",
    "bwt_from_sa",
    "decode_index",
    "decode_text",
    "decode_tunnelled",
    "edges_to_succinct",
    "expand_wg",
    "find_blocks",
    "frame",
    "ingest_fasta",
    "invert_bwt",
    "load_index",
    "matches",
    "naive_bwt_oracle",
    "order_phrase_suffixes",
    "parse_pfp",
    "reconstruct",
    "rolling_hash",
    "save_index",
    "succinct_to_edges",
    "validate_wheeler",
    "wg_from_bwt",
]
