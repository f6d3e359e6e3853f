"""Desk-scale benchmark harness: one CSV row per dataset entry.

Manifest lines are `label path [max_bytes]`; blank lines and '#' comments
are skipped, and max_bytes truncates the raw input to emulate increasing
subset sizes. Peak memory is the allocator high-water mark (tracemalloc),
which is process-internal and not comparable to OS-level RSS numbers.
"""

import os
import time
import tracemalloc
from dataclasses import dataclass

from .corpus import ingest_fasta
from .errors import PfwgError
from .pipeline import build_index, save_index

CSV_HEADER = "label,input_bytes,time_s,peak_mem_bytes,index_bytes,parse_len,dict_bytes,edge_saving"


@dataclass
class BenchRecord:
    label: str
    input_bytes: int
    wall_time_seconds: float
    peak_memory_bytes: int
    output_index_bytes: int
    parse_length: int
    dictionary_bytes: int
    tunnel_edge_saving: int

    def to_csv_row(self) -> str:
        return (
            f"{self.label},{self.input_bytes},{self.wall_time_seconds:.3f},"
            f"{self.peak_memory_bytes},{self.output_index_bytes},"
            f"{self.parse_length},{self.dictionary_bytes},{self.tunnel_edge_saving}"
        )


def parse_manifest(text: str):
    entries = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise PfwgError(f"malformed manifest line: {line!r}")
        label, path = parts[0], parts[1]
        max_bytes = int(parts[2]) if len(parts) == 3 else None
        entries.append((label, path, max_bytes))
    return entries


def bench_one(label: str, path: str, max_bytes, w: int, p: int, tunnel: bool, out_path: str) -> BenchRecord:
    with open(path, "rb") as fh:
        raw = fh.read()
    if max_bytes is not None:
        raw = raw[:max_bytes]
    tracemalloc.start()
    t0 = time.perf_counter()
    text = ingest_fasta(raw)
    result = build_index(text, w=w, p=p, tunnel=tunnel)
    elapsed = time.perf_counter() - t0
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    save_index(out_path, result, input_bytes=len(raw), w=w, p=p)
    return BenchRecord(
        label=label,
        input_bytes=len(raw),
        wall_time_seconds=elapsed,
        peak_memory_bytes=int(peak),
        output_index_bytes=os.path.getsize(out_path),
        parse_length=result.parse_len,
        dictionary_bytes=result.dict_bytes,
        tunnel_edge_saving=result.plan.projected_edge_saving,
    )


def run_bench(manifest_text: str, w: int, p: int, tunnel: bool, out_dir: str):
    """CSV lines (header first); missing datasets yield a failed row."""
    rows = [CSV_HEADER]
    for label, path, max_bytes in parse_manifest(manifest_text):
        out_path = os.path.join(out_dir, f"{label}.pfwg")
        try:
            rec = bench_one(label, path, max_bytes, w, p, tunnel, out_path)
            rows.append(rec.to_csv_row())
        except (OSError, PfwgError):
            rows.append(f"{label},failed,,,,,,")
    return rows
