"""Command-line surface: build, decode, query, validate, bench, pfp."""

import argparse
import os
import sys
import time
import tracemalloc

from .bench import CSV_HEADER, BenchRecord, run_bench
from .corpus import Alphabet, frame, ingest_fasta
from .errors import PfwgError
from .pfp import PfpParams, parse_pfp
from .pipeline import Stage, build_index, decode_index, load_index, save_index, write_pfp_files
from .tunnel import decode_tunnelled
from .wheeler import matches, succinct_to_edges, validate_wheeler


def _read_input(path):
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _triggers(arg, alphabet: Alphabet):
    if arg is None:
        return None
    return frozenset(alphabet.encode(word.encode()) for word in arg.split(","))


def cmd_build(args) -> int:
    raw = _read_input(args.input)
    out = args.out or (args.input + ".pfwg")
    partial = [out, out + ".meta"]
    try:
        tracemalloc.start()
        t0 = time.perf_counter()
        with Stage("ingest"):
            text = ingest_fasta(raw)
            triggers = _triggers(args.trigger_set, text.alphabet)
        result = build_index(text, w=args.w, p=args.p, trigger_words=triggers, tunnel=args.tunnel)
        elapsed = time.perf_counter() - t0
        _, peak = tracemalloc.get_traced_memory()
        tracemalloc.stop()
        save_index(out, result, input_bytes=len(raw), w=args.w, p=args.p, trigger_words=triggers)
        record = BenchRecord(
            label=os.path.basename(args.input),
            input_bytes=len(raw),
            wall_time_seconds=elapsed,
            peak_memory_bytes=int(peak),
            output_index_bytes=os.path.getsize(out),
            parse_length=result.parse_len,
            dictionary_bytes=result.dict_bytes,
            tunnel_edge_saving=result.plan.projected_edge_saving,
        )
        print(CSV_HEADER)
        print(record.to_csv_row())
        return 0
    except PfwgError as exc:
        for path in partial:
            if os.path.exists(path):
                os.unlink(path)
        print(f"build failed: {exc}", file=sys.stderr)
        return 1


def cmd_decode(args) -> int:
    try:
        wg, meta = load_index(args.index)
        alphabet = Alphabet(meta.get("alphabet", "ACGT").encode("latin-1"))
        sys.stdout.buffer.write(decode_index(wg, alphabet))
        sys.stdout.buffer.write(b"\n")
        return 0
    except PfwgError as exc:
        print(f"decode failed: {exc}", file=sys.stderr)
        return 1


def cmd_query(args) -> int:
    try:
        wg, meta = load_index(args.index)
        alphabet = Alphabet(meta.get("alphabet", "ACGT").encode("latin-1"))
        pattern = args.pattern.encode()
        try:
            codes = alphabet.encode(pattern)
        except PfwgError:
            if any(c in b"#$" for c in pattern):
                raise
            print("absent")
            return 1
        present = matches(wg, codes)
        print("present" if present else "absent")
        return 0 if present else 1
    except PfwgError as exc:
        print(f"query failed: {exc}", file=sys.stderr)
        return 2


def cmd_validate(args) -> int:
    try:
        wg, _ = load_index(args.index)
        verdict = validate_wheeler(succinct_to_edges(wg))
        decode_tunnelled(wg)  # must walk a complete logical cycle
        if verdict:
            print("valid")
            return 0
        print(f"violation: condition {verdict.condition}, witness {verdict.witness}")
        return 1
    except PfwgError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1


def cmd_bench(args) -> int:
    try:
        with open(args.manifest) as fh:
            manifest = fh.read()
    except OSError as exc:
        print(f"bench failed: {exc}", file=sys.stderr)
        return 1
    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)
    for row in run_bench(manifest, w=args.w, p=args.p, tunnel=args.tunnel, out_dir=out_dir):
        print(row)
    return 0


def cmd_pfp(args) -> int:
    try:
        raw = _read_input(args.input)
        text = ingest_fasta(raw)
        triggers = _triggers(args.trigger_set, text.alphabet)
        params = PfpParams(w=args.w, p=args.p, trigger_words=triggers)
        pfp = parse_pfp(frame(text, args.w), params)
        out = args.out or args.input
        write_pfp_files(out, pfp)
        print(f"phrases={pfp.n_phrases} parse_len={pfp.parse.size}")
        return 0
    except PfwgError as exc:
        print(f"pfp failed: {exc}", file=sys.stderr)
        return 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="pfwg", description="Wheeler-graph indexes via prefix-free parsing")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_params(p):
        p.add_argument("-w", type=int, default=4, help="window length")
        p.add_argument("-p", type=int, default=50, help="hash modulus (trigger density)")
        p.add_argument("--trigger-set", default=None, help="comma-separated explicit trigger words")
        p.add_argument("--tunnel", default="on", choices=["on", "off"])

    b = sub.add_parser("build", help="build an index from FASTA")
    b.add_argument("input")
    add_params(b)
    b.add_argument("--out", default=None)
    b.add_argument("--seed", type=int, default=0, help="accepted for reproducible scripts")

    d = sub.add_parser("decode", help="recover the framed text from an index")
    d.add_argument("index")

    q = sub.add_parser("query", help="pattern membership")
    q.add_argument("index")
    q.add_argument("pattern")

    v = sub.add_parser("validate", help="check the Wheeler conditions of an index")
    v.add_argument("index")

    e = sub.add_parser("bench", help="run the benchmark manifest")
    e.add_argument("--manifest", required=True)
    add_params(e)
    e.add_argument("--out", default=None)
    e.add_argument("--seed", type=int, default=0)

    f = sub.add_parser("pfp", help="dump .dict and .parse files")
    f.add_argument("input")
    add_params(f)
    f.add_argument("--out", default=None)

    args = parser.parse_args(argv)
    if hasattr(args, "tunnel"):
        args.tunnel = args.tunnel == "on"

    handlers = {
        "build": cmd_build,
        "decode": cmd_decode,
        "query": cmd_query,
        "validate": cmd_validate,
        "bench": cmd_bench,
        "pfp": cmd_pfp,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    raise SystemExit(main())
