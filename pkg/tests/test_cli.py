import os

import numpy as np
import pytest

from pfwg.bench import CSV_HEADER
from pfwg.cli import main
from pfwg.synth import generate_mutated_corpus

# ACGT rendition of the four-phrase worked example (same parse shape under E={A})
EXAMPLE_FASTA = b">ex\nACTAGTACTAGTA\n"


def _write(path, data: bytes):
    with open(path, "wb") as fh:
        fh.write(data)
    return str(path)


def test_build_decode_roundtrip_explicit_triggers(tmp_path, capsys):
    fa = _write(tmp_path / "ex.fa", EXAMPLE_FASTA)
    out = str(tmp_path / "ex.pfwg")
    rc = main(["build", fa, "-w", "1", "--trigger-set", "A", "--tunnel", "off", "--out", out])
    assert rc == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == CSV_HEADER and len(lines) == 2
    rc = main(["decode", out])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "#ACTAGTACTAGTA$"


def test_build_tunnel_monotone_edges(tmp_path, capsys):
    fa = _write(tmp_path / "r.fa", generate_mutated_corpus(800, 12, 0.002, seed=5))
    out_off = str(tmp_path / "off.pfwg")
    out_on = str(tmp_path / "on.pfwg")
    assert main(["build", fa, "--tunnel", "off", "--out", out_off]) == 0
    assert main(["build", fa, "--tunnel", "on", "--out", out_on]) == 0
    capsys.readouterr()

    from pfwg.pipeline import load_index

    wg_off, _ = load_index(out_off)
    wg_on, _ = load_index(out_on)
    assert wg_on.n_edges <= wg_off.n_edges


def test_synthetic_corpus_compression(tmp_path, capsys):
    fa = _write(tmp_path / "c.fa", generate_mutated_corpus(10_000, 100, 0.001, seed=7))
    out = str(tmp_path / "c.pfwg")
    assert main(["build", fa, "-w", "4", "-p", "50", "--out", out]) == 0
    row = capsys.readouterr().out.strip().splitlines()[1].split(",")
    input_bytes = int(row[1])
    parse_len = int(row[5])
    dict_bytes = int(row[6])
    assert parse_len + dict_bytes < 0.5 * input_bytes


def test_query_present_absent(tmp_path, capsys):
    fa = _write(tmp_path / "q.fa", b">q\n" + b"ACGTACGGTTACGT" * 3 + b"\n")
    out = str(tmp_path / "q.pfwg")
    assert main(["build", fa, "--out", out, "-w", "2", "-p", "2"]) == 0
    capsys.readouterr()
    assert main(["query", out, "GGTT"]) == 0
    assert capsys.readouterr().out.strip() == "present"
    assert main(["query", out, "GGGG"]) == 1
    assert capsys.readouterr().out.strip() == "absent"


def test_validate_ok_and_bitflip(tmp_path, capsys):
    fa = _write(tmp_path / "v.fa", b">v\n" + b"ACGT" * 30 + b"\n")
    out = str(tmp_path / "v.pfwg")
    assert main(["build", fa, "--out", out]) == 0
    assert main(["validate", out]) == 0
    blob = bytearray(open(out, "rb").read())
    rng = np.random.default_rng(13)
    flips = 0
    rejected = 0
    for _ in range(20):
        pos = int(rng.integers(len(blob)))
        orig = blob[pos]
        blob[pos] ^= 0xFF
        _write(tmp_path / "v2.pfwg", bytes(blob))
        if os.path.exists(out + ".meta"):
            with open(out + ".meta") as fh:
                _write(tmp_path / "v2.pfwg.meta", fh.read().encode())
        rc = main(["validate", str(tmp_path / "v2.pfwg")])
        flips += 1
        if rc != 0:
            rejected += 1
        blob[pos] = orig
    capsys.readouterr()
    # almost every flip must be caught; identical-value flips are impossible here
    assert rejected == flips


def test_build_deterministic(tmp_path, capsys):
    fa = _write(tmp_path / "d.fa", generate_mutated_corpus(2000, 8, 0.002, seed=3))
    a = str(tmp_path / "a.pfwg")
    b = str(tmp_path / "b.pfwg")
    assert main(["build", fa, "--out", a]) == 0
    assert main(["build", fa, "--out", b]) == 0
    capsys.readouterr()
    assert open(a, "rb").read() == open(b, "rb").read()


def test_every_build_validates(tmp_path, capsys):
    rng = np.random.default_rng(19)
    for i in range(5):
        body = bytes(rng.choice(np.frombuffer(b"ACGT", np.uint8), size=int(rng.integers(10, 400))))
        fa = _write(tmp_path / f"g{i}.fa", b">g\n" + body + b"\n")
        out = str(tmp_path / f"g{i}.pfwg")
        assert main(["build", fa, "-w", "2", "-p", "3", "--out", out]) == 0
        assert main(["validate", out]) == 0
    capsys.readouterr()


def test_pfp_dump(tmp_path, capsys):
    fa = _write(tmp_path / "p.fa", EXAMPLE_FASTA)
    out = str(tmp_path / "p")
    assert main(["pfp", fa, "-w", "1", "--trigger-set", "A", "--out", out]) == 0
    capsys.readouterr()
    dict_blob = open(out + ".dict", "rb").read()
    assert dict_blob == b"#A\x01A$\x01ACTA\x01AGTA\x01\x00"
    parse_blob = open(out + ".parse", "rb").read()
    assert np.frombuffer(parse_blob, dtype="<u8").tolist() == [0, 2, 3, 2, 3, 1]


def test_bench_manifest(tmp_path, capsys):
    sizes = {}
    man_lines = []
    for c in (5, 15, 30):
        fa = _write(tmp_path / f"s{c}.fa", generate_mutated_corpus(2000, c, 0.001, seed=11))
        man_lines.append(f"s{c} {fa}")
        sizes[c] = os.path.getsize(fa)
    manifest = _write(tmp_path / "man.txt", "\n".join(man_lines).encode())
    outdir = str(tmp_path / "bench")
    assert main(["bench", "--manifest", manifest, "--out", outdir]) == 0
    rows = capsys.readouterr().out.strip().splitlines()
    assert rows[0] == CSV_HEADER and len(rows) == 4
    inputs = [int(r.split(",")[1]) for r in rows[1:]]
    index_sizes = [int(r.split(",")[4]) for r in rows[1:]]
    assert inputs == sorted(inputs)
    assert index_sizes == sorted(index_sizes)

    # rerun: identical apart from the time and memory columns
    assert main(["bench", "--manifest", manifest, "--out", outdir]) == 0
    rows2 = capsys.readouterr().out.strip().splitlines()

    def strip_volatile(row):
        parts = row.split(",")
        return parts[:2] + parts[4:]

    assert [strip_volatile(r) for r in rows] == [strip_volatile(r) for r in rows2]


def test_bench_empty_manifest(tmp_path, capsys):
    manifest = _write(tmp_path / "empty.txt", b"# nothing here\n")
    assert main(["bench", "--manifest", manifest, "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out == [CSV_HEADER]


def test_bench_missing_dataset_marked_failed(tmp_path, capsys):
    manifest = _write(tmp_path / "m.txt", b"gone /nonexistent/x.fa\n")
    assert main(["bench", "--manifest", manifest, "--out", str(tmp_path)]) == 0
    rows = capsys.readouterr().out.strip().splitlines()
    assert rows[1].startswith("gone,failed")


def test_build_error_cleans_partial_outputs(tmp_path, capsys):
    fa = _write(tmp_path / "bad.fa", b">only-header\n")
    out = str(tmp_path / "bad.pfwg")
    assert main(["build", fa, "--out", out]) == 1
    err = capsys.readouterr().err
    assert "[ingest]" in err  # errors carry their pipeline stage
    assert not os.path.exists(out)
    assert not os.path.exists(out + ".meta")


def test_build_reads_stdin(tmp_path, capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", type("S", (), {"buffer": io.BytesIO(EXAMPLE_FASTA)})())
    out = str(tmp_path / "stdin.pfwg")
    assert main(["build", "-", "-w", "1", "--trigger-set", "A", "--out", out]) == 0
    capsys.readouterr()
    assert main(["decode", out]) == 0
    assert capsys.readouterr().out.strip() == "#ACTAGTACTAGTA$"


def test_build_error_names_failing_stage(tmp_path, capsys):
    fa = _write(tmp_path / "s.fa", b">s\nACGTACGT\n")
    out = str(tmp_path / "s.pfwg")
    assert main(["build", fa, "-w", "2", "--trigger-set", "ACG", "--out", out]) == 1
    assert "[parse]" in capsys.readouterr().err
