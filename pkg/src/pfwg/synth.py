"""Seeded synthetic corpora: near-identical copies of a random DNA base
sequence with point mutations, written as FASTA. Keeps acceptance and bench
runs self-contained."""

import numpy as np

_BASES = b"ACGT"


def random_base_sequence(length: int, rng) -> bytes:
    return bytes(rng.choice(np.frombuffer(_BASES, dtype=np.uint8), size=length))


def mutate(seq: bytes, rate: float, rng) -> bytes:
    arr = np.frombuffer(seq, dtype=np.uint8).copy()
    n_mut = rng.binomial(arr.size, rate)
    if n_mut:
        sites = rng.choice(arr.size, size=n_mut, replace=False)
        for s in sites:
            choices = [b for b in _BASES if b != arr[s]]
            arr[s] = choices[rng.integers(len(choices))]
    return arr.tobytes()


def generate_mutated_corpus(base_length=10_000, copies=10, mutation_rate=0.001, seed=0) -> bytes:
    """FASTA with `copies` records: one base sequence plus mutated copies."""
    rng = np.random.default_rng(seed)
    base = random_base_sequence(base_length, rng)
    records = []
    for i in range(copies):
        body = base if i == 0 else mutate(base, mutation_rate, rng)
        records.append(b">copy%d\n" % i + body + b"\n")
    return b"".join(records)
