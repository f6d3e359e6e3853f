import numpy as np
import pytest

from oracles import brute_rotation_bwt, brute_suffix_array_1based
from pfwg.errors import CorruptionError, ParameterError
from pfwg.suffix_bwt import (
    BwtString,
    build_suffix_array,
    bwt_from_sa,
    invert_bwt,
    lf_map,
    naive_bwt_oracle,
)


def _bwt(text: bytes) -> BwtString:
    return bwt_from_sa(text, build_suffix_array(text))


def test_suffix_array_banana():
    assert brute_suffix_array_1based(b"banana$") == [7, 6, 4, 2, 1, 5, 3]
    assert build_suffix_array(b"banana$").sa.tolist() == [7, 6, 4, 2, 1, 5, 3]


def test_suffix_array_two_suffixes():
    assert build_suffix_array(b"a$").sa.tolist() == [2, 1]


def test_suffix_array_serialization():
    sa = build_suffix_array(b"banana$")
    assert sa.to_bytes() == np.array([7, 6, 4, 2, 1, 5, 3], dtype="<u8").tobytes()


def test_suffix_array_unary():
    assert build_suffix_array(b"aaaa$").sa.tolist() == [5, 4, 3, 2, 1]


def test_suffix_array_is_bijection():
    rng = np.random.default_rng(4)
    for _ in range(100):
        n = int(rng.integers(1, 300))
        body = bytes(rng.integers(ord("a"), ord("e"), size=n).astype(np.uint8))
        text = body + b"$"
        sa = build_suffix_array(text).sa
        assert sorted(sa.tolist()) == list(range(1, len(text) + 1))
        assert sa.tolist() == brute_suffix_array_1based(text)


def test_suffix_array_rejects_bad_terminator():
    with pytest.raises(ParameterError):
        build_suffix_array(b"banana")  # 'a' smallest but not unique/last
    with pytest.raises(ParameterError):
        build_suffix_array(b"ba$na$")


def test_bwt_examples():
    assert _bwt(b"ACGTCGTT$").to_bytes() == brute_rotation_bwt(b"ACGTCGTT$") == b"T$ATCCTGG"
    assert _bwt(b"a$").to_bytes() == b"a$"
    assert _bwt(b"banana$").to_bytes() == brute_rotation_bwt(b"banana$") == b"annb$aa"


def test_bwt_multiset_preserved():
    text = b"mississippi$"
    bwt = _bwt(text)
    assert sorted(bwt.to_bytes()) == sorted(text)
    assert bwt.char_counts[ord("$")] == 1


def test_invert_examples():
    bwt = BwtString(np.frombuffer(b"annb$aa", np.uint8).astype(np.int64),
                    np.bincount(np.frombuffer(b"annb$aa", np.uint8)))
    assert invert_bwt(bwt).astype(np.uint8).tobytes() == b"banana$"
    assert invert_bwt(_bwt(b"a$")).astype(np.uint8).tobytes() == b"a$"


def test_invert_roundtrip_random():
    rng = np.random.default_rng(21)
    for _ in range(1000):
        n = int(rng.integers(0, 511))
        sigma = int(rng.choice([2, 4, 26]))
        body = bytes(rng.integers(ord("a"), ord("a") + sigma, size=n).astype(np.uint8))
        text = body + b"$"
        out = invert_bwt(_bwt(text))
        assert out.astype(np.uint8).tobytes() == text


def test_invert_rejects_invalid():
    data = np.frombuffer(b"abab$", np.uint8).astype(np.int64)
    bad = BwtString(data, np.bincount(data))
    with pytest.raises(CorruptionError):
        invert_bwt(bad)
    dup = np.frombuffer(b"a$$", np.uint8).astype(np.int64)
    with pytest.raises(CorruptionError):
        invert_bwt(BwtString(dup, np.bincount(dup)))


def test_naive_oracle_trivial():
    assert naive_bwt_oracle(b"$").to_bytes() == b"$"
    assert naive_bwt_oracle(b"ACGTCGTT$").to_bytes() == b"T$ATCCTGG"


def test_naive_oracle_agrees_with_sa_path():
    rng = np.random.default_rng(8)
    for _ in range(1000):
        n = int(rng.integers(0, 128))
        sigma = int(rng.choice([2, 4, 26]))
        body = bytes(rng.integers(ord("a"), ord("a") + sigma, size=n).astype(np.uint8))
        text = body + b"$"
        assert naive_bwt_oracle(text).to_bytes() == _bwt(text).to_bytes()


def test_lf_preserves_symbol_rank():
    bwt = _bwt(b"mississippi$")
    lf = lf_map(bwt)
    n = len(bwt)
    first_col = np.sort(bwt.data)
    seen = {}
    for i in range(n):
        c = int(bwt.data[i])
        k = seen.get(c, 0)
        seen[c] = k + 1
        # k-th occurrence of c in bwt maps to the k-th occurrence in the first column
        j = int(lf[i])
        assert first_col[j] == c
        assert int(np.sum(first_col[:j] == c)) == k
