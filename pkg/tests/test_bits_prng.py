import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pretransform_spectra import prng
from pretransform_spectra.bits import (
    BitVector,
    butterfly,
    butterfly_words,
    f_row,
    int_to_words,
    ints_to_words,
    kronecker_power,
    popcount_rows,
    words_needed,
)


def naive_multiply(u: int, m: int) -> int:
    """u F_N by summing rows, straight from the dense matrix."""
    F = kronecker_power(m)
    n = 1 << m
    vec = np.array([u >> c & 1 for c in range(n)], dtype=np.int64)
    out = (vec @ F) % 2
    return sum(int(b) << c for c, b in enumerate(out))


def test_kronecker_small():
    assert kronecker_power(1).tolist() == [[1, 0], [1, 1]]
    assert kronecker_power(0).tolist() == [[1]]


@pytest.mark.parametrize("m", range(0, 7))
def test_f_row_matches_dense(m):
    F = kronecker_power(m)
    for i in range(1, (1 << m) + 1):
        assert f_row(m, i) == sum(int(b) << c for c, b in enumerate(F[i - 1]))


@settings(max_examples=60)
@given(st.integers(0, 6).flatmap(lambda m: st.tuples(st.just(m), st.integers(0, (1 << (1 << m)) - 1))))
def test_butterfly_is_matrix_product(mu):
    m, u = mu
    assert butterfly(u, m) == naive_multiply(u, m)


@pytest.mark.parametrize("m", [3, 6, 7, 9])
def test_butterfly_words_matches_scalar(m):
    n = 1 << m
    rng = np.random.default_rng(m)
    vals = [int.from_bytes(rng.bytes((n + 7) // 8), "little") & ((1 << n) - 1) for _ in range(20)]
    arr = ints_to_words(vals, words_needed(n))
    butterfly_words(arr, m)
    got = [sum(int(w) << (64 * k) for k, w in enumerate(row)) for row in arr]
    assert got == [butterfly(v, m) for v in vals]
    assert popcount_rows(arr).tolist() == [g.bit_count() for g in got]


def test_butterfly_involution():
    # F_N is its own inverse over GF(2)
    for u in range(256):
        assert butterfly(butterfly(u, 3), 3) == u


def test_bitvector():
    v = BitVector.from_list([1, 0, 1, 1])
    assert v.weight == 3 and v[2] == 1 and str(v) == "1011"
    assert (v ^ v).weight == 0
    with pytest.raises(ValueError):
        BitVector(2, 4)
    with pytest.raises(ValueError):
        BitVector.from_list([2])


def test_words_roundtrip():
    x = (1 << 100) | 12345
    w = int_to_words(x, 2)
    assert sum(int(v) << (64 * k) for k, v in enumerate(w)) == x


def test_splitmix_reference():
    # first outputs of the reference SplitMix64 generator seeded with 0
    state = 0
    outs = []
    for _ in range(3):
        outs.append(prng.splitmix64(state))
        state = (state + prng.GOLDEN) & prng.MASK64
    assert outs == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_scalar_and_vector_agree():
    streams = np.array([0, 1, 5, 1 << 40, (3 << 40) | 17], dtype=np.uint64)
    arr = prng.words_np(99, streams, 3)
    for row, s in zip(arr, streams.tolist()):
        assert [int(v) for v in row] == [prng.word(99, s, c) for c in range(3)]
        assert sum(int(v) << (64 * k) for k, v in enumerate(row)) == prng.bits(99, s, 192)


def test_bits_deterministic_and_seed_sensitive():
    assert prng.bits(7, 3, 100) == prng.bits(7, 3, 100)
    assert prng.bits(7, 3, 100) != prng.bits(8, 3, 100)
    assert prng.bits(7, 3, 100) != prng.bits(7, 4, 100)
    assert prng.bits(7, 3, 10) == prng.bits(7, 3, 100) & 1023


def test_bits_roughly_fair():
    total = sum(prng.bits(1, s, 64).bit_count() for s in range(2000))
    assert abs(total / (2000 * 64) - 0.5) < 0.01
