"""Packed GF(2) vectors and the Kronecker (butterfly) transform.

Bit ``c`` of a Python int is coordinate ``c + 1`` of a length-``N`` vector.  Row
``i`` of F_N has ones exactly at the columns ``c`` that are bit-subsets of ``i - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class BitVector:
    length: int
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits do not fit in length {self.length}")

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def __getitem__(self, c: int) -> int:
        if not 0 <= c < self.length:
            raise IndexError(c)
        return self.bits >> c & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if other.length != self.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    def to_list(self) -> list[int]:
        return [self.bits >> c & 1 for c in range(self.length)]

    @classmethod
    def from_list(cls, values: Sequence[int]) -> "BitVector":
        bits = 0
        for c, v in enumerate(values):
            if v not in (0, 1):
                raise ValueError(f"entry {c} is not a bit: {v!r}")
            bits |= v << c
        return cls(len(values), bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.to_list())


@lru_cache(maxsize=None)
def _level_masks(m: int) -> tuple[int, ...]:
    """For each level t, the positions c < 2^m with bit t of c clear."""
    n = 1 << m
    out = []
    for t in range(m):
        block = (1 << (1 << t)) - 1  # 2^t ones, then 2^t zeros, repeated
        period = 1 << (t + 1)
        mask = 0
        for start in range(0, n, period):
            mask |= block << start
        out.append(mask)
    return tuple(out)


def butterfly(u: int, m: int) -> int:
    """``u . F_N`` over GF(2) for a packed row vector ``u`` (superset-sum transform)."""
    for t, mask in enumerate(_level_masks(m)):
        u ^= (u >> (1 << t)) & mask
    return u


def f_row(m: int, row: int) -> int:
    """Row ``row`` (1-based) of F_N as a packed int."""
    return butterfly(1 << (row - 1), m)


def kronecker_power(m: int) -> np.ndarray:
    """Dense F_N built by repeated Kronecker products; used only by tests and oracles."""
    kernel = np.array([[1, 0], [1, 1]], dtype=np.uint8)
    out = np.ones((1, 1), dtype=np.uint8)
    for _ in range(m):
        out = np.kron(out, kernel)
    return out


def words_needed(n: int) -> int:
    return max(1, (n + 63) // 64)


def int_to_words(x: int, n_words: int) -> np.ndarray:
    return np.array([(x >> (64 * w)) & 0xFFFFFFFFFFFFFFFF for w in range(n_words)], dtype=np.uint64)


def ints_to_words(xs: Iterable[int], n_words: int) -> np.ndarray:
    xs = list(xs)
    out = np.zeros((len(xs), n_words), dtype=np.uint64)
    for k, x in enumerate(xs):
        out[k] = int_to_words(x, n_words)
    return out


def popcount_rows(arr: np.ndarray) -> np.ndarray:
    """Hamming weight of each packed row of a ``(..., W)`` uint64 array."""
    return np.bitwise_count(arr).sum(axis=-1, dtype=np.int64)


_WORD_MASKS = tuple(
    np.uint64(sum(1 << c for c in range(64) if not c >> t & 1)) for t in range(6)
)


def butterfly_words(arr: np.ndarray, m: int) -> np.ndarray:
    """Vectorised :func:`butterfly` over rows of a packed ``(S, W)`` uint64 array (in place)."""
    for t in range(min(m, 6)):
        arr ^= (arr >> np.uint64(1 << t)) & _WORD_MASKS[t]
    n_words = arr.shape[-1]
    for t in range(6, m):
        step = 1 << (t - 6)
        view = arr.reshape(arr.shape[0], n_words // (2 * step), 2, step)
        view[:, :, 0, :] ^= view[:, :, 1, :]
    return arr
