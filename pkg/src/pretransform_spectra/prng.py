"""Counter-mode SplitMix64.

Every random word is a pure function of ``(seed, stream, counter)``:

    key  = splitmix64(seed ^ splitmix64(stream))
    word = splitmix64(key ^ counter)

with ``splitmix64(x)`` the standard Steele/Lea/Flood finaliser applied to
``x + 0x9E3779B97F4A7C15``.  Results therefore do not depend on evaluation order
or on how work is split between threads.  Bit ``b`` of the random bit-string for
a stream is bit ``b % 64`` of the word with counter ``b // 64``.
"""

from __future__ import annotations

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15
MUL1 = 0xBF58476D1CE4E5B9
MUL2 = 0x94D049BB133111EB


def splitmix64(x: int) -> int:
    z = (x + GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * MUL1) & MASK64
    z = ((z ^ (z >> 27)) * MUL2) & MASK64
    return z ^ (z >> 31)


def stream_key(seed: int, stream: int) -> int:
    return splitmix64((seed & MASK64) ^ splitmix64(stream & MASK64))


def word(seed: int, stream: int, counter: int) -> int:
    return splitmix64(stream_key(seed, stream) ^ (counter & MASK64))


def bits(seed: int, stream: int, n: int) -> int:
    """The first ``n`` bits of a stream packed into an int (bit b = random bit b)."""
    out = 0
    key = stream_key(seed, stream)
    for c in range((n + 63) // 64):
        out |= splitmix64(key ^ c) << (64 * c)
    return out & ((1 << n) - 1)


def _splitmix64_np(x: np.ndarray) -> np.ndarray:
    z = x + np.uint64(GOLDEN)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(MUL1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(MUL2)
    return z ^ (z >> np.uint64(31))


def words_np(seed: int, streams: np.ndarray, n_words: int) -> np.ndarray:
    """``(len(streams), n_words)`` array of words, counters ``0 .. n_words - 1``."""
    streams = np.asarray(streams, dtype=np.uint64)
    with np.errstate(over="ignore"):
        keys = _splitmix64_np(np.uint64(seed & MASK64) ^ _splitmix64_np(streams))
        counters = np.arange(n_words, dtype=np.uint64)
        return _splitmix64_np(keys[:, None] ^ counters[None, :])
