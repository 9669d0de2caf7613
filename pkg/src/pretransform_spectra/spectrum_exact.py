"""Brute-force ground truth: fixed-code spectra, induced counts and row-weight laws.

Everything here enumerates codewords or matrices directly and never uses the
recursions of :mod:`pretransform_spectra.spectrum_avg`, so the two modules can
check each other.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import prng
from .bits import butterfly_words, f_row, int_to_words, popcount_rows, words_needed
from .dyadic import Dyadic
from .monomial import CodeSpec, DomainError
from .transform import TransformMatrix, generator_rows

MAX_K = 26
MAX_BELOW = 24
BLOCK_BITS = 14


class EnumerationGuardError(DomainError):
    pass


@dataclass(frozen=True)
class WeightSpectrum:
    """Codeword counts by Hamming weight; ``counts[d]`` for ``d = 0 .. N``."""

    counts: tuple[int, ...]

    @property
    def N(self) -> int:
        return len(self.counts) - 1

    def __getitem__(self, d: int) -> int:
        return self.counts[d] if 0 <= d < len(self.counts) else 0

    def as_dict(self) -> dict[int, int]:
        return {d: c for d, c in enumerate(self.counts) if c}

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def d_min(self) -> int | None:
        return next((d for d, c in enumerate(self.counts) if d and c), None)

    def cumulative(self, d: int) -> int:
        """Nonzero codewords of weight at most ``d``."""
        return sum(self.counts[1 : d + 1])

    def to_csv(self) -> str:
        lines = ["d,count"]
        lines += [f"{d},{c}" for d, c in enumerate(self.counts) if c]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RowWeightDistribution:
    """Law of ``w(g_N^(i))`` under the random upper-triangular ensemble.

    Exact mode stores :class:`Dyadic` probabilities; Monte-Carlo mode stores floats
    together with per-bin standard errors.
    """

    row: int
    probs: dict[int, Dyadic | float]
    stderr: dict[int, float] | None = None
    samples: int | None = None
    counts: dict[int, int] = field(default_factory=dict)

    def __getitem__(self, d: int):
        if d in self.probs:
            return self.probs[d]
        return Dyadic(0) if self.stderr is None else 0.0

    def support(self) -> list[int]:
        return sorted(d for d, p in self.probs.items() if p)


def _check_guard(bits: int, limit: int, what: str) -> None:
    if bits > limit:
        raise EnumerationGuardError(
            f"{what} needs 2^{bits} enumerations, above the guard 2^{limit}; "
            "raise the guard explicitly if the runtime is acceptable, or use the "
            "ensemble-average (polynomial-time) routines instead"
        )


def _weight_histograms(
    rows: Sequence[int],
    n: int,
    offset: int = 0,
    induced: bool = False,
    threads: int = 1,
    block_bits: int = BLOCK_BITS,
) -> tuple[np.ndarray, np.ndarray | None]:
    """Histogram of ``w(offset + sum_j u_j rows[j])`` over all ``u``.

    The last ``block_bits`` rows are expanded into a block of ``2^B`` words by
    doubling (one XOR per word); the leading rows are then walked in Gray-code
    order so that each step XORs a single row into the running prefix.  With
    ``induced`` the histogram is also split by the first nonzero ``u_j``.
    """
    K = len(rows)
    B = min(K, block_bits)
    top, block_rows = list(rows[: K - B]), list(rows[K - B :])
    W = words_needed(n)
    block = int_to_words(offset, W)[None, :]
    for row in reversed(block_rows):
        block = np.concatenate([block, block ^ int_to_words(row, W)[None, :]])
    top_words = [int_to_words(r, W) for r in top]
    hist = np.zeros(n + 1, dtype=np.int64)
    ind = np.zeros((K, n + 1), dtype=np.int64) if induced else None

    def run(start: int, stop: int) -> tuple[np.ndarray, np.ndarray | None]:
        h = np.zeros(n + 1, dtype=np.int64)
        loc = np.zeros((K, n + 1), dtype=np.int64) if induced else None
        gray = start ^ (start >> 1)
        prefix = np.zeros(W, dtype=np.uint64)
        for j in range(len(top)):
            if gray >> j & 1:
                prefix ^= top_words[j]
        for s in range(start, stop):
            if s != start:
                j = (s & -s).bit_length() - 1
                prefix ^= top_words[j]
                gray ^= 1 << j
            w = popcount_rows(block ^ prefix)
            counts = np.bincount(w, minlength=n + 1)
            h += counts
            if loc is not None:
                if gray:
                    loc[(gray & -gray).bit_length() - 1] += counts
                else:
                    for t in range(B):
                        loc[K - 1 - t] += np.bincount(w[1 << t : 2 << t], minlength=n + 1)
        return h, loc

    total = 1 << len(top)
    threads = max(1, min(threads, total))
    bounds = [total * k // threads for k in range(threads + 1)]
    if threads == 1:
        parts = [run(0, total)]
    else:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda ab: run(*ab), zip(bounds, bounds[1:])))
    for h, loc in parts:
        hist += h
        if ind is not None:
            ind += loc
    return hist, ind


def gray_codewords(spec: CodeSpec, t: TransformMatrix) -> Iterator[tuple[int, int]]:
    """Yield ``(message, codeword)`` for all ``2^K`` messages in Gray-code order.

    Bit ``j`` of ``message`` is the ``j``-th information bit; each step XORs one row.
    """
    rows = generator_rows(spec, t)
    msg = cw = 0
    yield msg, cw
    for s in range(1, 1 << len(rows)):
        j = (s & -s).bit_length() - 1
        msg ^= 1 << j
        cw ^= rows[j]
        yield msg, cw


def exact_spectrum(
    spec: CodeSpec, t: TransformMatrix, max_k: int = MAX_K, threads: int = 1
) -> WeightSpectrum:
    if t.N != spec.N:
        raise DomainError(f"transform has N={t.N}, code has N={spec.N}")
    _check_guard(spec.K, max_k, f"exact spectrum of {spec.describe()}")
    hist, _ = _weight_histograms(generator_rows(spec, t), spec.N, threads=threads)
    return WeightSpectrum(tuple(int(c) for c in hist))


def induced_table(spec: CodeSpec, t: TransformMatrix, max_k: int = MAX_K) -> dict[int, np.ndarray]:
    """Per information row, the weight histogram of codewords whose first nonzero message bit sits there."""
    if t.N != spec.N:
        raise DomainError(f"transform has N={t.N}, code has N={spec.N}")
    _check_guard(spec.K, max_k, f"induced counts of {spec.describe()}")
    _, ind = _weight_histograms(generator_rows(spec, t), spec.N, induced=True)
    assert ind is not None
    return {row: ind[j] for j, row in enumerate(spec.info_rows)}


def induced_counts(spec: CodeSpec, t: TransformMatrix, d: int, max_k: int = MAX_K) -> dict[int, int]:
    table = induced_table(spec, t, max_k)
    return {row: int(h[d]) if 0 <= d <= spec.N else 0 for row, h in table.items()}


def exact_row_distribution(m: int, i: int, max_below: int = MAX_BELOW) -> RowWeightDistribution:
    """Enumerate all ``2^(N-i)`` subsets of the rows below ``i`` (each equally likely)."""
    n = 1 << m
    if not 1 <= i <= n:
        raise DomainError(f"row {i} out of range [1, {n}]")
    below = n - i
    _check_guard(below, max_below, f"row distribution of row {i} (m={m})")
    rows = [f_row(m, j) for j in range(i + 1, n + 1)]
    hist, _ = _weight_histograms(rows, n, offset=f_row(m, i))
    probs = {d: Dyadic(int(c), below) for d, c in enumerate(hist) if c}
    return RowWeightDistribution(i, probs, counts={d: int(c) for d, c in enumerate(hist) if c})


def mc_row_distribution(
    m: int, i: int, samples: int, seed: int = 0, batch: int = 1 << 15
) -> RowWeightDistribution:
    """Monte-Carlo estimate of the row-weight law.

    Sample ``s`` draws its subset from PRNG stream ``(i << 40) | s``: row ``j > i``
    joins iff random bit ``j - 1`` is set.
    """
    n = 1 << m
    if not 1 <= i <= n:
        raise DomainError(f"row {i} out of range [1, {n}]")
    if samples < 1:
        raise DomainError("samples must be >= 1")
    W = words_needed(n)
    below_mask = int_to_words(((1 << n) - 1) & ~((1 << i) - 1), W)
    own = int_to_words(1 << (i - 1), W)
    hist = np.zeros(n + 1, dtype=np.int64)
    for start in range(0, samples, batch):
        stop = min(samples, start + batch)
        streams = (np.uint64(i) << np.uint64(40)) | np.arange(start, stop, dtype=np.uint64)
        u = (prng.words_np(seed, streams, W) & below_mask) | own
        butterfly_words(u, m)
        hist += np.bincount(popcount_rows(u), minlength=n + 1)
    probs = {d: c / samples for d, c in enumerate(hist.tolist()) if c}
    err = {d: math.sqrt(p * (1 - p) / samples) for d, p in probs.items()}
    return RowWeightDistribution(
        i, probs, stderr=err, samples=samples, counts={d: int(c) for d, c in enumerate(hist) if c}
    )


def _info_upper_bits(spec: CodeSpec) -> list[tuple[int, int]]:
    """(row0, col0) of every strictly-upper entry of T in an information row."""
    return [(r - 1, c) for r in spec.info_rows for c in range(r, spec.N)]


def ensemble_average_literal(spec: CodeSpec, max_bits: int = 16) -> list[Dyadic]:
    """Average of :func:`exact_spectrum` over every setting of the T entries in information rows.

    Entries in frozen rows never reach a codeword, so they are left at zero.
    """
    positions = _info_upper_bits(spec)
    _check_guard(len(positions), max_bits, "literal ensemble average")
    total = np.zeros(spec.N + 1, dtype=object)
    for a in range(1 << len(positions)):
        upper = [0] * spec.N
        for k, (r0, c) in enumerate(positions):
            if a >> k & 1:
                upper[r0] |= 1 << c
        total += np.array(exact_spectrum(spec, TransformMatrix(spec.N, tuple(upper))).counts, dtype=object)
    return [Dyadic(int(c), len(positions)) for c in total]


def ensemble_average_exhaustive(spec: CodeSpec, chunk: int = 1 << 13) -> list[Dyadic]:
    """Same quantity as :func:`ensemble_average_literal`, organised for N <= 8.

    The matrix entries of every information row except the first are enumerated
    outright.  For the first row the sum over its ``2^(N - I_1)`` settings is
    exchanged with the sum over the coset ``g_{I_1} + span(rest)`` through a
    precomputed table ``table[c][w] = #{settings : w(c + g_{I_1}) = w}``.
    Nothing is sampled and no recursion on weights is used.
    """
    n, m = spec.N, spec.m
    if n > 8:
        raise EnumerationGuardError("exhaustive ensemble average is limited to N <= 8")
    if not spec.info_rows:
        return [Dyadic(1)] + [Dyadic(0)] * n
    f = [f_row(m, r) for r in range(1, n + 1)]
    first = spec.info_rows[0] - 1
    first_choices = [f[first]]
    for c in range(first + 1, n):
        first_choices += [g ^ f[c] for g in first_choices]
    b_first = n - 1 - first
    values = np.arange(1 << n, dtype=np.uint64)
    table = np.zeros((1 << n, n + 1), dtype=np.int64)
    for g in first_choices:
        np.add.at(table, (values.astype(np.int64), np.bitwise_count(values ^ np.uint64(g)).astype(np.int64)), 1)

    rest = [r - 1 for r in spec.info_rows[1:]]
    offsets, off = [], 0
    for r0 in rest:
        offsets.append(off)
        off += n - 1 - r0
    b_rest = off
    hist_rest = np.zeros(n + 1, dtype=np.int64)
    coset = np.zeros(n + 1, dtype=np.int64)
    for start in range(0, 1 << b_rest, chunk):
        idx = np.arange(start, min(1 << b_rest, start + chunk), dtype=np.uint64)
        codes = np.zeros((len(idx), 1), dtype=np.uint64)
        for r0, o in zip(rest, offsets):
            g = np.full(len(idx), f[r0], dtype=np.uint64)
            for b, c in enumerate(range(r0 + 1, n)):
                bit = (idx >> np.uint64(o + b)) & np.uint64(1)
                g ^= bit * np.uint64(f[c])
            codes = np.concatenate([codes, codes ^ g[:, None]], axis=1)
        flat = codes.ravel()
        hist_rest += np.bincount(np.bitwise_count(flat).astype(np.int64), minlength=n + 1)
        coset += np.bincount(flat.astype(np.int64), minlength=1 << n) @ table
    total = hist_rest * (1 << b_first) + coset
    return [Dyadic(int(c), b_first + b_rest) for c in total]
