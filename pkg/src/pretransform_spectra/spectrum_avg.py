"""Ensemble-average weight spectra in polynomial time.

``row_weight_prob(m, f, d)`` is the probability that row ``I_f`` of ``G_N = T F_N``
has weight ``d`` when the strictly-upper entries of ``T`` are fair coins.  It does
not depend on the code, so one memo table serves every information set.

Splitting ``F_N`` into halves gives the recursion used throughout:

* ``x_{m-1}`` absent (row in the lower half): ``g = (b, b)`` with ``b`` a random row of
  ``G_{N/2}``, so ``P(m, f, d) = P(m-1, f, d/2)``.
* ``x_{m-1}`` present (upper half): ``g = (a + b, b)`` with ``a`` the row of ``f / x_{m-1}``
  and ``b`` uniform on ``F_2^{N/2}``, giving
  ``P(m, f, d) = sum_{d'} P(m-1, f', d') 2^{d' - N/2} C(N/2 - d', (d - d')/2)``.

The average spectrum is then ``E N(d, T) = sum_j 2^{K-j} P(m, I_j, d)``.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable

from .dyadic import ZERO, Dyadic, dyadic_sum, log2_sum_exp
from .monomial import CodeSpec, DomainError, Monomial, is_decreasing, monomial_from_row, rbar

LogValue = float


@lru_cache(maxsize=None)
def _dist(level: int, mask: int, cap: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Row-weight law truncated to ``d <= cap`` as ``(e, ((d, num), ...))``, P(d) = num / 2^e."""
    if cap < 1 << (level - mask.bit_count()):
        return 0, ()
    if level == 0:
        return 0, ((1, 1),)
    half = 1 << (level - 1)
    top = 1 << (level - 1)
    if not mask & top:
        e, entries = _dist(level - 1, mask, cap // 2)
        return e, tuple((2 * d, num) for d, num in entries)
    e, entries = _dist(level - 1, mask ^ top, cap)
    acc: dict[int, int] = {}
    for d0, num in entries:
        free = half - d0
        scaled = num << d0
        binom = 1
        for j in range(min(free, (cap - d0) // 2) + 1):
            if j:
                binom = binom * (free - j + 1) // j
            d = d0 + 2 * j
            acc[d] = acc.get(d, 0) + scaled * binom
    out = sorted((d, v) for d, v in acc.items() if v)
    e += half
    if out:
        tz = min((v & -v).bit_length() - 1 for _, v in out)
        tz = min(tz, e)
        if tz:
            out = [(d, v >> tz) for d, v in out]
            e -= tz
    return e, tuple(out)


def _check_monomial(m: int, f: Monomial) -> None:
    if f.m != m:
        raise DomainError(f"monomial over {f.m} variables used with m={m}")


def row_weight_prob(m: int, f: Monomial, d: int) -> Dyadic:
    _check_monomial(m, f)
    if not 0 <= d <= 1 << m:
        raise DomainError(f"weight {d} outside [0, {1 << m}]")
    e, entries = _dist(m, f.mask, d)
    for dd, num in entries:
        if dd == d:
            return Dyadic(num, e)
    return ZERO


def row_weight_law(m: int, f: Monomial, cap: int | None = None) -> dict[int, Dyadic]:
    """All nonzero ``P(m, f, d)`` with ``d <= cap`` (default: the whole law)."""
    _check_monomial(m, f)
    cap = 1 << m if cap is None else cap
    e, entries = _dist(m, f.mask, cap)
    return {d: Dyadic(num, e) for d, num in entries}


def min_weight_logprob_closed(f: Monomial) -> int:
    """``log2 P(m, f, 2^(m - deg f))`` as ``sum_s (2^(i_s - s) - 2^(i_s))``."""
    return sum((1 << (i - s)) - (1 << i) for s, i in enumerate(f.indices))


def info_after(spec: CodeSpec, i: int) -> int:
    """Number of information rows strictly greater than ``i``."""
    if not 1 <= i <= spec.N:
        raise DomainError(f"row {i} out of range [1, {spec.N}]")
    import bisect

    return spec.K - bisect.bisect_right(spec.info_rows, i)


def lemma1_info_after(f: Monomial) -> int:
    """Closed form of :func:`info_after` for a degree-``r`` row of RM(m, r), with ``r = deg f``."""
    return sum(math.comb(i, t) for s, i in enumerate(f.indices) for t in range(s + 2))


def _check_weight(spec: CodeSpec, d: int) -> None:
    if not 0 < d <= spec.N:
        raise DomainError(f"weight {d} outside (0, {spec.N}]")


def _rows_reaching(spec: CodeSpec, d: int) -> Iterable[tuple[Monomial, int]]:
    K = spec.K
    for j, row in enumerate(spec.info_rows):
        f = monomial_from_row(spec.m, row)
        if f.weight <= d:
            yield f, K - 1 - j


def avg_num_weight_d(spec: CodeSpec, d: int) -> Dyadic:
    """Exact ``E N(d, T)``."""
    _check_weight(spec, d)
    terms = []
    for f, after in _rows_reaching(spec, d):
        e, entries = _dist(spec.m, f.mask, d)
        for dd, num in entries:
            if dd == d:
                terms.append((num, e - after))
    return dyadic_sum(terms)


def avg_spectrum(spec: CodeSpec, d_max: int | None = None) -> list[Dyadic]:
    """``[E N(0, T), ..., E N(d_max, T)]`` sharing one DP pass per row (``E N(0, T) = 1``)."""
    d_max = spec.N if d_max is None else d_max
    _check_weight(spec, d_max)
    per_d: dict[int, list[tuple[int, int]]] = {}
    for f, after in _rows_reaching(spec, d_max):
        e, entries = _dist(spec.m, f.mask, d_max)
        for dd, num in entries:
            per_d.setdefault(dd, []).append((num, e - after))
    return [Dyadic(1)] + [dyadic_sum(per_d.get(d, ())) for d in range(1, d_max + 1)]


def avg_cum_weight(spec: CodeSpec, d: int) -> Dyadic:
    """Exact ``E A(d, T)``: nonzero codewords of weight at most ``d``."""
    _check_weight(spec, d)
    terms = []
    for f, after in _rows_reaching(spec, d):
        e, entries = _dist(spec.m, f.mask, d)
        terms.extend((num, e - after) for _, num in entries)
    return dyadic_sum(terms)


def min_weight_count_original(spec: CodeSpec) -> int:
    """Minimum-weight codeword count of the un-transformed decreasing code."""
    if not is_decreasing(spec):
        raise DomainError(f"{spec.describe()} is not decreasing; the closed form does not apply")
    top = rbar(spec)
    return sum(
        1 << sum(i - s + 1 for s, i in enumerate(f.indices))
        for f in spec.monomials
        if f.degree == top
    )


# --- log domain -------------------------------------------------------------


def _log2_comb(n: int, k: int) -> float:
    if k < 0 or k > n:
        return -math.inf
    if n < 1024:
        return math.log2(math.comb(n, k))
    return (math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)) / math.log(2)


@lru_cache(maxsize=None)
def _log_dist(level: int, mask: int, cap: int) -> tuple[tuple[int, float], ...]:
    """Log-domain twin of :func:`_dist`: ``((d, log2 P), ...)``."""
    if cap < 1 << (level - mask.bit_count()):
        return ()
    if level == 0:
        return ((1, 0.0),)
    half = 1 << (level - 1)
    top = 1 << (level - 1)
    if not mask & top:
        return tuple((2 * d, lp) for d, lp in _log_dist(level - 1, mask, cap // 2))
    acc: dict[int, list[float]] = {}
    for d0, lp in _log_dist(level - 1, mask ^ top, cap):
        free = half - d0
        base = lp + d0 - half
        for j in range(min(free, (cap - d0) // 2) + 1):
            acc.setdefault(d0 + 2 * j, []).append(base + _log2_comb(free, j))
    return tuple(sorted((d, log2_sum_exp(v)) for d, v in acc.items()))


def log_row_weight_prob(m: int, f: Monomial, d: int) -> LogValue:
    _check_monomial(m, f)
    for dd, lp in _log_dist(m, f.mask, d):
        if dd == d:
            return lp
    return -math.inf


def log_avg_num_weight_d(spec: CodeSpec, d: int) -> LogValue:
    _check_weight(spec, d)
    vals = []
    for f, after in _rows_reaching(spec, d):
        for dd, lp in _log_dist(spec.m, f.mask, d):
            if dd == d:
                vals.append(lp + after)
    return log2_sum_exp(vals)


def log_avg_spectrum(spec: CodeSpec, d_max: int | None = None) -> list[LogValue]:
    """Log-domain twin of :func:`avg_spectrum`; index 0 holds ``log2 1 = 0``."""
    d_max = spec.N if d_max is None else d_max
    _check_weight(spec, d_max)
    per_d: dict[int, list[float]] = {}
    for f, after in _rows_reaching(spec, d_max):
        for dd, lp in _log_dist(spec.m, f.mask, d_max):
            per_d.setdefault(dd, []).append(lp + after)
    return [0.0] + [log2_sum_exp(per_d.get(d, ())) for d in range(1, d_max + 1)]


def log_avg_cum_weight(spec: CodeSpec, d: int) -> LogValue:
    _check_weight(spec, d)
    vals = []
    for f, after in _rows_reaching(spec, d):
        vals.extend(lp + after for _, lp in _log_dist(spec.m, f.mask, d))
    return log2_sum_exp(vals)


def clear_caches() -> None:
    _dist.cache_clear()
    _log_dist.cache_clear()
