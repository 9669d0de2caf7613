"""Monomial view of the rows of F_N and decreasing monomial codes.

Row ``i`` (1-based) of ``F_N = [[1, 0], [1, 1]]^{(x) m}`` is identified with the
monomial whose exponent vector is the binary expansion of ``N - i``.  A
monomial is stored as a bitmask over the variables ``x_0 .. x_{m-1}``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class DomainError(ValueError):
    """Raised when an argument falls outside the domain of an operation."""


class NonDecreasingWarning(UserWarning):
    pass


@dataclass(frozen=True, order=True)
class Monomial:
    m: int
    mask: int

    def __post_init__(self) -> None:
        if self.m < 0:
            raise DomainError(f"variable count must be >= 0, got {self.m}")
        if not 0 <= self.mask < (1 << self.m):
            raise DomainError(f"mask {self.mask} out of range for m={self.m}")

    @property
    def degree(self) -> int:
        return self.mask.bit_count()

    @property
    def indices(self) -> tuple[int, ...]:
        """Variable indices ``i_0 < i_1 < ... < i_{r-1}`` present in the monomial."""
        return tuple(t for t in range(self.m) if self.mask >> t & 1)

    @property
    def top(self) -> int:
        """Largest variable index, or -1 for the constant monomial."""
        return self.mask.bit_length() - 1

    @property
    def row(self) -> int:
        return row_from_monomial(self)

    @property
    def weight(self) -> int:
        return row_weight(self)

    def name(self) -> str:
        if not self.mask:
            return "1"
        return "".join(f"x{t}" for t in reversed(self.indices))

    def __str__(self) -> str:
        return self.name()

    @classmethod
    def from_indices(cls, m: int, indices: Iterable[int]) -> "Monomial":
        mask = 0
        for t in indices:
            if not 0 <= t < m:
                raise DomainError(f"variable index {t} out of range for m={m}")
            mask |= 1 << t
        return cls(m, mask)


def monomial_from_row(m: int, row: int) -> Monomial:
    n = 1 << m
    if not 1 <= row <= n:
        raise DomainError(f"row {row} out of range [1, {n}]")
    return Monomial(m, n - row)


def row_from_monomial(f: Monomial) -> int:
    return (1 << f.m) - f.mask


def row_weight(f: Monomial) -> int:
    """Hamming weight of the row of F_N represented by ``f``."""
    return 1 << (f.m - f.degree)


def all_monomials(m: int) -> list[Monomial]:
    return [Monomial(m, mask) for mask in range(1 << m)]


def _same_degree_leq(g: Sequence[int], f: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(g, f))


def leq(g: Monomial, f: Monomial) -> bool:
    """Partial order ``g <= f``: ``g`` is universally at least as reliable as ``f``."""
    if g.m != f.m:
        raise DomainError(f"monomials over different variable counts ({g.m} vs {f.m})")
    if g.degree > f.degree:
        return False
    gi = g.indices
    if g.degree == f.degree:
        return _same_degree_leq(gi, f.indices)
    # combinations() keeps the ascending order, so each divisor is already a profile
    return any(_same_degree_leq(gi, div) for div in combinations(f.indices, g.degree))


def lower_covers(f: Monomial) -> Iterator[Monomial]:
    """Elementary moves below ``f``: drop one variable, or shift one variable down by one.

    Every ``g <= f`` is reachable from ``f`` through a chain of these moves, so a set
    closed under them is decreasing.
    """
    mask = f.mask
    for t in range(f.m):
        if mask >> t & 1:
            yield Monomial(f.m, mask & ~(1 << t))
            if t > 0 and not mask >> (t - 1) & 1:
                yield Monomial(f.m, (mask & ~(1 << t)) | (1 << (t - 1)))


def decreasing_closure(monomials: Iterable[Monomial]) -> frozenset[Monomial]:
    """Smallest decreasing set containing ``monomials``."""
    seen: set[Monomial] = set()
    stack = list(monomials)
    ms = {f.m for f in stack}
    if len(ms) > 1:
        raise DomainError(f"monomials over different variable counts: {sorted(ms)}")
    while stack:
        f = stack.pop()
        if f in seen:
            continue
        seen.add(f)
        stack.extend(g for g in lower_covers(f) if g not in seen)
    return frozenset(seen)


def down_sets(m: int) -> Iterator[frozenset[Monomial]]:
    """Every decreasing subset of the ``2^m`` monomials (including the empty set).

    Elements are visited along a linear extension of the order (degree, then
    index sum); an element may join only when all of its lower covers are in.
    """
    order = sorted(all_monomials(m), key=lambda f: (f.degree, sum(f.indices), f.mask))
    covers = [frozenset(lower_covers(f)) for f in order]

    def rec(pos: int, chosen: frozenset[Monomial]) -> Iterator[frozenset[Monomial]]:
        if pos == len(order):
            yield chosen
            return
        yield from rec(pos + 1, chosen)
        if covers[pos] <= chosen:
            yield from rec(pos + 1, chosen | {order[pos]})

    yield from rec(0, frozenset())


@dataclass(frozen=True)
class CodeSpec:
    """Length exponent plus a sorted information set of 1-based row indices."""

    m: int
    info_rows: tuple[int, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        rows = tuple(int(r) for r in self.info_rows)
        object.__setattr__(self, "info_rows", rows)
        n = 1 << self.m
        if any(b <= a for a, b in zip(rows, rows[1:])):
            raise DomainError("information rows must be strictly increasing (no duplicates)")
        if rows and not (1 <= rows[0] and rows[-1] <= n):
            raise DomainError(f"information rows must lie in [1, {n}]")

    @classmethod
    def from_rows(cls, m: int, rows: Iterable[int], label: str = "") -> "CodeSpec":
        rows = list(rows)
        if len(set(rows)) != len(rows):
            raise DomainError("duplicate information rows")
        return cls(m, tuple(sorted(rows)), label)

    @classmethod
    def from_monomials(cls, m: int, monomials: Iterable[Monomial], label: str = "") -> "CodeSpec":
        return cls.from_rows(m, (row_from_monomial(f) for f in monomials), label)

    @property
    def N(self) -> int:
        return 1 << self.m

    @property
    def K(self) -> int:
        return len(self.info_rows)

    @cached_property
    def monomials(self) -> tuple[Monomial, ...]:
        return tuple(monomial_from_row(self.m, r) for r in self.info_rows)

    @cached_property
    def masks(self) -> frozenset[int]:
        return frozenset(self.N - r for r in self.info_rows)

    def __contains__(self, f: Monomial) -> bool:
        return f.m == self.m and f.mask in self.masks

    def describe(self) -> str:
        return self.label or f"code(m={self.m}, K={self.K})"


def is_decreasing(spec: CodeSpec) -> bool:
    masks = spec.masks
    return all(g.mask in masks for f in spec.monomials for g in lower_covers(f))


def construct_rm(m: int, r: int) -> CodeSpec:
    if not 0 <= r <= m:
        raise DomainError(f"RM order r={r} outside [0, {m}]")
    n = 1 << m
    rows = [n - mask for mask in range(n) if mask.bit_count() <= r]
    return CodeSpec.from_rows(m, rows, f"RM({m},{r})")


PW_BETA = 2 ** 0.25


def pw_score(m: int, row: int, beta: float = PW_BETA) -> float:
    """Polarization weight of the 1-based ``row``: sum of beta^j over the set bits of ``row - 1``."""
    idx = row - 1
    return math.fsum(beta ** j for j in range(m) if idx >> j & 1)


def construct_pw(m: int, K: int, beta: float = PW_BETA) -> CodeSpec:
    """The ``K`` most reliable rows by polarization weight; ties go to the larger row."""
    n = 1 << m
    if not 0 <= K <= n:
        raise DomainError(f"K={K} outside [0, {n}]")
    ranked = sorted(range(1, n + 1), key=lambda row: (pw_score(m, row, beta), row), reverse=True)
    spec = CodeSpec.from_rows(m, ranked[:K], f"PW({m},{K})")
    if not is_decreasing(spec):
        warnings.warn(f"{spec.describe()} is not a decreasing monomial code", NonDecreasingWarning)
    return spec


def _require_nonempty(spec: CodeSpec) -> None:
    if not spec.info_rows:
        raise DomainError("information set is empty")


def rbar(spec: CodeSpec) -> int:
    """Largest monomial degree in the information set."""
    _require_nonempty(spec)
    return max(f.degree for f in spec.monomials)


def i_star(spec: CodeSpec) -> int:
    """Smallest information row whose monomial has the maximal degree."""
    top = rbar(spec)
    return min(f.row for f in spec.monomials if f.degree == top)


def d_min(spec: CodeSpec) -> int:
    """Minimum distance ``2^(m - rbar)``; only meaningful for decreasing codes."""
    return 1 << (spec.m - rbar(spec))
