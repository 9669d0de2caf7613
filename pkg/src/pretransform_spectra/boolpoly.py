"""Boolean polynomials in algebraic normal form.

A polynomial is a set of monomial masks (the ANF support).  Truth tables use the
same coordinate order as codewords ``u . F_N``: the polynomial holding only the
monomial of row ``i`` tabulates to row ``i`` of F_N.  Concretely, coordinate ``c``
holds the value at the point whose bits are the complement of ``c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

from .bits import BitVector, butterfly
from .monomial import DomainError, Monomial


@dataclass(frozen=True)
class BoolPoly:
    m: int
    terms: frozenset[int]

    def __post_init__(self) -> None:
        terms = frozenset(self.terms)
        object.__setattr__(self, "terms", terms)
        limit = 1 << self.m
        bad = [t for t in terms if not 0 <= t < limit]
        if bad:
            raise DomainError(f"monomial masks {sorted(bad)} out of range for m={self.m}")

    @classmethod
    def zero(cls, m: int) -> "BoolPoly":
        return cls(m, frozenset())

    @classmethod
    def one(cls, m: int) -> "BoolPoly":
        return cls(m, frozenset({0}))

    @classmethod
    def from_monomials(cls, m: int, monomials: Iterable[Monomial | int]) -> "BoolPoly":
        support: set[int] = set()
        for f in monomials:
            support ^= {f.mask if isinstance(f, Monomial) else f}
        return cls(m, frozenset(support))

    @classmethod
    def variable(cls, m: int, t: int) -> "BoolPoly":
        return cls(m, frozenset({1 << t}))

    @property
    def degree(self) -> int:
        return max((t.bit_count() for t in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "BoolPoly") -> "BoolPoly":
        if other.m != self.m:
            raise DomainError("polynomials over different variable counts")
        return BoolPoly(self.m, self.terms ^ other.terms)

    def __mul__(self, other: "BoolPoly") -> "BoolPoly":
        if other.m != self.m:
            raise DomainError("polynomials over different variable counts")
        out: set[int] = set()
        for a in self.terms:
            for b in other.terms:
                out ^= {a | b}  # x_t * x_t = x_t
        return BoolPoly(self.m, frozenset(out))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        ordered = sorted(self.terms, key=lambda t: (-t.bit_count(), -t))
        return " + ".join(Monomial(self.m, t).name() for t in ordered)


def evaluate(p: BoolPoly, point: int) -> int:
    """Value of ``p`` at the assignment whose bit ``t`` is ``x_t``."""
    if not 0 <= point < (1 << p.m):
        raise DomainError(f"point {point} out of range for m={p.m}")
    return sum(1 for t in p.terms if t & point == t) & 1


def truth_table(p: BoolPoly) -> BitVector:
    n = 1 << p.m
    u = 0
    for t in p.terms:
        u |= 1 << (n - 1 - t)
    return BitVector(n, butterfly(u, p.m))


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def derivative(p: BoolPoly, y: int) -> BoolPoly:
    """ANF of ``f(x + y) + f(x)``, obtained by substituting ``x_t -> x_t + y_t``."""
    if not 0 <= y < (1 << p.m):
        raise DomainError(f"direction {y} out of range for m={p.m}")
    out: set[int] = set()
    for term in p.terms:
        shifted = term & y
        # prod_{t in term} (x_t + y_t): keep a subset A of the variables, the rest
        # must be shifted ones; A == term is the f(x) part and cancels.
        for dropped in _submasks(shifted):
            if dropped:
                out ^= {term & ~dropped}
    return BoolPoly(p.m, frozenset(out))


def iterated_derivative(p: BoolPoly, directions: Iterable[int]) -> BoolPoly:
    for y in directions:
        p = derivative(p, y)
    return p


def low_weight_family(m: int, r: int, k: int, limit: int | None = None) -> list[BoolPoly]:
    """Polynomials ``(g + x_h) x_{h+1} ... x_{m-1}`` with ``h = m - r + k``.

    ``g`` runs over sums of degree-``(k+1)`` monomials in ``x_0 .. x_{h-1}``, so there
    are ``2^C(h, k+1)`` members, each of weight ``2^h`` and degree at most ``r``.  ``g = 0``
    comes first.
    """
    h = m - r + k
    if k < 0 or not 0 <= h < m:
        raise DomainError(f"need k >= 0 and 0 <= h = m - r + k < m, got h={h}, k={k}")
    if limit is not None and limit < 1:
        raise DomainError("limit must be >= 1")
    tail = sum(1 << t for t in range(h + 1, m))
    basis = [sum(1 << t for t in c) | tail for c in combinations(range(h), k + 1)]
    total = 1 << len(basis)
    count = total if limit is None else min(limit, total)
    head = frozenset({(1 << h) | tail})
    out = []
    for sel in range(count):
        terms = {basis[b] for b in range(len(basis)) if sel >> b & 1}
        out.append(BoolPoly(m, head | frozenset(terms)))
    return out


def family_size(m: int, r: int, k: int) -> int:
    return 1 << comb(m - r + k, k + 1)
