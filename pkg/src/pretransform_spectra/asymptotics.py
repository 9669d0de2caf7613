"""Bound functions, the finite searches behind them, and bound checks on RM / decreasing codes."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Any

from .dyadic import Dyadic, dyadic_sum
from .monomial import (
    CodeSpec,
    DomainError,
    Monomial,
    construct_rm,
    i_star,
    is_decreasing,
    monomial_from_row,
    rbar,
)
from .spectrum_avg import avg_cum_weight, info_after, min_weight_count_original, min_weight_logprob_closed

# Flag threshold for the cumulative-count gap: value - (2^(k+2) - 1) r > GAP_SLOPE * log2 r + GAP_OFFSET
GAP_SLOPE = 1.0
GAP_OFFSET = 12.0


def original_growth_orders(k: int) -> dict[str, Any]:
    """Exponents of m bounding log A(2^(m-r+k)) for the un-transformed code; metadata, never asserted."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    known = {0: "upper", 1: "lower"}
    return {
        "k": k,
        "lower_exponent": k + 1,
        "upper_exponent": k + 2,
        "attained": {"exponent": 2, "side": known[k]} if k in known else None,
    }


@dataclass
class BoundReport:
    quantity: str
    value_log2: float
    lower: float
    upper: float
    witness: dict[str, Any] = field(default_factory=dict)
    envelope: float | None = None
    flagged: bool = False

    @property
    def passed(self) -> bool:
        return self.lower <= self.value_log2 <= self.upper

    def to_json(self) -> dict[str, Any]:
        upper = self.upper if math.isfinite(self.upper) else None
        out = {
            "quantity": self.quantity,
            "value_log2": round(self.value_log2, 6),
            "lower": self.lower,
            "upper": upper,
            "pass": self.passed,
            "witness": self.witness,
        }
        if self.envelope is not None:
            out["envelope"] = round(self.envelope, 6)
            out["flagged"] = self.flagged
        return out


@dataclass
class Theorem4Report:
    average: Dyadic
    original: int
    rbar: int
    i_star: int
    predicate: bool

    @property
    def equality(self) -> bool:
        return self.average == self.original

    @property
    def holds(self) -> bool:
        return self.average <= self.original

    def to_json(self) -> dict[str, Any]:
        return {
            "rbar": self.rbar,
            "i_star": self.i_star,
            "average": {"mantissa": self.average.mantissa, "exponent": self.average.exponent,
                        "log2": round(self.average.log2(), 6)},
            "original": self.original,
            "equality": self.equality,
            "predicate": self.predicate,
        }


@lru_cache(maxsize=None)
def script_n_k(i_s: int, s: int, k: int) -> int:
    """``2^(i_s - s) - 2^(i_s) + sum_{t <= s+k+1} C(i_s, t)``."""
    if not 0 <= s <= i_s:
        raise DomainError(f"need 0 <= s <= i_s, got s={s}, i_s={i_s}")
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    return (1 << (i_s - s)) - (1 << i_s) + sum(math.comb(i_s, t) for t in range(min(s + k + 1, i_s) + 1))


def script_n(i_s: int, s: int) -> int:
    """Log2 of the minimum-weight codewords contributed by the ``s``-th variable index."""
    return script_n_k(i_s, s, 0)


def appendix_c_expr(i1: int) -> int:
    """``-2^(i1 - 1) + 1 + 2 i1 + C(i1, 2)``, the bound on the first two terms."""
    return -(1 << (i1 - 1)) + 1 + 2 * i1 + math.comb(i1, 2)


def verify_appendix_c(limit: int = 64, search_max: int = 13) -> dict[str, Any]:
    if limit < 13:
        raise DomainError("limit must be >= 13")
    vals = {(i, s): script_n(i, s) for i in range(1, search_max + 1) for s in range(1, i + 1)}
    arg_a = max(vals, key=lambda key: (vals[key], -key[0], -key[1]))
    exprs = {i1: appendix_c_expr(i1) for i1 in range(1, limit + 1)}
    arg_b = max(exprs, key=lambda i1: (exprs[i1], -i1))
    case2 = {i1: script_n(i1, 1) for i1 in range(5, limit + 1)}
    case6 = {i: script_n(i, i - 3) for i in range(3, limit + 1)}
    report = {
        "max_script_n": vals[arg_a],
        "max_script_n_at": {"i_s": arg_a[0], "s": arg_a[1]},
        "max_script_n_ok": vals[arg_a] <= 3,
        "max_first_two": exprs[arg_b],
        "max_first_two_at": arg_b,
        "first_two_ok": exprs[arg_b] <= 7,
        "case2_ok": all(v <= 0 for v in case2.values()),
        "case6_ok": all(v == 7 - i for i, v in case6.items()),
    }
    report["pass"] = all(report[k] for k in ("max_script_n_ok", "first_two_ok", "case2_ok", "case6_ok"))
    return report


def _lemma1_exponents(m: int, r: int) -> Counter:
    """Counter of ``sum_s script_n(i_s, s)`` over all degree-``r`` monomials in ``m`` variables."""
    return Counter(sum(script_n(i, s) for s, i in enumerate(idx)) for idx in combinations(range(m), r))


def log2_pow2_counter(exps: Counter) -> Dyadic:
    return dyadic_sum((c, -e) for e, c in exps.items())


def rm_min_weight_average(m: int, r: int) -> Dyadic:
    """Exact ``E N(2^(m-r), T)`` for RM(m, r) from the per-monomial closed forms."""
    return log2_pow2_counter(_lemma1_exponents(m, r))


def rm_min_weight_original(m: int, r: int) -> int:
    return sum(1 << sum(i - s + 1 for s, i in enumerate(idx)) for idx in combinations(range(m), r))


def theorem2_bounds(r: int) -> tuple[float, float]:
    return 3.0 * r, 3.0 * r + math.log2(math.comb(r + 2, 2)) + 1.0


def theorem2_check(m: int, r: int) -> BoundReport:
    if r < 1 or m - r < 2:
        raise DomainError(f"need r >= 1 and m - r >= 2, got m={m}, r={r}")
    value = rm_min_weight_average(m, r)
    witness = Monomial.from_indices(m, range(2, r + 2))
    witness_exp = sum(script_n(i, s) for s, i in enumerate(witness.indices))
    lo, hi = theorem2_bounds(r)
    return BoundReport(
        quantity=f"log2 E N(2^{m - r}, T) for RM({m},{r})",
        value_log2=value.log2(),
        lower=lo,
        upper=hi,
        witness={"monomial": witness.name(), "row": witness.row, "log2_contribution": witness_exp},
    )


def theorem3_check(m: int, r: int, k: int) -> BoundReport:
    """Lower bound ``(2^(k+2)-1)(r-k)`` is asserted; the gap to ``(2^(k+2)-1) r`` is only flagged."""
    if r < 1 or m - r < 2:
        raise DomainError(f"need r >= 1 and m - r >= 2, got m={m}, r={r}")
    if k == 0:
        return theorem2_check(m, r)
    if not 1 <= k < r:
        raise DomainError(f"need 1 <= k < r, got k={k}, r={r}")
    slope = (1 << (k + 2)) - 1
    value = avg_cum_weight(construct_rm(m, r), 1 << (m - r + k)).log2()
    gap = value - slope * r
    envelope = GAP_SLOPE * math.log2(r) + GAP_OFFSET
    witness = Monomial.from_indices(m, range(k + 2, r + 2))
    return BoundReport(
        quantity=f"log2 E A(2^{m - r + k}, T) for RM({m},{r})",
        value_log2=value,
        lower=float(slope * (r - k)),
        upper=math.inf,
        witness={"monomial": witness.name(), "row": witness.row, "gap_to_linear": round(gap, 6)},
        envelope=envelope,
        flagged=gap > envelope,
    )


def theorem4_compare(spec: CodeSpec) -> Theorem4Report:
    if not spec.info_rows:
        raise DomainError("information set is empty")
    if not is_decreasing(spec):
        raise DomainError(f"{spec.describe()} is not decreasing")
    top = rbar(spec)
    terms = []
    for f in spec.monomials:
        if f.degree == top:
            terms.append((1, -(min_weight_logprob_closed(f) + info_after(spec, f.row))))
    average = dyadic_sum(terms)
    original = min_weight_count_original(spec)
    star = i_star(spec)
    predicate = top <= 1 or (_star_condition(spec, star, top) and _above_condition(spec, star, top))
    return Theorem4Report(average, original, top, star, predicate)


def _star_condition(spec: CodeSpec, star: int, top: int) -> bool:
    return monomial_from_row(spec.m, star).top <= top + 1


def _above_condition(spec: CodeSpec, star: int, top: int) -> bool:
    masks = spec.masks
    return all(
        (spec.N - row) in masks
        for row in range(star + 1, spec.N + 1)
        if (spec.N - row).bit_count() <= top
    )


def eq14_holds(r: int, m: int) -> bool:
    """Every degree-``r`` monomial with top index <= r+1 has ``sum_s script_n(i_s, s) <= 3r``."""
    return all(
        sum(script_n(i, s) for s, i in enumerate(idx)) <= 3 * r
        for idx in combinations(range(min(m, r + 2)), r)
    )


def report_dict(report: BoundReport | Theorem4Report) -> dict[str, Any]:
    return report.to_json()
