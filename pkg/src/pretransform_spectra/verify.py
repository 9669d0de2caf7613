"""Self-check suites run by ``pretransform-spectra verify``."""

from __future__ import annotations

from typing import Any, Callable

from .asymptotics import theorem4_compare, verify_appendix_c
from .dyadic import Dyadic
from .monomial import CodeSpec, all_monomials, construct_pw, construct_rm, down_sets, monomial_from_row
from .spectrum_avg import (
    avg_spectrum,
    info_after,
    lemma1_info_after,
    min_weight_logprob_closed,
    row_weight_law,
)
from .spectrum_exact import ensemble_average_exhaustive, exact_row_distribution


def oracle_suite(max_m: int = 4) -> dict[str, Any]:
    mismatches = []
    rows = 0
    for m in range(max_m + 1):
        for i in range(1, (1 << m) + 1):
            rows += 1
            law = row_weight_law(m, monomial_from_row(m, i))
            if law != exact_row_distribution(m, i).probs:
                mismatches.append({"m": m, "row": i})
    ensembles = []
    for spec in (construct_rm(3, 1), construct_rm(3, 2), CodeSpec.from_rows(3, range(1, 9), "full(3)")):
        ok = ensemble_average_exhaustive(spec) == avg_spectrum(spec)
        ensembles.append({"code": spec.describe(), "match": ok})
    return {
        "rows_checked": rows,
        "row_mismatches": mismatches,
        "ensembles": ensembles,
        "pass": not mismatches and all(e["match"] for e in ensembles),
    }


def lemma1_suite(max_m_prob: int = 12, max_m_info: int = 10) -> dict[str, Any]:
    prob_bad = []
    count = 0
    for m in range(max_m_prob + 1):
        for f in all_monomials(m):
            count += 1
            p = row_weight_law(m, f, f.weight).get(f.weight, Dyadic(0))
            if p != Dyadic.pow2(min_weight_logprob_closed(f)):
                prob_bad.append({"m": m, "monomial": f.name()})
    info_bad = []
    for m in range(1, max_m_info + 1):
        for r in range(m + 1):
            spec = construct_rm(m, r)
            for f in spec.monomials:
                if f.degree == r and info_after(spec, f.row) != lemma1_info_after(f):
                    info_bad.append({"m": m, "r": r, "row": f.row})
    return {
        "monomials_checked": count,
        "probability_mismatches": prob_bad,
        "info_after_mismatches": info_bad,
        "pass": not prob_bad and not info_bad,
    }


def appendix_c_suite() -> dict[str, Any]:
    return verify_appendix_c()


def theorem4_corpus(max_m: int = 4) -> list[CodeSpec]:
    specs = []
    for m in range(0, max_m + 1):
        for ds in down_sets(m):
            if ds:
                specs.append(CodeSpec.from_monomials(m, ds))
    for m in (6, 8, 10):
        n = 1 << m
        specs.extend(construct_pw(m, k) for k in (n // 4, n // 2, 3 * n // 4))
    return specs


def theorem4_suite() -> dict[str, Any]:
    failures = []
    equalities = 0
    specs = theorem4_corpus()
    for spec in specs:
        rep = theorem4_compare(spec)
        equalities += rep.equality
        if not rep.holds or rep.equality != rep.predicate:
            failures.append({"code": spec.describe(), **rep.to_json()})
    return {"corpus_size": len(specs), "equalities": equalities, "failures": failures, "pass": not failures}


SUITES: dict[str, Callable[[], dict[str, Any]]] = {
    "oracle": oracle_suite,
    "lemma1": lemma1_suite,
    "appendixC": appendix_c_suite,
    "theorem4": theorem4_suite,
}


def run(suite: str) -> dict[str, Any]:
    names = list(SUITES) if suite == "all" else [suite]
    out: dict[str, Any] = {}
    for name in names:
        out[name] = SUITES[name]()
    out["pass"] = all(out[n]["pass"] for n in names)
    return out
