"""Exact and ensemble-average weight spectra of pre-transformed RM and polar codes."""

__version__ = "0.1.0"

from .dyadic import Dyadic
from .monomial import (
    CodeSpec,
    DomainError,
    Monomial,
    construct_pw,
    construct_rm,
    decreasing_closure,
    i_star,
    is_decreasing,
    leq,
    monomial_from_row,
    rbar,
    row_from_monomial,
    row_weight,
)

__all__ = [
    "CodeSpec",
    "DomainError",
    "Dyadic",
    "Monomial",
    "construct_pw",
    "construct_rm",
    "decreasing_closure",
    "i_star",
    "is_decreasing",
    "leq",
    "monomial_from_row",
    "rbar",
    "row_from_monomial",
    "row_weight",
]
