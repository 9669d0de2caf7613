import warnings
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pretransform_spectra.bits import kronecker_power
from pretransform_spectra.monomial import (
    CodeSpec,
    DomainError,
    Monomial,
    NonDecreasingWarning,
    all_monomials,
    construct_pw,
    construct_rm,
    d_min,
    decreasing_closure,
    down_sets,
    i_star,
    is_decreasing,
    leq,
    lower_covers,
    monomial_from_row,
    pw_score,
    rbar,
    row_from_monomial,
    row_weight,
)


def mono(m, *idx):
    return Monomial.from_indices(m, idx)


class TestRowMapping:
    def test_examples(self):
        assert monomial_from_row(3, 8).mask == 0
        assert monomial_from_row(3, 1).mask == 7
        assert monomial_from_row(3, 5).mask == 3
        assert row_from_monomial(mono(3, 1, 0)) == 5
        assert row_from_monomial(mono(3)) == 8
        assert row_from_monomial(mono(9, 3, 2, 1)) == 498

    @given(st.integers(0, 16).flatmap(lambda m: st.tuples(st.just(m), st.integers(1, 1 << m))))
    def test_inverse(self, mi):
        m, i = mi
        assert row_from_monomial(monomial_from_row(m, i)) == i

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            monomial_from_row(3, 0)
        with pytest.raises(DomainError):
            monomial_from_row(3, 9)
        with pytest.raises(DomainError):
            Monomial(2, 4)

    def test_names(self):
        assert mono(3, 1, 0).name() == "x1x0"
        assert mono(3).name() == "1"
        assert mono(4, 0, 3).indices == (0, 3)


class TestRowWeight:
    def test_examples(self):
        assert row_weight(mono(3)) == 8
        assert row_weight(mono(3, 2, 1, 0)) == 1
        assert row_weight(mono(3, 1, 0)) == 2

    @pytest.mark.parametrize("m", range(0, 11))
    def test_matches_kronecker(self, m):
        if m <= 8:
            weights = kronecker_power(m).sum(axis=1)
        else:
            from pretransform_spectra.bits import f_row

            weights = np.array([f_row(m, i).bit_count() for i in range(1, (1 << m) + 1)])
        expected = [row_weight(monomial_from_row(m, i)) for i in range(1, (1 << m) + 1)]
        assert weights.tolist() == expected


def leq_by_divisors(g, f):
    """Definition of the partial order, written independently of the library."""
    if g.degree == f.degree:
        return all(a <= b for a, b in zip(g.indices, f.indices))
    if g.degree > f.degree:
        return False
    return any(leq_by_divisors(g, Monomial.from_indices(f.m, sub)) for sub in combinations(f.indices, g.degree))


class TestOrder:
    def test_examples(self):
        assert leq(mono(3, 1), mono(3, 2))
        assert leq(mono(3, 1), mono(3, 2, 0))
        assert not leq(mono(3, 2), mono(3, 1, 0))

    @pytest.mark.parametrize("m", range(1, 6))
    def test_partial_order_properties(self, m):
        ms = all_monomials(m)
        rel = {(g, f): leq(g, f) for g in ms for f in ms}
        for f in ms:
            assert rel[f, f]
        for g in ms:
            for f in ms:
                if g != f and rel[g, f]:
                    assert not rel[f, g]
                    assert g.degree <= f.degree
        for a in ms:
            for b in ms:
                if rel[a, b]:
                    for c in ms:
                        if rel[b, c]:
                            assert rel[a, c]

    @pytest.mark.parametrize("m", range(1, 5))
    def test_matches_definition(self, m):
        ms = all_monomials(m)
        for g in ms:
            for f in ms:
                assert leq(g, f) == leq_by_divisors(g, f)

    @pytest.mark.parametrize("m", range(1, 6))
    def test_lower_covers_generate_order(self, m):
        for f in all_monomials(m):
            for g in lower_covers(f):
                assert leq(g, f) and g != f


class TestDecreasing:
    def test_examples(self):
        assert is_decreasing(construct_rm(3, 1))
        assert not is_decreasing(CodeSpec.from_monomials(3, [mono(3, 2, 1)]))
        assert is_decreasing(CodeSpec(3, ()))

    def test_closure(self):
        got = decreasing_closure([mono(3, 2, 1)])
        want = {mono(3), mono(3, 0), mono(3, 1), mono(3, 2), mono(3, 1, 0), mono(3, 2, 0), mono(3, 2, 1)}
        assert got == want
        assert decreasing_closure([]) == frozenset()
        rm = construct_rm(4, 2).monomials
        assert decreasing_closure(rm) == frozenset(rm)

    @pytest.mark.parametrize("m", range(0, 11))
    def test_rm_decreasing(self, m):
        for r in range(m + 1):
            assert is_decreasing(construct_rm(m, r))

    def test_down_set_counts(self):
        # brute force over all subsets at m <= 3
        for m in range(0, 4):
            ms = all_monomials(m)
            brute = 0
            for mask in range(1 << len(ms)):
                chosen = [f for b, f in enumerate(ms) if mask >> b & 1]
                brute += is_decreasing(CodeSpec.from_monomials(m, chosen))
            assert brute == sum(1 for _ in down_sets(m))

    @pytest.mark.parametrize("m", range(1, 4))
    def test_is_decreasing_matches_definition(self, m):
        ms = all_monomials(m)
        for mask in range(1 << len(ms)):
            chosen = {f for b, f in enumerate(ms) if mask >> b & 1}
            closed = all(g in chosen for f in chosen for g in ms if leq_by_divisors(g, f))
            assert is_decreasing(CodeSpec.from_monomials(m, chosen)) == closed


class TestConstructions:
    def test_rm(self):
        spec = construct_rm(3, 1)
        assert spec.info_rows == (4, 6, 7, 8) and spec.K == 4
        assert construct_rm(3, 3).K == 8
        assert construct_rm(4, 2).K == 11

    def test_pw(self):
        assert construct_pw(3, 8).K == 8
        assert construct_pw(3, 1).info_rows == (8,)
        spec = construct_pw(6, 32)
        assert spec.K == 32 and is_decreasing(spec)

    def test_pw_score_monotone_under_order(self):
        # a more reliable monomial in the partial order never scores lower
        m = 6
        ms = all_monomials(m)
        for f in ms:
            for g in lower_covers(f):
                assert pw_score(m, g.row) >= pw_score(m, f.row)

    def test_pw_default_beta_is_silent(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error", NonDecreasingWarning)
            for K in range(1, 257, 17):
                construct_pw(8, K)

    def test_pw_warns_when_not_decreasing(self):
        # beta < 1 reverses the index order: rows 8 and 4 give {1, x2}, missing x0
        with pytest.warns(NonDecreasingWarning):
            spec = construct_pw(3, 2, beta=0.5)
        assert spec.info_rows == (4, 8)

    def test_rows_validation(self):
        with pytest.raises(DomainError):
            CodeSpec.from_rows(3, [1, 1])
        with pytest.raises(DomainError):
            CodeSpec.from_rows(3, [9])
        with pytest.raises(DomainError):
            construct_rm(3, 4)

    def test_rbar(self):
        assert rbar(construct_rm(4, 2)) == 2
        assert rbar(CodeSpec.from_monomials(3, [mono(3), mono(3, 0), mono(3, 1, 0)])) == 2
        spec = construct_pw(6, 32)
        assert rbar(spec) == max(f.degree for f in spec.monomials)

    def test_i_star(self):
        assert i_star(construct_rm(4, 2)) == 4
        assert i_star(construct_rm(3, 1)) == 4
        assert i_star(construct_rm(2, 2)) == 1

    def test_d_min(self):
        assert d_min(construct_rm(4, 2)) == 4
        assert d_min(construct_rm(6, 0)) == 64
        with pytest.raises(DomainError):
            rbar(CodeSpec(3, ()))
