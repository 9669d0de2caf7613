from collections import Counter

import pytest

from pretransform_spectra.dyadic import Dyadic
from pretransform_spectra.monomial import CodeSpec, DomainError, construct_rm
from pretransform_spectra.spectrum_exact import (
    EnumerationGuardError,
    WeightSpectrum,
    ensemble_average_exhaustive,
    ensemble_average_literal,
    exact_row_distribution,
    exact_spectrum,
    gray_codewords,
    induced_counts,
    induced_table,
    mc_row_distribution,
)
from pretransform_spectra.transform import TransformMatrix, encode, random_upper

I8 = TransformMatrix.identity(8)
I16 = TransformMatrix.identity(16)


def naive_spectrum(spec, t):
    hist = Counter(encode(spec, t, u).weight for u in range(1 << spec.K))
    return WeightSpectrum(tuple(hist.get(d, 0) for d in range(spec.N + 1)))


class TestExactSpectrum:
    def test_anchors(self):
        assert exact_spectrum(construct_rm(3, 1), I8).as_dict() == {0: 1, 4: 14, 8: 1}
        assert exact_spectrum(construct_rm(4, 2), I16)[4] == 140

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_naive(self, seed):
        spec = construct_rm(4, 2)
        t = random_upper(16, seed)
        got = exact_spectrum(spec, t)
        assert got == naive_spectrum(spec, t)
        assert got[0] == 1 and got.total == 1 << spec.K

    def test_block_and_threads_agree(self):
        spec = CodeSpec.from_rows(5, range(8, 33))
        t = random_upper(32, 3)
        ref = exact_spectrum(spec, t)
        assert exact_spectrum(spec, t, threads=3) == ref
        assert ref.total == 1 << spec.K

    def test_gray_order_visits_each_message_once(self):
        spec = construct_rm(5, 2)
        t = random_upper(32, 1)
        seen = set()
        for k, (msg, cw) in enumerate(gray_codewords(spec, t)):
            if k % 16 == 0:
                assert cw == encode(spec, t, msg).bits
            seen.add(msg)
            if k >= 1000:
                break
        assert len(seen) == 1001

    def test_guard(self):
        with pytest.raises(EnumerationGuardError):
            exact_spectrum(construct_rm(5, 3), TransformMatrix.identity(32), max_k=20)
        with pytest.raises(DomainError):
            exact_spectrum(construct_rm(3, 1), I16)

    def test_spectrum_helpers(self):
        s = exact_spectrum(construct_rm(3, 1), I8)
        assert s.d_min == 4
        assert s.cumulative(4) == 14 and s.cumulative(8) == 15
        assert s.to_csv() == "d,count\n0,1\n4,14\n8,1\n"


class TestInduced:
    def test_example(self):
        assert induced_counts(construct_rm(3, 1), I8, 4) == {4: 8, 6: 4, 7: 2, 8: 0}
        assert set(induced_counts(construct_rm(3, 1), I8, 0).values()) == {0}

    @pytest.mark.parametrize("seed", range(100))
    def test_partition(self, seed):
        spec = construct_rm(4, 2)
        t = random_upper(16, seed)
        table = induced_table(spec, t)
        total = sum(h for h in table.values())
        spectrum = exact_spectrum(spec, t)
        assert [int(c) for c in total[1:]] == list(spectrum.counts[1:])


class TestRowDistribution:
    def test_examples(self):
        assert exact_row_distribution(3, 5).probs == {2: Dyadic(1, 1), 6: Dyadic(1, 1)}
        assert exact_row_distribution(1, 1).probs == {1: Dyadic(1)}
        for m in range(5):
            assert exact_row_distribution(m, 1 << m).probs == {1 << m: Dyadic(1)}

    def test_guard(self):
        with pytest.raises(EnumerationGuardError):
            exact_row_distribution(5, 1, max_below=20)

    def test_mc_matches_exact(self):
        est = mc_row_distribution(3, 5, 100_000, seed=1)
        p, se = est.probs[2], est.stderr[2]
        assert abs(p - 0.5) <= 4 * se

    def test_mc_point_mass_and_determinism(self):
        assert mc_row_distribution(4, 16, 10).probs == {16: 1.0}
        a = mc_row_distribution(6, 9, 5000, seed=3)
        assert a.probs == mc_row_distribution(6, 9, 5000, seed=3).probs
        assert a.probs == mc_row_distribution(6, 9, 5000, seed=3, batch=777).probs
        assert a.probs != mc_row_distribution(6, 9, 5000, seed=4).probs


class TestEnsembleOracles:
    def test_literal_and_exhaustive_agree(self):
        for spec in (construct_rm(3, 1), CodeSpec.from_rows(3, [4, 6, 7]), construct_rm(2, 1)):
            assert ensemble_average_literal(spec) == ensemble_average_exhaustive(spec)

    def test_hand_value(self):
        # full code m=1: both T give 2 codewords of weight 1
        avg = ensemble_average_exhaustive(CodeSpec.from_rows(1, [1, 2]))
        assert avg[1] == 2 and avg[0] == 1

    def test_totals(self):
        spec = construct_rm(3, 2)
        avg = ensemble_average_exhaustive(spec)
        assert sum(avg, Dyadic(0)) == 1 << spec.K
