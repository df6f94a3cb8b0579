import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import R2, R3, primary_ideals
from oracles import box_scan_colength, box_scan_relative, naive_power
from gradmult.length import (
    InfiniteLengthError,
    colength,
    contains_maximal_power,
    localized_length,
    module_colength,
    relative_length,
    socle_degree,
)
from gradmult.monomial import is_subideal, power, product


class TestColength:
    def test_examples(self):
        assert colength(R2.maximal_ideal()) == 1
        assert colength(R2.ideal([(2, 0), (0, 3)])) == 6

    @pytest.mark.parametrize("k", range(1, 21))
    def test_powers_of_maximal_ideal(self, k):
        expected = k * (k + 1) // 2
        assert colength(power(R2.maximal_ideal(), k)) == expected
        if k <= 8:
            assert box_scan_colength(naive_power(R2.maximal_ideal().gens, k, 2), 2) == expected

    def test_not_m_primary(self):
        with pytest.raises(InfiniteLengthError, match="infinite colength"):
            colength(R2.ideal([(2, 0), (1, 1)]))

    @settings(max_examples=50)
    @given(primary_ideals(d=3))
    def test_matches_box_scan(self, I):
        assert colength(I) == box_scan_colength(I.gens, 3)

    @given(primary_ideals(d=2), primary_ideals(d=2))
    def test_monotone_and_additive(self, I, J):
        K = product(I, J)
        assert is_subideal(K, J)
        bound = max(max(g) for g in K.gens) + 1
        between = sum(
            1
            for a in range(bound)
            for b in range(bound)
            if (a, b) in J and (a, b) not in K
        )
        assert colength(K) == colength(J) + between
        assert colength(K) >= colength(J)


class TestModuleColength:
    @pytest.mark.parametrize("n", range(1, 8))
    def test_cross(self, n):
        assert module_colength(R2.ideal([(1, 1)]), power(R2.maximal_ideal(), n)) == 2 * n - 1

    def test_degenerate_modules(self):
        I = R2.ideal([(2, 0), (0, 3)])
        assert module_colength(R2.unit_ideal(), I) == 0
        assert module_colength(R2.zero_ideal(), I) == colength(I)
        assert module_colength(None, I) == colength(I)


class TestRelativeLength:
    def test_examples(self):
        m = R2.maximal_ideal()
        assert relative_length(R2.ideal([(1, 0)]), m, 1) == 1
        for n in (1, 3):
            for k in (1, 2, 4):
                assert relative_length(R2.ideal([(n, 0)]), power(m, k), k) == k * (k + 1) // 2
        I = R2.ideal([(2, 0), (0, 3)])
        assert relative_length(R2.unit_ideal(), I) == colength(I)

    def test_bad_certificate(self):
        with pytest.raises(ValueError, match="certificate"):
            relative_length(R2.ideal([(1, 0)]), R2.ideal([(2, 0), (0, 3)]), 2)

    @settings(max_examples=40)
    @given(primary_ideals(d=2, max_exp=3), st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=3))
    def test_matches_box_scan_and_certificate_free(self, I, jgens):
        J = R2.ideal(jgens)
        value = relative_length(J, I)
        assert value == box_scan_relative(J.gens, I.gens, 2)
        tight = socle_degree(I) + 1
        assert contains_maximal_power(I, tight)
        assert relative_length(J, I, tight) == value


class TestLocalizedLength:
    def test_examples(self):
        assert localized_length(R2.ideal([(1, 1)]), {0}) == 1
        assert localized_length(R2.ideal([(2, 1)]), {0}) == 2
        tri = R3.ideal([(1, 1, 0), (1, 0, 1), (0, 1, 1)])
        assert localized_length(tri, {0, 1}) == 1

    def test_not_minimal(self):
        with pytest.raises(ValueError, match="not a minimal prime"):
            localized_length(R2.ideal([(1, 1)]), {0, 1})
