import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings

from conftest import R2, R3, primary_ideals
from oracles import box_scan_relative, difference_multiplicity, multinomial
from gradmult.multiplicity import (
    MultiplicityTable,
    evaluate_G,
    general_mixed_multiplicities,
    mixed_multiplicities,
    multiplicity,
    powers_product,
    zero_table,
)
from gradmult.length import InfiniteLengthError
from gradmult.monomial import power, product
from gradmult.polyfit import compositions

M = R2.maximal_ideal()
I = R2.ideal([(2, 0), (0, 3)])
X = R2.ideal([(1, 0)])


class TestClassical:
    def test_single_ideal(self):
        assert mixed_multiplicities(None, [I]).entries == {(2,): 6}

    def test_two_ideals(self):
        assert mixed_multiplicities(None, [M, I]).entries == {(2, 0): 1, (1, 1): 2, (0, 2): 6}
        assert difference_multiplicity(product(M, I).gens, 2) == 11

    @given(primary_ideals(d=2, max_exp=3))
    @settings(max_examples=15, deadline=None)
    def test_diagonal_identity(self, J):
        e = multiplicity(J)
        table = mixed_multiplicities(None, [J, J, J])
        assert all(v == e for v in table.entries.values())

    @given(primary_ideals(d=2, max_exp=3), primary_ideals(d=2, max_exp=3))
    @settings(max_examples=15, deadline=None)
    def test_product_identity_against_difference_oracle(self, A, B):
        table = mixed_multiplicities(None, [A, B])
        assert table.is_nonnegative() and table.is_integral()
        rng = random.Random(0)
        for _ in range(3):
            m = (rng.randint(1, 2), rng.randint(1, 2))
            expected = sum(multinomial(2, k) * table[k] * m[0] ** k[0] * m[1] ** k[1] for k in table.entries)
            assert difference_multiplicity(powers_product((A, B), m).gens, 2) == expected

    def test_permutation_equivariance(self):
        ideals = [M, I, R2.ideal([(3, 0), (1, 1), (0, 2)])]
        base = mixed_multiplicities(None, ideals)
        for perm in permutations(range(3)):
            table = mixed_multiplicities(None, [ideals[i] for i in perm])
            for key, value in table.entries.items():
                original = [0] * 3
                for slot, i in enumerate(perm):
                    original[i] = key[slot]
                assert base[tuple(original)] == value

    def test_three_dimensional(self):
        J = R3.ideal([(2, 0, 0), (0, 3, 0), (0, 0, 1)])
        assert mixed_multiplicities(None, [R3.maximal_ideal(), J]).entries == {(3, 0): 1, (2, 1): 1, (1, 2): 2, (0, 3): 6}
        assert difference_multiplicity(J.gens, 3) == 6

    def test_module_multiplicities(self):
        assert mixed_multiplicities(R2.ideal([(1, 1)]), [M], degree=1).entries == {(1,): 2}
        assert mixed_multiplicities(R2.ideal([(1, 1)]), [M]).entries == {(2,): 0}
        assert mixed_multiplicities(R2.unit_ideal(), [M]).is_zero()

    def test_not_m_primary(self):
        with pytest.raises(InfiniteLengthError):
            mixed_multiplicities(None, [X])


class TestGeneral:
    def test_maximal_with_x(self):
        table = general_mixed_multiplicities(M, [X])
        assert table.entries == {(1, 0): 1, (0, 1): 0}

    def test_no_js(self):
        assert general_mixed_multiplicities(M, []).entries == {(1,): 1}

    def test_nontrivial_primary(self):
        assert general_mixed_multiplicities(I, [X]).entries == {(1, 0): 6, (0, 1): 0}

    def test_relative_lengths_by_scan(self):
        # the sampled function itself, checked on a few points by brute force
        for n0, n1 in [(1, 1), (2, 1), (1, 2)]:
            J = product(power(I, n0), power(X, n1))
            from gradmult.length import relative_length

            assert relative_length(J, I) == box_scan_relative(J.gens, I.gens, 2)

    @given(primary_ideals(d=2, max_exp=3), primary_ideals(d=2, max_exp=3))
    @settings(max_examples=10, deadline=None)
    def test_no_pure_j_terms_and_corner(self, A, B):
        table = general_mixed_multiplicities(A, [B])
        assert table.is_nonnegative() and table.is_integral()
        coeffs = table.coefficients()
        assert all(mono[0] >= 1 for mono in coeffs)
        assert table[(1, 0)] == multiplicity(A)

    def test_zero_j_rejected(self):
        with pytest.raises(ValueError):
            general_mixed_multiplicities(M, [R2.zero_ideal()])


class TestEvaluateG:
    def test_classical(self):
        table = MultiplicityTable("classical", 2, 2, {(2, 0): Fraction(1), (1, 1): Fraction(2), (0, 2): Fraction(6)})
        assert evaluate_G(table, (1, 1)) == Fraction(11, 2)

    def test_general(self):
        table = general_mixed_multiplicities(M, [X])
        for n0, n1 in [(1, 1), (3, 5), (4, 0)]:
            assert evaluate_G(table, (n0, n1)) == Fraction(n0 * n0, 2)

    def test_zero_and_arity(self):
        assert evaluate_G(zero_table("classical", 2, 2), (3, 4)) == 0
        with pytest.raises(ValueError):
            evaluate_G(zero_table("classical", 2, 2), (1,))

    def test_table_keys(self):
        table = mixed_multiplicities(None, [M, I, M])
        assert sorted(table.entries) == sorted(compositions(2, 3))
