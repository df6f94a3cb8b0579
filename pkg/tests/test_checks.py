import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import R2, R3, primary_ideals
from gradmult.checks import (
    _compare_tables,
    _root_bracket,
    additivity_check,
    associativity_check,
    minkowski_check,
    nilradical_hypothesis,
    root_sum_inequality,
)
from gradmult.families import Powers, Scaled
from gradmult.multiplicity import MultiplicityTable
from gradmult.limits import SEQUENCE

M = R2.maximal_ideal()


class TestNilradical:
    @pytest.mark.parametrize(
        "gens, verdict",
        [([(2, 0)], "fail"), ([(1, 1)], "pass"), ([(2, 0), (1, 1)], "pass"), ([(2, 1)], "fail")],
    )
    def test_examples(self, gens, verdict):
        assert nilradical_hypothesis(R2.ideal(gens)).verdict == verdict

    def test_unit_rejected(self):
        with pytest.raises(ValueError):
            nilradical_hypothesis(R2.unit_ideal())


class TestAdditivity:
    def test_domain_with_x(self):
        report = additivity_check(R2.zero_ideal(), (1, 0), [Powers(M)])
        assert report.passed
        assert report.lhs == {(2,): 1}

    def test_non_reduced(self):
        report = additivity_check(R2.ideal([(2, 1)]), (0, 1), [Powers(M)])
        assert report.passed
        assert report.lhs[(1,)] == 3
        assert report.details["submodule_table"][(1,)] == 2
        assert report.details["quotient_table"][(1,)] == 1

    @settings(max_examples=10, deadline=None)
    @given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 3), st.integers(0, 3))
    def test_random_instances(self, a, b, fa, fb):
        Q = R2.ideal([(a, b)]) if a + b else R2.zero_ideal()
        report = additivity_check(Q, (fa, fb), [Powers(M), Scaled(M, 2)])
        assert report.passed

    def test_mismatch_is_reported(self):
        lhs = MultiplicityTable("classical", 2, 1, {(2,): Fraction(3)})
        verdict, witnesses = _compare_tables(lhs, {(2,): Fraction(2)}, True, 0)
        assert verdict == "fail" and witnesses[0]["type"] == (2,)


class TestAssociativity:
    def test_cross(self):
        report = associativity_check(R2.ideal([(1, 1)]), [Powers(M)])
        assert report.passed and report.lhs == {(1,): 2}
        assert sorted(c["length"] for c in report.details["contributions"]) == [1, 1]

    def test_non_reduced_computed_with_note(self):
        report = associativity_check(R2.ideal([(2, 1)]), [Powers(M)])
        assert report.passed and report.lhs == {(1,): 3}
        assert sorted(c["length"] for c in report.details["contributions"]) == [1, 2]
        assert report.notes and "nilradical hypothesis fails" in report.notes[0]

    def test_refused_in_sequence_mode(self):
        report = associativity_check(R2.ideal([(2, 1)]), [Powers(M)], strategy=SEQUENCE)
        assert report.verdict == "refused"

    def test_skips(self):
        assert associativity_check(R2.zero_ideal(), [Powers(M)]).verdict == "skipped"
        assert associativity_check(R2.ideal([(2, 0), (0, 2)]), [Powers(M)]).verdict == "skipped"

    def test_three_variables(self):
        tri = R3.ideal([(1, 1, 0), (1, 0, 1), (0, 1, 1)])
        report = associativity_check(tri, [Powers(R3.maximal_ideal())])
        assert report.passed and report.lhs == {(1,): 3}


class TestRootSum:
    def test_exact_paths(self):
        assert root_sum_inequality(11, 1, 6, 2)[0] == "pass"
        assert root_sum_inequality(4, 1, 1, 2) == ("pass", "exact")
        assert root_sum_inequality(5, 1, 1, 2) == ("fail", "exact")
        assert root_sum_inequality(3, 0, 3, 2) == ("pass", "exact")

    def test_certified_bracket(self):
        verdict, method = root_sum_inequality(11, 1, 6, 2)
        assert (verdict, method) == ("pass", "certified bracket")
        # (1 + sqrt 2)^2 = 3 + 2 sqrt 2 = 5.828..., so 6 fails
        assert root_sum_inequality(6, 1, 2, 2) == ("fail", "certified bracket")

    @settings(max_examples=100)
    @given(st.fractions(min_value=0, max_value=1000, max_denominator=50), st.integers(2, 4), st.integers(3, 40))
    def test_brackets_are_sound(self, x, d, digits):
        lo, hi, exact = _root_bracket(x, d, digits)
        assert lo**d <= x <= hi**d
        if not exact:
            assert hi - lo == Fraction(1, 10**digits)


class TestMinkowski:
    def test_example_pair(self):
        report = minkowski_check(Powers(M), Powers(R2.ideal([(2, 0), (0, 3)])))
        assert report.passed
        assert report.lhs == [6, 2, 1]
        assert "pass (certified bracket) for (iv)" in report.notes

    def test_items_listed(self):
        report = minkowski_check(Powers(M), Scaled(M, 2))
        labels = [it["item"] for it in report.details["items"]]
        assert labels[0] == "(i) i=1" and labels[-1] == "(iv)"
        assert report.passed

    @settings(max_examples=8, deadline=None)
    @given(primary_ideals(d=2, max_exp=3), primary_ideals(d=2, max_exp=3))
    def test_random_pairs(self, A, B):
        assert minkowski_check(Powers(A), Powers(B)).passed

    def test_three_dimensional_pair(self):
        rng = random.Random(3)
        gens = [(rng.randint(1, 3), 0, 0), (0, rng.randint(1, 3), 0), (0, 0, rng.randint(1, 3))]
        report = minkowski_check(Powers(R3.maximal_ideal()), Powers(R3.ideal(gens)))
        assert report.passed

    def test_on_a_quotient(self):
        report = minkowski_check(Powers(M), Scaled(M, 2), Q=R2.ideal([(1, 1)]))
        assert report.passed and report.details["degree"] == 1
