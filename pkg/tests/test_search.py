"""Tests for rounded hypotheses and the even-coordinate search."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.models import GibbsClassifier, TableHypothesis, ThresholdHypothesis
from src.sensitivity.certificates import lemma3_family
from src.sensitivity.search import (
    EventFamily,
    FailureCurve,
    FailurePoint,
    SearchInterval,
    atom_counts,
    binary_search_signchange,
    empirical_rounded_hypothesis,
    event_membership,
    hoeffding_failure_reference,
    positive_matrix,
    rounded_hypothesis,
    rounding_midpoint,
    search_depth,
    search_failure_curve,
    search_outputs,
)
from src.utils.exceptions import DomainException

tables = st.lists(st.sampled_from([-1, 1]), min_size=8, max_size=8).map(TableHypothesis)


class TestRounding:
    def test_midpoint(self):
        assert rounding_midpoint(0.25, 0.75) == Fraction(1, 2)
        assert rounding_midpoint(Fraction(1, 3), Fraction(1, 2)) == Fraction(5, 12)

    @pytest.mark.parametrize("q1,q2", [(0.5, 0.5), (0.7, 0.2), (-0.1, 0.5), (0.2, 1.1)])
    def test_midpoint_invalid(self, q1, q2):
        with pytest.raises(DomainException):
            rounding_midpoint(q1, q2)

    def test_search_depth(self):
        assert search_depth(8) == 3
        assert search_depth(2) == 1
        for size in (1, 6, 12):
            with pytest.raises(DomainException):
                search_depth(size)

    def test_rounded_point_mass(self):
        q = GibbsClassifier.point_mass(ThresholdHypothesis(5, 8))
        assert rounded_hypothesis(q, 0.25, 0.75).as_bits() == ThresholdHypothesis(5, 8).as_bits()

    def test_rate_at_midpoint_rounds_negative(self):
        """Test that a positive rate of exactly (q1+q2)/2 rounds to -1."""
        q = GibbsClassifier.uniform([ThresholdHypothesis(0, 8), ThresholdHypothesis(8, 8)])
        assert rounded_hypothesis(q, 0.25, 0.75).as_bits() == (-1,) * 8

    def test_rounded_family_member(self):
        for xhat, q in lemma3_family(3, 0.25, 0.75).items():
            assert rounded_hypothesis(q, 0.25, 0.75).as_bits() == ThresholdHypothesis(xhat, 8).as_bits()

    def test_empirical_majority(self):
        hs = [ThresholdHypothesis(0, 8), ThresholdHypothesis(0, 8), ThresholdHypothesis(8, 8)]
        assert empirical_rounded_hypothesis(hs, 0.25, 0.75).as_bits() == (1,) * 8

    def test_empirical_rejects_mixed_domains(self):
        with pytest.raises(DomainException):
            empirical_rounded_hypothesis([ThresholdHypothesis(1, 8), ThresholdHypothesis(1, 4)], 0.25, 0.75)
        with pytest.raises(DomainException):
            empirical_rounded_hypothesis([], 0.25, 0.75)


class TestBinarySearch:
    """Test the bisection over even coordinates."""

    def test_sign_change_between_five_and_six(self):
        result = binary_search_signchange(ThresholdHypothesis(5, 8))
        assert (result.lo, result.hi) == (5, 6)
        assert len(result.queries) == 2

    def test_all_negative_hits_sentinel(self):
        result = binary_search_signchange((-1,) * 8)
        assert (result.lo, result.hi) == (7, 8)
        assert 8 not in result.queries

    def test_all_positive(self):
        assert str(binary_search_signchange((1,) * 8)) == "{1,2}"

    def test_trivial_domain(self):
        result = binary_search_signchange((-1, -1))
        assert (result.lo, result.hi) == (1, 2)
        assert result.queries == ()

    @given(tables)
    def test_queries_even_and_counted(self, h):
        result = binary_search_signchange(h)
        assert len(result.queries) == 2
        assert all(q % 2 == 0 and q < 8 for q in result.queries)

    @pytest.mark.parametrize("b", range(1, 7))
    def test_finds_odd_change_points(self, b):
        """Test h_x and h_{x-1} both land on {x, x+1} for every odd x."""
        n = 2**b
        for xhat in range(1, n, 2):
            assert binary_search_signchange(ThresholdHypothesis(xhat, n)).odd_point == xhat
            assert binary_search_signchange(ThresholdHypothesis(xhat - 1, n)).odd_point == xhat

    def test_non_power_of_two(self):
        with pytest.raises(DomainException):
            binary_search_signchange((1,) * 6)

    def test_interval_validation(self):
        with pytest.raises(DomainException):
            SearchInterval(2, 3)
        assert 3 not in SearchInterval(1, 2)


class TestEvents:
    """Test the events E_x."""

    def setup_method(self):
        self.family = EventFamily(3, 0.25, 0.75)

    @settings(max_examples=50)
    @given(st.lists(tables, min_size=1, max_size=6))
    def test_exactly_one_event(self, hs):
        hits = [x for x in self.family.odd_points() if self.family.contains(x, hs)]
        assert hits == [self.family.member(hs)]

    def test_event_membership(self):
        hs = [ThresholdHypothesis(3, 8)] * 3
        assert event_membership(3, hs, 0.25, 0.75)
        assert not event_membership(5, hs, 0.25, 0.75)

    def test_even_point_rejected(self):
        with pytest.raises(DomainException):
            event_membership(4, [ThresholdHypothesis(3, 8)], 0.25, 0.75)

    def test_invalid_family(self):
        with pytest.raises(DomainException):
            EventFamily(0, 0.25, 0.75)

    def test_vectorized_search_matches_scalar(self):
        c = GibbsClassifier.from_atoms(
            8,
            [
                (ThresholdHypothesis(2, 8), Fraction(1, 3)),
                (ThresholdHypothesis(5, 8), Fraction(1, 3)),
                (TableHypothesis((1, -1, 1, -1, 1, -1, 1, -1)), Fraction(1, 3)),
            ],
        )
        draws = c.draw(np.random.default_rng(7), (40, 5))
        counts = atom_counts(draws, len(c.atoms))
        assert (counts.sum(axis=1) == 5).all()
        outputs = search_outputs(counts @ positive_matrix(c), 5, Fraction(1, 2))
        for row, output in zip(draws, outputs):
            assert output == self.family.member([c.hypotheses[i] for i in row])


class TestFailureCurve:
    """Test the Monte-Carlo failure rate of the search."""

    def test_failures_fall_with_repetitions(self):
        q = lemma3_family(4, 0.25, 0.75)[5]
        curve = search_failure_curve(q, 5, 0.25, 0.75, [4, 40, 160], trials=500, seed=3)
        first, last = curve.points[0], curve.points[-1]
        assert first.failures > last.failures
        assert first.lower <= first.rate <= first.upper
        assert curve.log_slope() < 0
        assert last.reference < first.reference

    def test_seeded(self):
        q = lemma3_family(3, 0.25, 0.75)[3]
        a = search_failure_curve(q, 3, 0.25, 0.75, [6], trials=200, seed=1)
        b = search_failure_curve(q, 3, 0.25, 0.75, [6], trials=200, seed=1)
        assert a == b

    def test_slope_needs_two_points(self):
        curve = FailureCurve(1, (FailurePoint(5, 1, 10, 0.0, 0.5, 0.1),))
        with pytest.raises(DomainException):
            curve.log_slope()

    def test_invalid_repetitions(self):
        q = lemma3_family(3, 0.25, 0.75)[3]
        with pytest.raises(DomainException):
            search_failure_curve(q, 3, 0.25, 0.75, [0], trials=10)

    def test_hoeffding_reference(self):
        assert hoeffding_failure_reference(3, 0.25, 0.75, 32) == pytest.approx(3 * np.exp(-1))
