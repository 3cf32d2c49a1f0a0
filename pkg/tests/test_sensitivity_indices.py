"""Tests for sensitive indices, the replacement interval I(S) and the dichotomy."""

import pytest

from src.core.literals import parse_sample
from src.core.models import EquivalenceType
from src.core.ordering import order_type, permutation_types
from src.homogeneity.profiles import PProfile, p_profile
from src.learners import ConstantLearner, ExpGibbsLearner
from src.sensitivity.indices import (
    PointInterval,
    claim3_dichotomy,
    interval_for_learner,
    interval_I,
    sensitive_index,
    type_profile,
)
from src.utils.exceptions import DomainException


def _profile(p):
    m = len(p) - 1
    return PProfile(EquivalenceType(tuple(range(1, m + 1)), (-1,) + (1,) * (m - 1)), tuple(p), 0.0)


class TestSensitiveIndex:
    """Test the smallest index with a large profile jump."""

    def test_documented_profile(self):
        report = sensitive_index(_profile((0, 0.4485, 0.7698, 1)), 1 / 3)
        assert report.found
        assert report.index == 1
        assert report.gap == pytest.approx(0.4485)

    def test_later_index(self):
        report = sensitive_index(_profile((0, 0.1, 0.6, 0.7)), 0.3)
        assert report.index == 2

    def test_constant_profile_has_none(self):
        report = sensitive_index(_profile((0.5, 0.5, 0.5)), 0.1)
        assert not report.found
        assert report.gap == 0

    def test_decreasing_jump_counts(self):
        assert sensitive_index(_profile((1, 0)), 0.5).index == 1

    def test_incomplete_profile(self):
        with pytest.raises(DomainException, match="no value"):
            sensitive_index(_profile((None, 0.5, 1)), 0.1)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_exp_learner_has_one_over_m_gap(self, m):
        """Test that profile jumps of exp(beta=1) are its atom weights, so one reaches 1/m."""
        learner = ExpGibbsLearner(1)
        for t in permutation_types(m):
            report = sensitive_index(type_profile(learner, t, 12), 1 / m)
            assert report.found, str(t)


class TestPointInterval:
    def test_size_and_points(self):
        interval = PointInterval(3, 6)
        assert interval.size == 4
        assert list(interval.points()) == [3, 4, 5, 6]
        assert 5 in interval
        assert 7 not in interval
        assert str(interval) == "{3..6}"

    def test_empty(self):
        empty = PointInterval.empty()
        assert empty.size == 0
        assert str(empty) == "{}"


class TestIntervalI:
    """Test the case split defining I(S)."""

    def setup_method(self):
        self.sample = parse_sample("(2,-);(9,+)", 12)

    def test_positive_sensitive_point(self):
        assert interval_I(self.sample, 12, 2) == PointInterval(7, 12)

    def test_negative_sensitive_point(self):
        assert interval_I(self.sample, 12, 1) == PointInterval(1, 6)

    def test_midpoint_outside_neighbours(self):
        """Test the open interval between neighbours when k/2 lies outside it."""
        sample = parse_sample("(2,-);(4,-);(9,+)", 12)
        assert interval_I(sample, 12, 1) == PointInterval(1, 3)

    def test_duplicate_points_empty(self):
        assert interval_I(parse_sample("(2,-);(2,-)", 12), 12, 1).size == 0

    def test_no_index_empty(self):
        assert interval_I(self.sample, 12, None).size == 0

    def test_index_out_of_range(self):
        with pytest.raises(DomainException):
            interval_I(self.sample, 12, 3)

    @pytest.mark.parametrize("k", [0, 11])
    def test_k_must_be_even(self, k):
        with pytest.raises(DomainException):
            interval_I(self.sample, k, 1)

    def test_interval_for_learner(self):
        """Test that exp(beta=1) is sensitive at the first index of (-,+) samples."""
        interval, report = interval_for_learner(ExpGibbsLearner(1), self.sample, 12, 0.25)
        assert report.index == 1
        assert report.gap >= 0.25 / 4
        assert interval == PointInterval(1, 6)

    def test_interval_for_learner_repeated_points(self):
        interval, report = interval_for_learner(ExpGibbsLearner(1), parse_sample("(3,-);(3,-)", 12), 12, 0.25)
        assert interval.size == 0
        assert report is None

    def test_incomplete_profile_gives_empty_interval(self):
        """Test that a pos slot with no query point means no sensitive index."""
        sample = parse_sample("(1,-);(5,+);(8,+)", 10)
        profile = p_profile(ExpGibbsLearner(1), order_type(sample), range(1, 10 + 1), samples=[sample])
        interval, report = interval_for_learner(ExpGibbsLearner(1), sample, 10, 0.25, profile=profile)
        assert interval.size == 0
        assert report is None

    def test_type_profile_over_subset(self):
        """Test that query points come from the given subset only."""
        subset = (8, 16, 24, 32, 40, 48)
        t = order_type(parse_sample("(16,-);(40,+)", 64))
        profile = type_profile(ExpGibbsLearner(1), t, 64, points=subset)
        assert profile.is_complete
        assert profile.representatives == 1


class TestDichotomy:
    """Test sensitive index or high loss, per type."""

    def test_exp_learner_always_holds(self):
        verdicts = claim3_dichotomy(ExpGibbsLearner(1), 16, 2, 0.25)
        assert len(verdicts) == 8
        assert all(v.holds for v in verdicts)

    def test_constant_learner_holds_by_loss(self):
        """Test that a learner ignoring the data has no sensitive index but high loss."""
        verdicts = claim3_dichotomy(ConstantLearner(k=0), 16, 2, 0.25)
        assert all(not v.sensitive.found for v in verdicts)
        assert all(v.min_loss == 0.5 for v in verdicts)
        assert all(v.holds for v in verdicts)
        assert verdicts[0].loss_threshold == pytest.approx(0.5 - 0.25 - 2 / 16)

    def test_domain_too_small_for_spread_representatives(self):
        """Test that types whose profile misses a slot get a verdict instead of an error."""
        verdicts = claim3_dichotomy(ExpGibbsLearner(1), 4, 2, 0.25)
        assert len(verdicts) == 8
        for verdict in verdicts:
            if not verdict.sensitive.profile.is_complete:
                assert not verdict.sensitive.found
                assert verdict.min_loss is not None

    def test_to_dict(self):
        data = claim3_dichotomy(ConstantLearner(k=0), 8, 1, 0.25)[0].to_dict()
        assert data["holds"] is True
        assert data["sensitive_index"] is None


def test_type_profile_uses_one_representative_for_homogeneous_learners():
    t = order_type(parse_sample("(2,-);(9,+)", 12))
    assert type_profile(ExpGibbsLearner(1), t, 12).representatives == 1
