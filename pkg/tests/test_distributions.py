"""Tests for hard distributions and i.i.d. sampling."""

from fractions import Fraction

import numpy as np
import pytest

from src.core.distributions import hard_distribution, restricted_hard_distribution
from src.core.ordering import is_realizable
from src.core.sampling import draw_points, sample_from_distribution
from src.utils.exceptions import DomainException
from src.utils.randomization import derive_rng


class TestHardDistribution:
    def test_uniform_marginal(self):
        distribution = hard_distribution(10)
        assert distribution.n == 10
        assert set(distribution.marginal) == {Fraction(1, 10)}
        assert distribution.true_threshold == 5

    @pytest.mark.parametrize("k", [0, 1, 7, -4])
    def test_invalid_k(self, k):
        with pytest.raises(DomainException):
            hard_distribution(k)


class TestRestrictedHardDistribution:
    """Test the hard distribution on a point subset."""

    def test_labels_split_the_subset(self):
        distribution = restricted_hard_distribution([3, 11, 7, 20], 24)
        assert distribution.support == (3, 7, 11, 20)
        assert distribution.true_threshold == 7
        assert [distribution.label(x) for x in (3, 7, 11, 20)] == [-1, -1, 1, 1]
        assert distribution.marginal[2] == Fraction(1, 4)
        assert distribution.marginal[0] == 0

    def test_odd_subset(self):
        with pytest.raises(DomainException):
            restricted_hard_distribution([1, 2, 3], 8)

    def test_points_outside_domain(self):
        with pytest.raises(DomainException):
            restricted_hard_distribution([1, 9], 8)


class TestSampling:
    def setup_method(self):
        self.distribution = hard_distribution(16)

    def test_sample_is_labelled_by_target(self):
        """Test that drawn samples are realizable by the distribution's threshold."""
        for trial in range(20):
            sample = sample_from_distribution(self.distribution, 6, derive_rng(0, "trial", trial))
            assert sample.m == 6
            assert is_realizable(sample)
            assert all(y == self.distribution.label(x) for x, y in zip(sample.points, sample.labels))

    def test_seeded_reproducibility(self):
        first = sample_from_distribution(self.distribution, 5, derive_rng(3, "trial", 1))
        second = sample_from_distribution(self.distribution, 5, derive_rng(3, "trial", 1))
        assert first == second

    def test_restricted_support_only(self):
        distribution = restricted_hard_distribution([2, 9], 12)
        points = draw_points(distribution, 500, np.random.default_rng(1))
        assert set(points.tolist()) <= {2, 9}

    def test_invalid_size(self):
        with pytest.raises(DomainException):
            draw_points(self.distribution, 0, np.random.default_rng(0))
