"""Empirical risk minimizers: max-margin ERM and ERM over a finite threshold cover."""

import math
from fractions import Fraction

from src.core.losses import empirical_loss
from src.core.models import NEGATIVE, POSITIVE, GibbsClassifier, Sample, ThresholdHypothesis
from src.core.ordering import is_realizable
from src.learners.base import Learner
from src.utils.exceptions import DomainException, RealizabilityException


def margin_bounds(sample: Sample) -> tuple[int, int]:
    """(a, b): largest negative point (0 if none) and smallest positive point (n+1 if none)."""
    a = max((ex.x for ex in sample.examples if ex.y == NEGATIVE), default=0)
    b = min((ex.x for ex in sample.examples if ex.y == POSITIVE), default=sample.n + 1)
    return a, b


def cover_thresholds(n: int, eps: float) -> tuple[int, ...]:
    """Centers of s = ceil(1/eps) equal cells of [0, n], rounded half up and deduplicated."""
    if not 0 < eps <= 1:
        raise DomainException(f"Cover resolution must lie in (0, 1], got {eps}", argument="eps", value=eps)
    s = math.ceil(Fraction(eps).limit_denominator(10**9) ** -1)
    centers = {min(n, math.floor(Fraction((2 * j + 1) * n, 2 * s) + Fraction(1, 2))) for j in range(s)}
    return tuple(sorted(centers))


class ERMLearner(Learner):
    """Point mass on the max-margin consistent threshold h_k, k = floor((a+b)/2) clamped to n."""

    def __init__(self):
        super().__init__("erm")

    def posterior(self, sample: Sample) -> GibbsClassifier:
        if not is_realizable(sample):
            raise RealizabilityException(str(sample), learner=self.describe())
        a, b = margin_bounds(sample)
        k = min((a + b) // 2, sample.n)
        return GibbsClassifier.point_mass(ThresholdHypothesis(k, sample.n))


class CoverERMLearner(Learner):
    """ERM restricted to the threshold cover of resolution eps.

    Ties go to the cover threshold nearest the max-margin midpoint (a+b)/2,
    then to the smaller threshold. Non-realizable samples are accepted.
    """

    def __init__(self, eps: float):
        cover_thresholds(1, eps)
        super().__init__("erm", {"cover": eps})
        self.eps = eps
        self._covers: dict[int, tuple[int, ...]] = {}

    def cover(self, n: int) -> tuple[int, ...]:
        if n not in self._covers:
            self._covers[n] = cover_thresholds(n, self.eps)
        return self._covers[n]

    def posterior(self, sample: Sample) -> GibbsClassifier:
        a, b = margin_bounds(sample)
        midpoint = Fraction(a + b, 2)

        def rank(c: int) -> tuple:
            return (empirical_loss(ThresholdHypothesis(c, sample.n), sample), abs(c - midpoint), c)

        best = min(self.cover(sample.n), key=rank)
        return GibbsClassifier.point_mass(ThresholdHypothesis(best, sample.n))
