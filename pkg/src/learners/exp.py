"""The exponentially weighted Gibbs learner over sample thresholds."""

import math
from fractions import Fraction

from src.core.losses import empirical_loss
from src.core.models import GibbsClassifier, Sample, ThresholdHypothesis
from src.learners.base import Learner
from src.utils.exceptions import DomainException


class ExpGibbsLearner(Learner):
    """Q_S(h_{x_i}) proportional to exp(-beta * L_S(h_{x_i})), one atom per sample point.

    ``beta = 1`` is the plain exponential-weights rule; larger ``beta`` gives a
    learner that concentrates on the empirical risk minimizers. Weights are
    normalized with ``math.fsum`` so equivalent samples receive bitwise
    identical posteriors.
    """

    exactly_homogeneous = True

    def __init__(self, beta: float = 1.0):
        if not isinstance(beta, (int, float)) or isinstance(beta, bool) or beta < 0 or math.isnan(beta):
            raise DomainException(f"beta must be a nonnegative real, got {beta!r}", argument="beta", value=beta)
        super().__init__("exp", {"beta": float(beta)})
        self.beta = float(beta)

    def posterior(self, sample: Sample) -> GibbsClassifier:
        hypotheses = [ThresholdHypothesis(x, sample.n) for x in sample.points]
        if self.beta == 0:
            share = Fraction(1, sample.m)
            return GibbsClassifier.from_atoms(sample.n, [(h, share) for h in hypotheses])

        raw = [math.exp(-self.beta * float(empirical_loss(h, sample))) for h in hypotheses]
        total = math.fsum(raw)
        return GibbsClassifier.from_atoms(sample.n, [(h, w / total) for h, w in zip(hypotheses, raw)])
