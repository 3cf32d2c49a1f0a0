"""Empirical and population losses of hypotheses and Gibbs classifiers."""

from fractions import Fraction

from src.core.models import (
    POSITIVE,
    GibbsClassifier,
    Hypothesis,
    Probability,
    RealizableDistribution,
    Sample,
    ThresholdHypothesis,
    exact_sum,
)
from src.utils.exceptions import DomainException


def _as_gibbs(c: Hypothesis | GibbsClassifier) -> GibbsClassifier:
    if isinstance(c, GibbsClassifier):
        return c
    return GibbsClassifier.point_mass(c)


def _check_domain(c: Hypothesis | GibbsClassifier, n: int) -> None:
    if c.n != n:
        raise DomainException(f"Domain mismatch: classifier on {c.n} points, data on {n}", argument="n", value=(c.n, n))


def empirical_loss(c: Hypothesis | GibbsClassifier, sample: Sample) -> Probability:
    """(1/m)·sum_i Pr_{h~c}[h(x_i) != y_i]; exact when the weights are rational."""
    _check_domain(c, sample.n)
    if not isinstance(c, GibbsClassifier):
        mistakes = sum(1 for ex in sample.examples if c.predict(ex.x) != ex.y)
        return Fraction(mistakes, sample.m)
    rates = c.positive_rates(sample.points)
    errors = [1 - rate if ex.y == POSITIVE else rate for ex, rate in zip(sample.examples, rates)]
    return exact_sum(errors) / sample.m


def _threshold_error_mass(k: int, distribution: RealizableDistribution) -> Probability:
    # h_k and h_t disagree exactly on (min(k,t), max(k,t)]
    lo, hi = sorted((k, distribution.true_threshold))
    return distribution.cumulative[hi] - distribution.cumulative[lo]


def population_loss(c: Hypothesis | GibbsClassifier, distribution: RealizableDistribution) -> Probability:
    """Exact expectation of the 0-1 loss of ``c`` under the realizable distribution."""
    _check_domain(c, distribution.n)
    gibbs = _as_gibbs(c)
    terms = []
    for h, w in gibbs.atoms:
        if isinstance(h, ThresholdHypothesis):
            terms.append(w * _threshold_error_mass(h.k, distribution))
        else:
            bits = h.as_bits()
            target = distribution.target.as_bits()
            mass = exact_sum(p for p, b, t in zip(distribution.marginal, bits, target) if b != t)
            terms.append(w * mass)
    return exact_sum(terms)
