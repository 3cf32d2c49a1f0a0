"""KL divergences between finite mixtures, product measures and event masses."""

import math
from collections.abc import Hashable, Iterable, Mapping
from itertools import product

from src.core.models import GibbsClassifier, Hypothesis, Probability, canonical_hypothesis
from src.utils.exceptions import DomainException

Measure = Mapping[Hashable, Probability]


def measure_kl(q: Measure, p: Measure) -> float:
    """KL(q||p) for finite measures keyed by outcome; +inf when q charges an outcome p does not."""
    terms = []
    for outcome, wq in q.items():
        if wq == 0:
            continue
        wp = p.get(outcome, 0)
        if wp == 0:
            return math.inf
        terms.append(float(wq) * (math.log(float(wq)) - math.log(float(wp))))
    return max(0.0, math.fsum(terms))


def as_measure(c: GibbsClassifier) -> dict[tuple, Probability]:
    """Mixture as a measure keyed by canonical predictor."""
    return {h.key: w for h, w in c.atoms}


def kl_divergence(q: GibbsClassifier, p: GibbsClassifier) -> float:
    """KL(Q||P) matching atoms by predictor equality on the full domain."""
    if q.n != p.n:
        raise DomainException(f"Cannot compare mixtures on {q.n} and {p.n} points", argument="n", value=(q.n, p.n))
    return measure_kl(as_measure(q), as_measure(p))


def kl_bernoulli(q: float, p: float) -> float:
    """Binary KL q·ln(q/p) + (1-q)·ln((1-q)/(1-p)) with 0·ln 0 = 0."""
    for name, value in (("q", q), ("p", p)):
        if not 0 <= value <= 1:
            raise DomainException(f"{name} must lie in [0, 1], got {value}", argument=name, value=value)
    q, p = float(q), float(p)
    total = 0.0
    if q > 0:
        if p == 0:
            return math.inf
        total += q * math.log(q / p)
    if q < 1:
        if p == 1:
            return math.inf
        total += (1 - q) * math.log((1 - q) / (1 - p))
    return max(0.0, total)


def product_measure(c: GibbsClassifier | Measure, r: int) -> dict[tuple, Probability]:
    """The r-fold product measure, keyed by tuples of atom keys."""
    if r < 1:
        raise DomainException(f"Product order must be positive, got {r}", argument="r", value=r)
    base = as_measure(c) if isinstance(c, GibbsClassifier) else dict(c)
    result: dict[tuple, Probability] = {}
    for outcome in product(base.items(), repeat=r):
        weight: Probability = 1
        for _, w in outcome:
            weight = weight * w
        result[tuple(key for key, _ in outcome)] = weight
    return result


def event_probability(c: GibbsClassifier, event: Iterable[Hypothesis]) -> Probability:
    """Q(E) for an event given as a set of hypotheses."""
    keys = {canonical_hypothesis(h).key for h in event}
    measure = as_measure(c)
    return sum((measure[key] for key in keys if key in measure), 0)


def event_kl_lower_bound(q: GibbsClassifier, p: GibbsClassifier, event: Iterable[Hypothesis]) -> float:
    """kl_bernoulli(Q(E), P(E)), never larger than KL(Q||P)."""
    hypotheses = list(event)
    q_mass = min(1.0, float(event_probability(q, hypotheses)))
    p_mass = min(1.0, float(event_probability(p, hypotheses)))
    return kl_bernoulli(q_mass, p_mass)
