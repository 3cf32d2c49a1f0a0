"""Domains, samples, hypotheses, losses and order combinatorics."""

from .distributions import hard_distribution, restricted_hard_distribution
from .literals import format_sample, parse_sample
from .losses import empirical_loss, population_loss
from .models import (
    NEGATIVE,
    POSITIVE,
    Domain,
    EquivalenceType,
    GibbsClassifier,
    Hypothesis,
    LabeledExample,
    Probability,
    RealizableDistribution,
    Sample,
    TableHypothesis,
    ThresholdHypothesis,
    canonical_hypothesis,
    exact_sum,
    same_predictor,
)
from .ordering import (
    equivalent,
    is_permutation_type,
    is_realizable,
    order_type,
    permutation_types,
    pos,
    realizable_labels,
    sample_of_type,
    samples_of_type,
)
from .sampling import sample_from_distribution


def predict(h: Hypothesis, x: int) -> int:
    """Label assigned by ``h`` to ``x``."""
    return h.predict(x)


__all__ = [
    "NEGATIVE",
    "POSITIVE",
    "Domain",
    "EquivalenceType",
    "GibbsClassifier",
    "Hypothesis",
    "LabeledExample",
    "Probability",
    "RealizableDistribution",
    "Sample",
    "TableHypothesis",
    "ThresholdHypothesis",
    "canonical_hypothesis",
    "empirical_loss",
    "equivalent",
    "exact_sum",
    "format_sample",
    "hard_distribution",
    "is_permutation_type",
    "is_realizable",
    "order_type",
    "parse_sample",
    "permutation_types",
    "population_loss",
    "pos",
    "predict",
    "realizable_labels",
    "restricted_hard_distribution",
    "same_predictor",
    "sample_from_distribution",
    "sample_of_type",
    "samples_of_type",
]
