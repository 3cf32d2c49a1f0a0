"""Drawing i.i.d. samples from realizable distributions."""

import numpy as np

from src.core.models import LabeledExample, RealizableDistribution, Sample
from src.utils.exceptions import DomainException


def draw_points(distribution: RealizableDistribution, m: int, rng: np.random.Generator) -> np.ndarray:
    """m i.i.d. points (1-based) from the marginal."""
    if m < 1:
        raise DomainException(f"Sample size must be positive, got {m}", argument="m", value=m)
    return rng.choice(distribution.n, size=m, p=distribution.float_marginal) + 1


def sample_from_distribution(distribution: RealizableDistribution, m: int, rng: np.random.Generator) -> Sample:
    """An i.i.d. sample of size m labelled by the distribution's threshold."""
    t = distribution.true_threshold
    examples = tuple(LabeledExample(int(x), -1 if x <= t else 1) for x in draw_points(distribution, m, rng))
    return Sample(examples, distribution.n)
