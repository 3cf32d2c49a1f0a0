"""Uniform hard distributions labelled by the middle threshold."""

from collections.abc import Sequence
from fractions import Fraction

from src.core.models import RealizableDistribution
from src.utils.exceptions import DomainException


def hard_distribution(k: int) -> RealizableDistribution:
    """Uniform marginal on {1..k}, labels h_{k/2}."""
    if not isinstance(k, int) or k < 2 or k % 2:
        raise DomainException(f"The hard distribution needs an even k >= 2, got {k}", argument="k", value=k)
    return RealizableDistribution(tuple(Fraction(1, k) for _ in range(k)), k // 2)


def restricted_hard_distribution(points: Sequence[int], n: int) -> RealizableDistribution:
    """Uniform over an even-sized point set X' inside {1..n}; x is negative iff it lies in the lower half of X'.

    The labelling threshold is the largest point of the lower half, so the
    distribution stays realizable on the full domain.
    """
    chosen = sorted(set(points))
    if not chosen or len(chosen) % 2:
        raise DomainException(f"Need a nonempty even-sized point set, got {len(chosen)} points", argument="points")
    if chosen[0] < 1 or chosen[-1] > n:
        raise DomainException(f"Points must lie in 1..{n}", argument="points", value=chosen)
    share = Fraction(1, len(chosen))
    marginal = [Fraction(0)] * n
    for x in chosen:
        marginal[x - 1] = share
    return RealizableDistribution(tuple(marginal), chosen[len(chosen) // 2 - 1])
