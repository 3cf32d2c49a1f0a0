"""p-profiles: Pr[h(x)=+1] as a function of pos(x, S) for samples of one equivalence type."""

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from src.core.models import EquivalenceType, Probability, Sample
from src.core.ordering import pos, sample_of_type
from src.learners.base import Learner
from src.utils.exceptions import DomainException
from src.utils.randomization import derive_rng


@dataclass(frozen=True)
class PProfile:
    """p[i] for i = 0..m; ``None`` marks an index with no admissible query point."""

    type: EquivalenceType
    p: tuple[Probability | None, ...]
    max_deviation: float
    representatives: int = 1

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if len(self.p) != self.type.m + 1:
            raise DomainException(
                f"Profile of a size-{self.type.m} type needs {self.type.m + 1} entries, got {len(self.p)}",
                argument="p",
            )
        if any(v is not None and not 0 <= v <= 1 + 1e-12 for v in self.p):
            raise DomainException(f"Profile entries must lie in [0, 1], got {self.p}", argument="p")

    def is_valid(self) -> bool:
        try:
            self.validate()
            return True
        except DomainException:
            return False

    @property
    def m(self) -> int:
        return self.type.m

    @property
    def absent(self) -> list[int]:
        return [i for i, v in enumerate(self.p) if v is None]

    @property
    def is_complete(self) -> bool:
        return not self.absent

    def to_dict(self) -> dict:
        return {
            "type": str(self.type),
            "p": [None if v is None else float(v) for v in self.p],
            "max_deviation": self.max_deviation,
            "representatives": self.representatives,
        }


def spread_points(points: Sequence[int], m: int) -> tuple[int, ...] | None:
    """m points of ``points`` separated by at least one unused point on each side, if possible."""
    pool = sorted(set(points))
    if len(pool) < 2 * m + 1:
        return None
    return tuple(pool[2 * j + 1] for j in range(m))


def _random_spread(pool: list[int], m: int, rng: np.random.Generator) -> list[int]:
    """m pool points with an unused pool point before, between and after them."""
    # i_j = u_j + j maps increasing u_j in [0, len-m-1) onto gapped indices in [1, len-2]
    offsets = sorted(int(u) for u in rng.choice(len(pool) - m - 1, size=m, replace=False))
    return [pool[u + j] for j, u in enumerate(offsets, start=1)]


def representative_samples(t: EquivalenceType, points: Sequence[int], n: int, reps: int, seed: int = 0) -> list[Sample]:
    """``reps`` samples of type ``t``: a spread-out one first, then random ones drawn from ``seed``.

    Random representatives keep every pos slot queryable whenever the pool
    has at least 2m+1 points; smaller pools fall back to unrestricted draws.
    """
    pool = sorted(set(points))
    samples = []
    spread = spread_points(pool, t.m)
    if spread is not None:
        samples.append(sample_of_type(t, spread, n))
    rng = derive_rng(seed, "profile")
    while len(samples) < reps:
        if spread is not None:
            chosen = _random_spread(pool, t.m, rng)
        else:
            chosen = [int(x) for x in rng.choice(pool, size=t.m, replace=False)]
        samples.append(sample_of_type(t, chosen, n))
    return samples[:reps]


def _mean(values: list[Probability]) -> Probability:
    if max(values) == min(values):
        return values[0]
    return math.fsum(float(v) for v in values) / len(values)


def p_profile(
    learner: Learner,
    t: EquivalenceType,
    points: Sequence[int],
    reps: int = 4,
    n: int | None = None,
    samples: Sequence[Sample] | None = None,
    seed: int = 0,
) -> PProfile:
    """Estimate the p-profile of ``learner`` on type ``t`` over the point set.

    Args:
        learner: Learner under test
        t: Permutation equivalence type
        points: The point set X; query points range over X minus the sample
        reps: Number of representative samples when ``samples`` is not given
        n: Domain size (defaults to max(X))
        samples: Explicit representatives of type ``t``
        seed: Seed for the random representatives

    Returns:
        PProfile with p[i] averaged over representatives and the largest spread seen
    """
    if not t.is_permutation:
        raise DomainException(f"Type {t} is not a permutation type", argument="t")
    pool = sorted(set(points))
    if len(pool) < t.m + 1:
        raise DomainException(f"Need at least {t.m + 1} points, got {len(pool)}", argument="points")
    size = n if n is not None else pool[-1]
    reps_list = list(samples) if samples is not None else representative_samples(t, pool, size, reps, seed)

    values: list[list[Probability]] = [[] for _ in range(t.m + 1)]
    for sample in reps_list:
        queries = [x for x in pool if x not in sample.underlying_set]
        rates = learner(sample).positive_rates(queries)
        for x, rate in zip(queries, rates):
            values[pos(x, sample)].append(rate)

    p = tuple(_mean(v) if v else None for v in values)
    deviation = max((float(max(v)) - float(min(v)) for v in values if v), default=0.0)
    return PProfile(type=t, p=p, max_deviation=deviation, representatives=len(reps_list))
