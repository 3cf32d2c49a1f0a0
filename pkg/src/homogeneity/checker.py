"""Approximate m-homogeneity checking over a finite point set."""

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from src.core.models import EquivalenceType, Probability, Sample
from src.core.ordering import permutation_types, pos, sample_of_type
from src.learners.base import Learner
from src.utils.exceptions import DomainException, RealizabilityException
from src.utils.logging import get_experiment_logger
from src.utils.parallel import run_parallel
from src.utils.randomization import derive_rng

DEFAULT_EVALUATION_CAP = 10**7


@dataclass(frozen=True)
class Observation:
    """One evaluation Pr_{h~Q_S}[h(x)=+1]."""

    sample: Sample
    x: int
    rate: Probability

    def to_dict(self) -> dict[str, Any]:
        return {"sample": str(self.sample), "x": self.x, "rate": float(self.rate)}


@dataclass(frozen=True)
class HomogeneityWitness:
    """Two equivalent samples whose query points share pos but not the predicted probability."""

    type: EquivalenceType
    index: int
    low: Observation
    high: Observation

    @property
    def violation(self) -> float:
        return float(self.high.rate) - float(self.low.rate)

    def to_dict(self) -> dict[str, Any]:
        return {
            "type": str(self.type),
            "pos": self.index,
            "low": self.low.to_dict(),
            "high": self.high.to_dict(),
            "violation": self.violation,
        }


@dataclass
class HomogeneityVerdict:
    passed: bool
    worst_violation: float
    tolerance: float
    witness: HomogeneityWitness | None
    exhaustive: bool
    coverage: float
    evaluations: int
    skipped_types: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "worst_violation": self.worst_violation,
            "tolerance": self.tolerance,
            "witness": self.witness.to_dict() if self.witness else None,
            "exhaustive": self.exhaustive,
            "coverage": self.coverage,
            "evaluations": self.evaluations,
            "skipped_types": self.skipped_types,
        }


def _type_extremes(
    item: tuple[Learner, EquivalenceType, tuple[int, ...], int, list[tuple[int, ...]]],
) -> tuple[EquivalenceType, dict[int, tuple[Observation, Observation]] | None, int]:
    """Per-pos min and max observations over the given point subsets of one type; None if the learner rejects it."""
    learner, t, pool, n, subsets = item
    extremes: dict[int, tuple[Observation, Observation]] = {}
    evaluations = 0
    for chosen in subsets:
        sample = sample_of_type(t, chosen, n)
        try:
            posterior = learner(sample)
        except RealizabilityException:
            return t, None, evaluations
        queries = [x for x in pool if x not in sample.underlying_set]
        for x, rate in zip(queries, posterior.positive_rates(queries)):
            evaluations += 1
            i = pos(x, sample)
            current = extremes.get(i)
            if current is None:
                obs = Observation(sample, x, rate)
                extremes[i] = (obs, obs)
            elif rate < current[0].rate:
                extremes[i] = (Observation(sample, x, rate), current[1])
            elif rate > current[1].rate:
                extremes[i] = (current[0], Observation(sample, x, rate))
    return t, extremes, evaluations


def _sampled_subsets(pool: Sequence[int], m: int, count: int, seed: int, t_index: int) -> list[tuple[int, ...]]:
    rng = derive_rng(seed, "homogeneity", t_index)
    return [tuple(sorted(int(x) for x in rng.choice(pool, size=m, replace=False))) for _ in range(count)]


def check_approx_homogeneity(
    learner: Learner,
    points: Sequence[int],
    m: int,
    gamma: float,
    evaluation_cap: int = DEFAULT_EVALUATION_CAP,
    n: int | None = None,
    seed: int = 0,
    workers: int = 1,
) -> HomogeneityVerdict:
    """Test gamma-approximate m-homogeneity of ``learner`` on the point set.

    For every permutation type and every pos value the spread between the
    largest and smallest Pr[h(x)=+1] over equivalent samples S from X and
    query points x in X minus S is measured; the largest spread is the worst
    pairwise violation. The check is exhaustive when the number of (S, x)
    evaluations is at most ``evaluation_cap`` and falls back to uniformly
    sampled samples per type otherwise. Types the learner rejects as
    non-realizable are skipped and listed.

    Args:
        learner: Learner under test
        points: The point set X
        m: Sample size
        gamma: Approximation parameter in (0, 1); the tolerance is gamma/(5m)
        evaluation_cap: Largest number of (S, x) evaluations checked exhaustively
        n: Domain size (defaults to max(X))
        seed: Seed of the sampling fallback
        workers: Process count; types are checked independently

    Returns:
        HomogeneityVerdict with the worst violation and a witness on failure
    """
    if not 0 < gamma < 1:
        raise DomainException(f"gamma must lie in (0, 1), got {gamma}", argument="gamma", value=gamma)
    pool = tuple(sorted(set(points)))
    if m < 1 or len(pool) < m + 1:
        raise DomainException(f"Need m >= 1 and at least m+1 points, got m={m}, |X|={len(pool)}", argument="points")
    size = n if n is not None else pool[-1]
    exp_logger = get_experiment_logger("homogeneity")

    types = permutation_types(m)
    per_type_samples = math.comb(len(pool), m)
    total = len(types) * per_type_samples * (len(pool) - m)
    exhaustive = total <= evaluation_cap
    exp_logger.log_stage(
        "check-homogeneity",
        {"learner": learner.describe(), "points": len(pool), "m": m, "gamma": gamma, "exhaustive": exhaustive},
    )

    if exhaustive:
        all_subsets = list(combinations(pool, m))
        items = [(learner, t, pool, size, all_subsets) for t in types]
    else:
        count = max(1, evaluation_cap // (len(types) * (len(pool) - m)))
        items = [(learner, t, pool, size, _sampled_subsets(pool, m, count, seed, j)) for j, t in enumerate(types)]

    worst = 0.0
    witness = None
    evaluations = 0
    skipped = []
    for t, extremes, done in run_parallel(_type_extremes, items, workers=workers):
        evaluations += done
        if extremes is None:
            skipped.append(str(t))
            continue
        for i, (low, high) in sorted(extremes.items()):
            spread = float(high.rate) - float(low.rate)
            if spread > worst:
                worst = spread
                witness = HomogeneityWitness(t, i, low, high)

    tolerance = gamma / (5 * m)
    passed = worst <= tolerance
    verdict = HomogeneityVerdict(
        passed=passed,
        worst_violation=worst,
        tolerance=tolerance,
        witness=None if passed else witness,
        exhaustive=exhaustive,
        coverage=1.0 if exhaustive else min(1.0, evaluations / total),
        evaluations=evaluations,
        skipped_types=skipped,
    )
    exp_logger.log_verdict(
        "homogeneity", passed, {"worst_violation": worst, "tolerance": tolerance, "coverage": verdict.coverage}
    )
    return verdict
