"""Sensitive indices, the replacement interval I(S) and the sensitive-index / high-loss dichotomy."""

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from src.core.distributions import hard_distribution
from src.core.losses import population_loss
from src.core.models import EquivalenceType, Sample
from src.core.ordering import order_type, permutation_types, samples_of_type
from src.homogeneity.profiles import PProfile, p_profile
from src.learners.base import Learner
from src.utils.exceptions import DomainException, RealizabilityException
from src.utils.logging import get_experiment_logger

GAP_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SensitiveIndexReport:
    index: int | None
    gap: float
    profile: PProfile
    threshold: float

    @property
    def found(self) -> bool:
        return self.index is not None

    def to_dict(self) -> dict[str, Any]:
        return {"index": self.index, "gap": self.gap, "threshold": self.threshold, "profile": self.profile.to_dict()}


def sensitive_index(profile: PProfile, threshold: float) -> SensitiveIndexReport:
    """Smallest i >= 1 with |p[i] - p[i-1]| >= threshold; ``gap`` is that difference (or the largest one)."""
    if not profile.is_complete:
        raise DomainException(
            f"Profile of {profile.type} has no value at indices {profile.absent}", argument="profile", value=profile.absent
        )
    gaps = [abs(float(profile.p[i]) - float(profile.p[i - 1])) for i in range(1, len(profile.p))]
    for i, gap in enumerate(gaps, start=1):
        if gap >= threshold - GAP_TOLERANCE:
            return SensitiveIndexReport(index=i, gap=gap, profile=profile, threshold=threshold)
    return SensitiveIndexReport(index=None, gap=max(gaps, default=0.0), profile=profile, threshold=threshold)


@dataclass(frozen=True)
class PointInterval:
    """The integer interval {lo..hi}; empty when lo > hi."""

    lo: int
    hi: int

    @classmethod
    def empty(cls) -> "PointInterval":
        return cls(1, 0)

    @property
    def size(self) -> int:
        return max(0, self.hi - self.lo + 1)

    def __contains__(self, x: int) -> bool:
        return self.lo <= x <= self.hi

    def points(self) -> range:
        return range(self.lo, self.hi + 1)

    def __str__(self) -> str:
        return "{}" if self.size == 0 else f"{{{self.lo}..{self.hi}}}"


def interval_I(sample: Sample, k: int, index: int | None) -> PointInterval:
    """Replacement interval of the sample's sensitive point inside {1..k}.

    With x_j the point of pos ``index``, x- and x+ its neighbours in S (0 and
    k+1 at the ends): the open interval (x-, x+) when k/2 lies outside it,
    otherwise (x-, k/2] for a negative x_j and (k/2, x+) for a positive one.
    Empty when the order-type is not a permutation or ``index`` is None.
    """
    if k < 2 or k % 2:
        raise DomainException(f"k must be even and at least 2, got {k}", argument="k", value=k)
    t = order_type(sample)
    if not t.is_permutation or index is None:
        return PointInterval.empty()
    if not 1 <= index <= sample.m:
        raise DomainException(f"Sensitive index must lie in 1..{sample.m}, got {index}", argument="index", value=index)

    j = t.pi.index(index)
    x_j, y_j = sample.points[j], sample.labels[j]
    below = max((x for x in sample.points if x < x_j), default=0)
    above = min((x for x in sample.points if x > x_j), default=k + 1)
    half = Fraction(k, 2)
    if not below < half < above:
        return PointInterval(below + 1, above - 1)
    if y_j == -1:
        return PointInterval(below + 1, k // 2)
    return PointInterval(k // 2 + 1, above - 1)


def type_profile(
    learner: Learner, t: EquivalenceType, k: int, reps: int = 4, seed: int = 0, points: Sequence[int] | None = None
) -> PProfile:
    """p-profile of ``t`` over ``points`` (the full domain {1..k} by default).

    One representative suffices for exactly homogeneous learners.
    """
    pool = range(1, k + 1) if points is None else points
    return p_profile(learner, t, pool, reps=1 if learner.exactly_homogeneous else reps, n=k, seed=seed)


def interval_for_learner(
    learner: Learner, sample: Sample, k: int, gamma: float, reps: int = 4, profile: PProfile | None = None
) -> tuple[PointInterval, SensitiveIndexReport | None]:
    """I(S) using the learner's sensitive index at level gamma/(2m).

    A profile with an unqueryable pos slot has no sensitive index, so I(S) is empty.
    """
    t = order_type(sample)
    if not t.is_permutation:
        return PointInterval.empty(), None
    profile = profile or type_profile(learner, t, k, reps)
    if not profile.is_complete:
        return PointInterval.empty(), None
    report = sensitive_index(profile, gamma / (2 * sample.m))
    return interval_I(sample, k, report.index), report


@dataclass(frozen=True)
class DichotomyVerdict:
    """Outcome for one type: a sensitive index, or high loss on every representative."""

    type: EquivalenceType
    sensitive: SensitiveIndexReport
    min_loss: float | None
    loss_threshold: float

    @property
    def holds(self) -> bool:
        return self.sensitive.found or (self.min_loss is not None and self.min_loss > self.loss_threshold)

    def to_dict(self) -> dict[str, Any]:
        return {
            "type": str(self.type),
            "sensitive_index": self.sensitive.index,
            "gap": self.sensitive.gap,
            "min_loss": self.min_loss,
            "loss_threshold": self.loss_threshold,
            "holds": self.holds,
        }


def claim3_dichotomy(learner: Learner, k: int, m: int, gamma: float, reps: int = 4) -> list[DichotomyVerdict]:
    """For every permutation type on {1..k}: a gamma/(2m)-sensitive index exists, or every sample of the
    type has population loss above 1/2 - gamma - m/k under the hard distribution (exhaustive)."""
    distribution = hard_distribution(k)
    loss_threshold = 0.5 - gamma - m / k
    exp_logger = get_experiment_logger("sensitivity")
    exp_logger.log_stage("dichotomy", {"learner": learner.describe(), "k": k, "m": m, "gamma": gamma})

    verdicts = []
    threshold = gamma / (2 * m)
    for t in permutation_types(m):
        try:
            profile = type_profile(learner, t, k, reps)
        except RealizabilityException:
            continue
        if profile.is_complete:
            report = sensitive_index(profile, threshold)
        else:
            report = SensitiveIndexReport(index=None, gap=0.0, profile=profile, threshold=threshold)
        min_loss = None
        if not report.found:
            min_loss = min(
                float(population_loss(learner(sample), distribution)) for sample in samples_of_type(t, range(1, k + 1), k)
            )
        verdicts.append(DichotomyVerdict(t, report, min_loss, loss_threshold))

    failures = [v for v in verdicts if not v.holds]
    exp_logger.log_verdict("dichotomy", not failures, {"types": len(verdicts), "failures": len(failures)})
    return verdicts
