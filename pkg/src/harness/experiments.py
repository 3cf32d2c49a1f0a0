"""End-to-end experiments on the hard distribution: the loss/KL tradeoff, spacing and KL growth."""

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import partial
from typing import Any

import numpy as np

from src.config.experiment_config import ExperimentConfig
from src.core.distributions import hard_distribution, restricted_hard_distribution
from src.core.losses import empirical_loss, population_loss
from src.core.models import EquivalenceType, GibbsClassifier, LabeledExample, RealizableDistribution, Sample
from src.core.ordering import order_type
from src.core.sampling import sample_from_distribution
from src.harness.trials import run_trials
from src.homogeneity.coloring import find_homogeneous_subset
from src.homogeneity.profiles import PProfile
from src.learners import LearnerFactory
from src.learners.base import Learner
from src.pacbayes.bounds import mcallester_bound
from src.pacbayes.divergence import kl_divergence
from src.pacbayes.priors import PriorFactory, prior_entropy
from src.sensitivity.indices import PointInterval, SensitiveIndexReport, interval_I, sensitive_index, type_profile
from src.utils.exceptions import BudgetExhaustedException, DomainException
from src.utils.logging import get_experiment_logger
from src.utils.randomization import chunk_bounds, derive_rng

DEFAULT_KL_CONSTANT = 1 / 64
SUBSET_POOL = 24
SPACING_CHUNK = 1 << 16


def kl_threshold(interval_size: int, m: int, gamma: float, c: float = DEFAULT_KL_CONSTANT) -> float:
    """c·(gamma²/m²)·ln|I|/ln ln|I|, and -inf for |I| <= 2."""
    if interval_size <= 2:
        return -math.inf
    return c * gamma**2 / m**2 * math.log(interval_size) / math.log(math.log(interval_size))


def spacing_gap(k: int, m: int) -> Fraction:
    return Fraction(k, 8 * (m + 1) ** 2)


def spacing_event(points: tuple[int, ...] | list[int], k: int, m: int) -> bool:
    """Every two of x_1..x_m, k/2 lie at least k/(8(m+1)^2) apart."""
    values = sorted([*points, Fraction(k, 2)])
    gap = spacing_gap(k, m)
    return all(b - a >= gap for a, b in zip(values, values[1:]))


def spacing_event_probability(k: int, m: int, trials: int, seed: int = 0) -> float:
    """Monte-Carlo frequency of the spacing event for m uniform points of {1..k}."""
    if k % 2 or k < 8 * (m + 1) ** 2:
        raise DomainException(f"Need an even k >= 8(m+1)^2 = {8 * (m + 1) ** 2}, got {k}", argument="k", value=k)
    if trials < 1:
        raise DomainException(f"trials must be positive, got {trials}", argument="trials", value=trials)
    scale = 8 * (m + 1) ** 2
    hits = 0
    for index, start, stop in chunk_bounds(trials, SPACING_CHUNK):
        rng = derive_rng(seed, "spacing", m, index)
        points = rng.integers(1, k + 1, size=(stop - start, m))
        # doubled coordinates keep k/2 integral
        full = np.concatenate([2 * points, np.full((stop - start, 1), k)], axis=1)
        full.sort(axis=1)
        hits += int(np.count_nonzero(np.all(np.diff(full, axis=1) * scale >= 2 * k, axis=1)))
    return hits / trials


@dataclass(frozen=True)
class HardDomain:
    """The distribution an experiment samples from and how it was chosen."""

    distribution: RealizableDistribution
    method: str
    subset: tuple[int, ...] | None = None


def select_hard_distribution(learner: Learner, cfg: ExperimentConfig) -> HardDomain:
    """Full hard distribution for exactly homogeneous learners; otherwise, when enabled,
    the hard distribution restricted to a homogeneous subset found on an evenly spaced pool."""
    exp_logger = get_experiment_logger("harness")
    if learner.exactly_homogeneous or not cfg.homogeneous_search:
        if not learner.exactly_homogeneous:
            exp_logger.logger.warning(f"{learner.describe()} is not known to be homogeneous; using the full domain")
        return HardDomain(hard_distribution(cfg.n), "full")

    pool = sorted({int(x) for x in np.linspace(1, cfg.n, num=min(cfg.n, SUBSET_POOL))})
    target = min(2 * (cfg.m + 1), len(pool) - len(pool) % 2)
    result = find_homogeneous_subset(learner, pool, cfg.m, cfg.gamma, target, n=cfg.n)
    if result.subset is None and result.exhausted:
        raise BudgetExhaustedException("find-homogeneous-subset", result.budget, result.explored)
    if result.subset is None:
        exp_logger.logger.warning(f"No homogeneous {target}-subset found for {learner.describe()}; using the full domain")
        return HardDomain(hard_distribution(cfg.n), "full-fallback")
    return HardDomain(restricted_hard_distribution(result.subset, cfg.n), "homogeneous-subset", result.subset)


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    sample: str
    empirical_loss: float
    population_loss: float
    kl: float
    kl_threshold: float
    interval_size: int
    sensitive_index: int | None
    bound: float | None
    bound_violated: bool
    loss_event: bool
    kl_event: bool
    e1: bool
    e2: bool
    spacing: bool
    spacing_violation: bool

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class _TradeoffContext:
    """Per-run state shared by trials.

    With a homogeneous subset X', profiles are taken over X' and I(S), the
    spacing event and the loss threshold are measured in X' rank coordinates
    with k = |X'|.
    """

    learner: Learner
    distribution: RealizableDistribution
    prior: GibbsClassifier
    m: int
    gamma: float
    delta: float
    kl_constant: float
    reps: int
    seed: int
    subset: tuple[int, ...] | None = None
    profiles: dict[EquivalenceType, PProfile] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.distribution.n

    @property
    def k(self) -> int:
        return len(self.subset) if self.subset else self.n

    def ranked(self, sample: Sample) -> Sample:
        """The sample in rank coordinates of the subset (unchanged on the full domain)."""
        if not self.subset:
            return sample
        rank = {x: i for i, x in enumerate(self.subset, start=1)}
        return Sample(tuple(LabeledExample(rank[ex.x], ex.y) for ex in sample.examples), self.k)

    def interval(self, sample: Sample) -> tuple[PointInterval, SensitiveIndexReport | None]:
        t = order_type(sample)
        if not t.is_permutation:
            return PointInterval.empty(), None
        if t not in self.profiles:
            self.profiles[t] = type_profile(self.learner, t, self.n, self.reps, seed=self.seed, points=self.subset)
        profile = self.profiles[t]
        if not profile.is_complete:
            return PointInterval.empty(), None
        report = sensitive_index(profile, self.gamma / (2 * self.m))
        return interval_I(self.ranked(sample), self.k, report.index), report


def _tradeoff_trial(context: _TradeoffContext, trial: int) -> TrialRecord:
    rng = derive_rng(context.seed, "trial", trial)
    m, k = context.m, context.k
    sample = sample_from_distribution(context.distribution, m, rng)
    posterior = context.learner(sample)
    emp = float(empirical_loss(posterior, sample))
    pop = float(population_loss(posterior, context.distribution))
    kl = kl_divergence(posterior, context.prior)

    interval, report = context.interval(sample)
    threshold = kl_threshold(interval.size, m, context.gamma, context.kl_constant)
    loss_event = pop >= 0.5 - context.gamma - m / k
    kl_event = kl >= threshold
    bound = mcallester_bound(emp, kl, m, context.delta) if m >= 2 else None
    spacing = spacing_event(context.ranked(sample).points, k, m)
    large_interval = interval.size >= spacing_gap(k, m)
    record = TrialRecord(
        trial=trial,
        sample=str(sample),
        empirical_loss=emp,
        population_loss=pop,
        kl=kl,
        kl_threshold=threshold,
        interval_size=interval.size,
        sensitive_index=report.index if report else None,
        bound=bound.bound if bound else None,
        bound_violated=bool(bound and not bound.holds_for(pop)),
        loss_event=loss_event,
        kl_event=kl_event,
        e1=loss_event or kl_event,
        e2=loss_event or large_interval,
        spacing=spacing,
        spacing_violation=spacing and report is not None and report.found and not large_interval,
    )
    get_experiment_logger("harness").log_trial(trial, {"sample": record.sample, "kl": kl, "interval_size": interval.size})
    return record


@dataclass
class TradeoffReport:
    """Per-trial records of a tradeoff run and the event frequencies they imply."""

    config: dict[str, Any]
    domain: str
    prior_atoms: int
    records: list[TrialRecord]

    def _frequency(self, flags: list[bool]) -> float:
        return sum(flags) / len(flags) if flags else 0.0

    @property
    def e1_frequency(self) -> float:
        return self._frequency([r.e1 for r in self.records])

    @property
    def dichotomy_frequency(self) -> float:
        return self.e1_frequency

    @property
    def e2_frequency(self) -> float:
        return self._frequency([r.e2 for r in self.records])

    @property
    def joint_frequency(self) -> float:
        return self._frequency([r.e1 and r.e2 for r in self.records])

    @property
    def loss_frequency(self) -> float:
        return self._frequency([r.loss_event for r in self.records])

    @property
    def bound_violation_fraction(self) -> float:
        return self._frequency([r.bound_violated for r in self.records])

    @property
    def spacing_frequency(self) -> float:
        return self._frequency([r.spacing for r in self.records])

    @property
    def spacing_violations(self) -> int:
        return sum(r.spacing_violation for r in self.records)

    def summary(self) -> dict[str, Any]:
        return {
            "trials": len(self.records),
            "domain": self.domain,
            "prior_atoms": self.prior_atoms,
            "e1_frequency": self.e1_frequency,
            "e2_frequency": self.e2_frequency,
            "joint_frequency": self.joint_frequency,
            "loss_frequency": self.loss_frequency,
            "bound_violation_fraction": self.bound_violation_fraction,
            "spacing_frequency": self.spacing_frequency,
            "spacing_violations": self.spacing_violations,
        }

    def rows(self) -> list[dict[str, Any]]:
        return [r.to_dict() for r in self.records]


def run_tradeoff_experiment(cfg: ExperimentConfig) -> TradeoffReport:
    """Draw ``cfg.trials`` samples from the hard distribution and record loss, KL and I(S) per trial.

    The prior is resolved from ``cfg.prior``; ``optimal`` runs the prior
    estimation first. Every trial draws from derive_rng(seed, "trial", index).
    """
    exp_logger = get_experiment_logger("harness")
    learner = LearnerFactory.create(cfg.learner)
    exp_logger.log_stage("tradeoff", {"learner": learner.describe(), "n": cfg.n, "m": cfg.m, "trials": cfg.trials})

    domain = select_hard_distribution(learner, cfg)
    prior = PriorFactory.create(
        cfg.prior, cfg.n, learner, domain.distribution, cfg.m, cfg.prior_trials, cfg.seed, cfg.workers
    )
    context = _TradeoffContext(
        learner,
        domain.distribution,
        prior,
        cfg.m,
        cfg.gamma,
        cfg.delta,
        cfg.kl_constant,
        cfg.reps,
        cfg.seed,
        subset=domain.subset,
    )
    records = run_trials(partial(_tradeoff_trial, context), cfg.trials, cfg.workers)
    report = TradeoffReport(cfg.to_dict(), domain.method, len(prior.atoms), records)

    for name, value in report.summary().items():
        if isinstance(value, float):
            exp_logger.log_metric(name, value)
    exp_logger.log_verdict("spacing-implies-interval", report.spacing_violations == 0, {"violations": report.spacing_violations})
    return report


@dataclass(frozen=True)
class KLGrowthRow:
    n: int
    median_kl: float
    q25: float
    q75: float
    prior_atoms: int
    prior_entropy: float

    @property
    def iqr(self) -> float:
        return self.q75 - self.q25

    def to_dict(self) -> dict[str, Any]:
        return {**asdict(self), "iqr": self.iqr}


@dataclass
class KLGrowthTable:
    learner: str
    prior: str
    m: int
    rows: list[KLGrowthRow]

    def medians(self) -> list[float]:
        return [row.median_kl for row in self.rows]

    def strictly_increasing(self) -> bool:
        medians = self.medians()
        return all(a < b for a, b in zip(medians, medians[1:]))


@dataclass(frozen=True)
class _KLContext:
    learner: Learner
    distribution: RealizableDistribution
    prior: GibbsClassifier
    m: int
    seed: int


def _kl_trial(context: _KLContext, trial: int) -> float:
    rng = derive_rng(context.seed, "kl-growth", context.distribution.n, trial)
    sample = sample_from_distribution(context.distribution, context.m, rng)
    return kl_divergence(context.learner(sample), context.prior)


def kl_growth_experiment(
    learner_spec: str,
    m: int,
    n_grid: list[int],
    trials: int,
    seed: int = 0,
    prior: str = "optimal",
    prior_trials: int = 10_000,
    workers: int = 1,
) -> KLGrowthTable:
    """Median and quartiles of KL(Q_S || P_n) over trials for each n of the grid.

    With ``prior="optimal"`` P_n is the estimated optimal prior of the learner
    under hard_distribution(n); any other prior spec is resolved per n.
    """
    if any(a >= b for a, b in zip(n_grid, n_grid[1:])):
        raise DomainException(f"n_grid must be strictly increasing, got {n_grid}", argument="n_grid", value=n_grid)
    learner = LearnerFactory.create(learner_spec)
    exp_logger = get_experiment_logger("harness")
    exp_logger.log_stage("kl-growth", {"learner": learner.describe(), "m": m, "n_grid": list(n_grid), "prior": prior})

    rows = []
    for n in n_grid:
        distribution = hard_distribution(n)
        p = PriorFactory.create(prior, n, learner, distribution, m, prior_trials, seed, workers)
        kls = np.array(run_trials(partial(_kl_trial, _KLContext(learner, distribution, p, m, seed)), trials, workers))
        q25, median, q75 = (float(v) for v in np.percentile(kls, [25, 50, 75]))
        rows.append(KLGrowthRow(n, median, q25, q75, len(p.atoms), prior_entropy(p)))
        exp_logger.log_metric("median_kl", median, {"n": n})
    return KLGrowthTable(learner.describe(), prior, m, rows)
