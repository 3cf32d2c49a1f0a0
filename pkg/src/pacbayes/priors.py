"""Fixed priors over thresholds and the Monte-Carlo estimate of the optimal prior E_S[Q_S]."""

import math
from itertools import product

from src.core.models import (
    GibbsClassifier,
    Hypothesis,
    LabeledExample,
    Probability,
    RealizableDistribution,
    Sample,
    ThresholdHypothesis,
    exact_sum,
)
from src.core.sampling import sample_from_distribution
from src.learners.base import Learner
from src.learners.erm import cover_thresholds
from src.utils.exceptions import ConfigurationException, DomainException
from src.utils.logging import get_experiment_logger
from src.utils.parallel import run_parallel
from src.utils.randomization import chunk_bounds, derive_rng

EXACT_ENUMERATION_CAP = 10**6
PRIOR_CHUNK_SIZE = 4096
_COLLAPSE_AT = 4096


def uniform_threshold_prior(n: int) -> GibbsClassifier:
    """Uniform over all n+1 thresholds h_0..h_n."""
    return GibbsClassifier.uniform([ThresholdHypothesis(k, n) for k in range(n + 1)], n)


def cover_prior(n: int, eps: float) -> GibbsClassifier:
    """Uniform over the threshold cover of resolution eps."""
    return GibbsClassifier.uniform([ThresholdHypothesis(c, n) for c in cover_thresholds(n, eps)], n)


def point_prior(n: int, k: int) -> GibbsClassifier:
    return GibbsClassifier.point_mass(ThresholdHypothesis(k, n))


class _MixtureAccumulator:
    """Accumulates weighted posteriors atom by atom with order-stable exact summation."""

    def __init__(self):
        self.atoms: dict[tuple, tuple[Hypothesis, list[Probability]]] = {}

    def add(self, q: GibbsClassifier, weight: Probability) -> None:
        for h, w in q.atoms:
            entry = self.atoms.get(h.key)
            if entry is None:
                self.atoms[h.key] = (h, [weight * w])
                continue
            entry[1].append(weight * w)
            if len(entry[1]) >= _COLLAPSE_AT:
                entry[1][:] = [exact_sum(entry[1])]

    def merge(self, other: "_MixtureAccumulator") -> None:
        for key, (h, weights) in other.atoms.items():
            if key in self.atoms:
                self.atoms[key][1].append(exact_sum(weights))
            else:
                self.atoms[key] = (h, [exact_sum(weights)])

    def totals(self) -> list[tuple[Hypothesis, Probability]]:
        return [(h, exact_sum(weights)) for h, weights in self.atoms.values()]

    def to_gibbs(self, n: int) -> GibbsClassifier:
        totals = self.totals()
        mass = exact_sum(w for _, w in totals)
        return GibbsClassifier.from_atoms(n, [(h, w / mass) for h, w in totals])


def _prior_chunk(item: tuple[Learner, RealizableDistribution, int, int, int, int]) -> _MixtureAccumulator:
    learner, distribution, m, seed, chunk_index, size = item
    rng = derive_rng(seed, "prior", chunk_index)
    acc = _MixtureAccumulator()
    for _ in range(size):
        acc.add(learner(sample_from_distribution(distribution, m, rng)), 1)
    return acc


def enumeration_size(distribution: RealizableDistribution, m: int) -> int:
    return len(distribution.support) ** m


def exact_optimal_prior(learner: Learner, distribution: RealizableDistribution, m: int) -> GibbsClassifier:
    """E_{S~D^m}[Q_S] by enumerating every sample over the support of the marginal."""
    support = distribution.support
    acc = _MixtureAccumulator()
    for points in product(support, repeat=m):
        weight: Probability = 1
        for x in points:
            weight = weight * distribution.marginal[x - 1]
        sample = Sample(tuple(LabeledExample(x, distribution.label(x)) for x in points), distribution.n)
        acc.add(learner(sample), weight)
    return acc.to_gibbs(distribution.n)


def estimate_optimal_prior(
    learner: Learner,
    distribution: RealizableDistribution,
    m: int,
    trials: int,
    seed: int,
    workers: int = 1,
    exact_cap: int = EXACT_ENUMERATION_CAP,
) -> GibbsClassifier:
    """Estimate the prior minimizing E_S[KL(Q_S||P)], namely the mixture E_S[Q_S].

    Args:
        learner: The learner whose posteriors are averaged
        distribution: Data distribution
        m: Sample size
        trials: Number of Monte-Carlo samples (ignored on the exact path)
        seed: Base seed; chunk c draws from derive_rng(seed, "prior", c)
        workers: Process count for the Monte-Carlo path
        exact_cap: Enumerate exactly when |support|^m is at most this

    Returns:
        The averaged posterior, atoms merged
    """
    if trials < 1:
        raise DomainException(f"trials must be positive, got {trials}", argument="trials", value=trials)
    exp_logger = get_experiment_logger("pacbayes")

    if enumeration_size(distribution, m) <= exact_cap:
        exp_logger.log_stage("optimal-prior", {"path": "exact", "n": distribution.n, "m": m})
        return exact_optimal_prior(learner, distribution, m)

    exp_logger.log_stage("optimal-prior", {"path": "monte-carlo", "n": distribution.n, "m": m, "trials": trials})
    items = [
        (learner, distribution, m, seed, index, stop - start)
        for index, start, stop in chunk_bounds(trials, PRIOR_CHUNK_SIZE)
    ]
    total = _MixtureAccumulator()
    for partial in run_parallel(_prior_chunk, items, workers=workers):
        total.merge(partial)
    prior = total.to_gibbs(distribution.n)
    exp_logger.log_metric("prior_atoms", len(prior.atoms))
    return prior


class PriorFactory:
    """Resolves prior specs: ``uniform``, ``cover:<eps>``, ``point:<k>`` and ``optimal``."""

    KINDS = ("uniform", "cover", "point", "optimal")

    @classmethod
    def create(
        cls,
        spec: str,
        n: int,
        learner: Learner | None = None,
        distribution: RealizableDistribution | None = None,
        m: int | None = None,
        trials: int = 10_000,
        seed: int = 0,
        workers: int = 1,
    ) -> GibbsClassifier:
        kind, _, argument = spec.strip().partition(":")
        try:
            if kind == "uniform":
                return uniform_threshold_prior(n)
            if kind == "cover":
                return cover_prior(n, float(argument or 0.125))
            if kind == "point":
                return point_prior(n, int(argument))
            if kind == "optimal":
                if learner is None or distribution is None or m is None:
                    raise ConfigurationException("prior", "the optimal prior needs a learner, a distribution and m")
                return estimate_optimal_prior(learner, distribution, m, trials, seed, workers=workers)
        except ValueError as e:
            raise ConfigurationException("prior", f"invalid prior spec '{spec}': {e}") from e
        raise ConfigurationException("prior", f"unknown prior kind '{kind}', expected one of {', '.join(cls.KINDS)}")


def prior_entropy(prior: GibbsClassifier) -> float:
    """Shannon entropy in nats."""
    return -math.fsum(float(w) * math.log(float(w)) for w in prior.weights if w > 0)
