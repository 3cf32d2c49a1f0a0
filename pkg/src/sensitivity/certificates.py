"""Mixture families for the sensitivity lower bound, event masses and KL certificates."""

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Any

import numpy as np
from scipy.stats import binom, multinomial

from src.core.models import GibbsClassifier, Probability, ThresholdHypothesis
from src.pacbayes.divergence import kl_bernoulli, kl_divergence
from src.pacbayes.intervals import wilson_interval
from src.sensitivity.search import (
    check_odd_point,
    positive_matrix,
    rounding_midpoint,
    search_depth,
    search_outputs,
    simulate_search,
)
from src.utils.exceptions import DomainException
from src.utils.logging import get_experiment_logger
from src.utils.parallel import run_parallel
from src.utils.randomization import derive_rng

ENUMERATION_CAP = 10**6
DEFAULT_TRIALS = 1000

Family = Mapping[int, GibbsClassifier]


def lemma3_family(b: int, q1: Probability, q2: Probability) -> dict[int, GibbsClassifier]:
    """Q_x = q1*h_0 + (q2-q1)*h_x + (1-q2)*h_{2^b} for every x in {1..2^b}.

    Pr_{h~Q_x}[h(z)=+1] is q1 for z <= x and q2 for z > x.
    """
    rounding_midpoint(q1, q2)
    if b < 1:
        raise DomainException(f"b must be at least 1, got {b}", argument="b", value=b)
    n = 2**b
    q1, q2 = Fraction(q1), Fraction(q2)
    return {
        xhat: GibbsClassifier.from_atoms(
            n,
            [(ThresholdHypothesis(0, n), q1), (ThresholdHypothesis(xhat, n), q2 - q1), (ThresholdHypothesis(n, n), 1 - q2)],
        )
        for xhat in range(1, n + 1)
    }


def family_average(family: Family) -> GibbsClassifier:
    """Uniform average of the family's members."""
    if not family:
        raise DomainException("Cannot average an empty family", argument="family")
    share = Fraction(1, len(family))
    return GibbsClassifier.mixture([(q, share) for q in family.values()])


def premise_violations(family: Family, q1: Probability, q2: Probability) -> list[tuple[int, int, Probability]]:
    """(x-hat, x, rate) where Q_x-hat breaks rate <= q1 + (q2-q1)/4 below x-hat or rate >= q2 - (q2-q1)/4 above it."""
    rounding_midpoint(q1, q2)
    quarter = (Fraction(q2) - Fraction(q1)) / 4
    low_cap, high_floor = Fraction(q1) + quarter, Fraction(q2) - quarter
    violations = []
    for xhat, q in sorted(family.items()):
        for x, rate in enumerate(q.positive_rates(range(1, q.n + 1)), start=1):
            if (x < xhat and Fraction(rate) > low_cap) or (x > xhat and Fraction(rate) < high_floor):
                violations.append((xhat, x, rate))
    return violations


def default_repetitions(b: int, q1: float, q2: float) -> int:
    """ceil(2(ln b + 2)/(q2-q1)^2)."""
    if b < 1:
        raise DomainException(f"b must be at least 1, got {b}", argument="b", value=b)
    rounding_midpoint(q1, q2)
    return math.ceil(2 * (math.log(b) + 2) / (float(q2) - float(q1)) ** 2)


@dataclass(frozen=True)
class EventMass:
    """Mass of E_x under the r-fold product; lower == upper == value on exact paths."""

    value: float
    lower: float
    upper: float
    method: str
    trials: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {"value": self.value, "lower": self.lower, "upper": self.upper, "method": self.method, "trials": self.trials}


def _closed_form_mass(c: GibbsClassifier, xhat: int, r: int, mid: Fraction) -> float:
    # threshold mixtures give a monotone empirical table, so only the two
    # even neighbours of x-hat decide the output
    n = c.n
    cutoff = math.floor(mid * r)
    below_lo = float(c.prob_positive(xhat - 1)) if xhat > 1 else 0.0
    below_hi = float(c.prob_positive(xhat + 1)) if xhat + 1 < n else 1.0
    first, last = xhat == 1, xhat + 1 == n
    if first and last:
        return 1.0
    if first:
        return float(binom.sf(cutoff, r, below_hi))
    if last:
        return float(binom.cdf(cutoff, r, below_lo))
    if below_lo >= 1.0:
        return 0.0
    between = min(1.0, max(0.0, (below_hi - below_lo) / (1.0 - below_lo)))
    i = np.arange(cutoff + 1)
    terms = binom.pmf(i, r, below_lo) * binom.sf(cutoff - i, r - i, between)
    return min(1.0, math.fsum(terms.tolist()))


def _count_vectors(atoms: int, r: int) -> np.ndarray:
    vectors = np.zeros((math.comb(r + atoms - 1, atoms - 1), atoms), dtype=np.int64)
    for row, chosen in enumerate(combinations_with_replacement(range(atoms), r)):
        vectors[row] = np.bincount(chosen, minlength=atoms)
    return vectors


def _enumerated_mass(c: GibbsClassifier, xhat: int, r: int, mid: Fraction) -> float:
    counts = _count_vectors(len(c.atoms), r)
    outputs = search_outputs(counts @ positive_matrix(c), r, mid)
    hits = counts[outputs == xhat]
    if len(hits) == 0:
        return 0.0
    return min(1.0, math.fsum(multinomial.pmf(hits, n=r, p=c.float_weights()).tolist()))


def event_mass(
    c: GibbsClassifier,
    xhat: int,
    q1: Probability,
    q2: Probability,
    r: int,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    confidence: float = 0.95,
    stream: str = "mass",
    enumeration_cap: int = ENUMERATION_CAP,
) -> EventMass:
    """c^r(E_xhat): closed form for threshold mixtures, exact over count vectors when
    there are at most ``enumeration_cap`` of them, Monte Carlo with a Wilson interval otherwise."""
    search_depth(c.n)
    check_odd_point(xhat, c.n)
    if r < 1:
        raise DomainException(f"r must be at least 1, got {r}", argument="r", value=r)
    mid = rounding_midpoint(q1, q2)

    if c.thresholds_only:
        value = _closed_form_mass(c, xhat, r, mid)
        return EventMass(value, value, value, "closed-form")
    if math.comb(r + len(c.atoms) - 1, len(c.atoms) - 1) <= enumeration_cap:
        value = _enumerated_mass(c, xhat, r, mid)
        return EventMass(value, value, value, "exact")

    outputs = simulate_search(c, r, trials, derive_rng(seed, stream, xhat), mid)
    hits = int(np.count_nonzero(outputs == xhat))
    lower, upper = wilson_interval(hits, trials, confidence)
    return EventMass(hits / trials, lower, upper, "monte-carlo", trials)


@dataclass(frozen=True)
class CertificateRow:
    xhat: int
    q_mass: EventMass
    p_mass: EventMass
    certificate: float
    direct_kl: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "xhat": self.xhat,
            "Q_mass": self.q_mass.value,
            "P_mass": self.p_mass.value,
            "Q_lower": self.q_mass.lower,
            "P_upper": self.p_mass.upper,
            "method": f"{self.q_mass.method}/{self.p_mass.method}",
            "certificate": self.certificate,
            "direct_kl": self.direct_kl,
        }


@dataclass
class CertificateReport:
    b: int
    q1: float
    q2: float
    r: int
    rows: list[CertificateRow]
    valid: bool
    violations: list[tuple[int, int, Probability]] = field(default_factory=list)

    def fraction_at_least(self, level: float) -> float:
        return sum(1 for row in self.rows if row.certificate >= level) / len(self.rows) if self.rows else 0.0

    def total_prior_mass(self) -> float:
        return math.fsum(row.p_mass.value for row in self.rows)

    def to_dict(self) -> dict[str, Any]:
        return {
            "b": self.b,
            "q1": self.q1,
            "q2": self.q2,
            "r": self.r,
            "valid": self.valid,
            "violations": len(self.violations),
            "rows": [row.to_dict() for row in self.rows],
        }


def certify(q_mass: EventMass, p_mass: EventMass, r: int) -> float:
    """kl_bernoulli(Q-mass lower, P-mass upper)/r, or 0 when the interval ends cross."""
    if q_mass.lower <= p_mass.upper:
        return 0.0
    return kl_bernoulli(q_mass.lower, p_mass.upper) / r


def _certificate_row(
    item: tuple[int, GibbsClassifier, GibbsClassifier, Probability, Probability, int, int, int, float],
) -> CertificateRow:
    xhat, q, prior, q1, q2, r, trials, seed, confidence = item
    q_mass = event_mass(q, xhat, q1, q2, r, trials, seed, confidence, stream="posterior")
    p_mass = event_mass(prior, xhat, q1, q2, r, trials, seed, confidence, stream="prior")
    return CertificateRow(xhat, q_mass, p_mass, certify(q_mass, p_mass, r), kl_divergence(q, prior))


def kl_certificate(
    family: Family,
    prior: GibbsClassifier,
    q1: Probability,
    q2: Probability,
    r: int | None = None,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    confidence: float = 0.95,
    workers: int = 1,
) -> CertificateReport:
    """Certified lower bounds on KL(Q_x || P) for every odd x of the index set.

    Each bound is the binary KL between the masses Q_x^r and P^r put on the
    search event E_x, divided by r, next to the directly computed KL. A family
    breaking the rate premise is reported invalid.

    Args:
        family: Mapping x -> Q_x over {1..2^b}
        prior: The prior P on the same domain
        q1, q2: Rounding levels with q1 < q2
        r: Repetitions; defaults to default_repetitions(b, q1, q2)
        trials: Monte-Carlo trials when neither exact path applies
        seed: Base seed of the Monte-Carlo streams
        confidence: Wilson interval confidence
        workers: Process count; rows are independent

    Returns:
        CertificateReport with one row per odd x
    """
    if not family:
        raise DomainException("Empty family", argument="family")
    n = prior.n
    b = search_depth(n)
    if any(q.n != n for q in family.values()):
        raise DomainException("Family and prior must share one domain", argument="family")
    reps = r if r is not None else default_repetitions(b, float(q1), float(q2))
    exp_logger = get_experiment_logger("sensitivity")
    exp_logger.log_stage("kl-certificate", {"b": b, "q1": float(q1), "q2": float(q2), "r": reps, "members": len(family)})

    violations = premise_violations(family, q1, q2)
    items = [
        (xhat, family[xhat], prior, q1, q2, reps, trials, seed, confidence)
        for xhat in range(1, n, 2)
        if xhat in family
    ]
    rows = run_parallel(_certificate_row, items, workers=workers)
    report = CertificateReport(b, float(q1), float(q2), reps, rows, valid=not violations, violations=violations)
    exp_logger.log_verdict("family-premise", report.valid, {"violations": len(violations)})
    return report
