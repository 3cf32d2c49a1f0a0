"""Rounded hypotheses and the binary search for a sign change over even coordinates."""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from src.core.models import NEGATIVE, POSITIVE, GibbsClassifier, Hypothesis, Probability, TableHypothesis
from src.pacbayes.intervals import wilson_interval
from src.utils.exceptions import DomainException
from src.utils.logging import get_experiment_logger
from src.utils.randomization import derive_rng


def rounding_midpoint(q1: Probability, q2: Probability) -> Fraction:
    """(q1+q2)/2 as an exact fraction; requires 0 <= q1 < q2 <= 1."""
    if not 0 <= q1 < q2 <= 1:
        raise DomainException(f"Need 0 <= q1 < q2 <= 1, got q1={q1}, q2={q2}", argument="q1", value=(q1, q2))
    return (Fraction(q1) + Fraction(q2)) / 2


def search_depth(size: int) -> int:
    """b for a domain of size 2^b."""
    if size < 2 or size & (size - 1):
        raise DomainException(f"Domain size must be a power of two >= 2, got {size}", argument="size", value=size)
    return size.bit_length() - 1


def rounded_hypothesis(q: GibbsClassifier, q1: Probability, q2: Probability) -> TableHypothesis:
    """+1 exactly where Pr_{h~Q}[h(x)=+1] > (q1+q2)/2."""
    mid = rounding_midpoint(q1, q2)
    rates = q.positive_rates(range(1, q.n + 1))
    return TableHypothesis(tuple(POSITIVE if Fraction(rate) > mid else NEGATIVE for rate in rates))


def empirical_rounded_hypothesis(hs: Sequence[Hypothesis], q1: Probability, q2: Probability) -> TableHypothesis:
    """+1 exactly where more than a (q1+q2)/2 fraction of ``hs`` predicts +1."""
    if not hs:
        raise DomainException("Need at least one hypothesis", argument="hs")
    n = hs[0].n
    if any(h.n != n for h in hs):
        raise DomainException("All hypotheses must share one domain", argument="hs")
    mid = rounding_midpoint(q1, q2)
    counts = np.sum([np.asarray(h.as_bits()) == POSITIVE for h in hs], axis=0)
    r = len(hs)
    return TableHypothesis(
        tuple(POSITIVE if c * mid.denominator > mid.numerator * r else NEGATIVE for c in counts.tolist())
    )


@dataclass(frozen=True)
class SearchInterval:
    """Output pair {lo, lo+1} with lo odd, plus the coordinates queried on the way."""

    lo: int
    hi: int
    queries: tuple[int, ...] = ()

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.lo < 1 or self.lo % 2 != 1 or self.hi != self.lo + 1:
            raise DomainException(f"Search output must be {{odd, odd+1}}, got {{{self.lo}, {self.hi}}}", argument="lo")

    def is_valid(self) -> bool:
        try:
            self.validate()
            return True
        except DomainException:
            return False

    @property
    def odd_point(self) -> int:
        return self.lo

    def __contains__(self, x: int) -> bool:
        return self.lo <= x <= self.hi

    def __str__(self) -> str:
        return f"{{{self.lo},{self.hi}}}"


def binary_search_signchange(bits: Sequence[int] | Hypothesis) -> SearchInterval:
    """Bisect over the even coordinates 2, 4, .., 2^b for the leftmost +1.

    Coordinate 2^b is a sentinel read as +1 and never queried, so exactly
    b-1 coordinates are evaluated. Returns {e-1, e} for the even coordinate e found.
    """
    table = tuple(bits.as_bits()) if hasattr(bits, "as_bits") else tuple(bits)
    search_depth(len(table))
    lo, hi = 1, len(table) // 2
    queries = []
    while lo < hi:
        mid = (lo + hi) // 2
        queries.append(2 * mid)
        if table[2 * mid - 1] == POSITIVE:
            hi = mid
        else:
            lo = mid + 1
    return SearchInterval(2 * lo - 1, 2 * lo, tuple(queries))


def check_odd_point(xhat: int, size: int) -> None:
    if xhat < 1 or xhat > size or xhat % 2 == 0:
        raise DomainException(f"x-hat must be an odd point of 1..{size}, got {xhat}", argument="xhat", value=xhat)


def event_membership(xhat: int, hs: Sequence[Hypothesis], q1: Probability, q2: Probability) -> bool:
    """Whether xhat lies in the search output on the empirical rounded hypothesis of ``hs``."""
    table = empirical_rounded_hypothesis(hs, q1, q2)
    check_odd_point(xhat, table.n)
    return xhat in binary_search_signchange(table)


@dataclass(frozen=True)
class EventFamily:
    """The events E_x for odd x on {1..2^b}; each hypothesis list lands in exactly one of them."""

    b: int
    q1: Probability
    q2: Probability

    def __post_init__(self):
        rounding_midpoint(self.q1, self.q2)
        if self.b < 1:
            raise DomainException(f"b must be at least 1, got {self.b}", argument="b", value=self.b)

    @property
    def size(self) -> int:
        return 2**self.b

    def odd_points(self) -> range:
        return range(1, self.size, 2)

    def member(self, hs: Sequence[Hypothesis]) -> int:
        """The odd x whose event contains ``hs``."""
        return binary_search_signchange(empirical_rounded_hypothesis(hs, self.q1, self.q2)).odd_point

    def contains(self, xhat: int, hs: Sequence[Hypothesis]) -> bool:
        check_odd_point(xhat, self.size)
        return self.member(hs) == xhat


def positive_matrix(c: GibbsClassifier) -> np.ndarray:
    """(atoms x n) integer matrix, 1 where the atom predicts +1."""
    return np.array([[1 if b == POSITIVE else 0 for b in h.as_bits()] for h in c.hypotheses], dtype=np.int64)


def atom_counts(draws: np.ndarray, atoms: int) -> np.ndarray:
    """Per-row histogram of drawn atom indices."""
    counts = np.zeros((draws.shape[0], atoms), dtype=np.int64)
    rows = np.repeat(np.arange(draws.shape[0]), draws.shape[1])
    np.add.at(counts, (rows, draws.ravel()), 1)
    return counts


def search_outputs(positive_counts: np.ndarray, r: int, mid: Fraction) -> np.ndarray:
    """Odd output point of the search for every row of positive counts (rows x 2^b)."""
    b = search_depth(positive_counts.shape[1])
    rows = np.arange(positive_counts.shape[0])
    lo = np.ones(len(rows), dtype=np.int64)
    hi = np.full(len(rows), 2 ** (b - 1), dtype=np.int64)
    for _ in range(b - 1):
        mid_j = (lo + hi) // 2
        count = positive_counts[rows, 2 * mid_j - 1]
        plus = count * mid.denominator > mid.numerator * r
        hi = np.where(plus, mid_j, hi)
        lo = np.where(plus, lo, mid_j + 1)
    return 2 * lo - 1


def simulate_search(
    c: GibbsClassifier, r: int, trials: int, rng: np.random.Generator, mid: Fraction, positive: np.ndarray | None = None
) -> np.ndarray:
    """Search outputs for ``trials`` lists of r i.i.d. draws from ``c``."""
    positive = positive_matrix(c) if positive is None else positive
    counts = atom_counts(c.draw(rng, (trials, r)), len(c.atoms))
    return search_outputs(counts @ positive, r, mid)


def hoeffding_failure_reference(b: int, q1: float, q2: float, r: int) -> float:
    """b * exp(-2r((q2-q1)/4)^2)."""
    return b * math.exp(-2 * r * ((q2 - q1) / 4) ** 2)


@dataclass(frozen=True)
class FailurePoint:
    r: int
    failures: int
    trials: int
    lower: float
    upper: float
    reference: float

    @property
    def rate(self) -> float:
        return self.failures / self.trials

    def to_dict(self) -> dict[str, Any]:
        return {
            "r": self.r,
            "failures": self.failures,
            "trials": self.trials,
            "rate": self.rate,
            "lower": self.lower,
            "upper": self.upper,
            "reference": self.reference,
        }


@dataclass(frozen=True)
class FailureCurve:
    xhat: int
    points: tuple[FailurePoint, ...]

    def log_slope(self) -> float:
        """Least-squares slope of ln(failure rate) against r, with a half-count continuity correction."""
        if len(self.points) < 2:
            raise DomainException("Need at least two repetition counts for a slope", argument="r_values")
        rs = np.array([p.r for p in self.points], dtype=float)
        logs = np.log([(p.failures + 0.5) / (p.trials + 1) for p in self.points])
        return float(np.polyfit(rs, logs, 1)[0])


def search_failure_curve(
    q: GibbsClassifier,
    xhat: int,
    q1: Probability,
    q2: Probability,
    r_values: Sequence[int],
    trials: int,
    seed: int = 0,
    confidence: float = 0.95,
) -> FailureCurve:
    """Monte-Carlo rate of xhat falling outside the search output, per repetition count r."""
    b = search_depth(q.n)
    check_odd_point(xhat, q.n)
    mid = rounding_midpoint(q1, q2)
    positive = positive_matrix(q)
    exp_logger = get_experiment_logger("sensitivity")
    exp_logger.log_stage("failure-curve", {"xhat": xhat, "r_values": list(r_values), "trials": trials})

    points = []
    for r in r_values:
        if r < 1:
            raise DomainException(f"Repetition counts must be positive, got {r}", argument="r", value=r)
        outputs = simulate_search(q, r, trials, derive_rng(seed, "failure", xhat, r), mid, positive)
        failures = int(np.count_nonzero(outputs != xhat))
        lower, upper = wilson_interval(failures, trials, confidence)
        points.append(
            FailurePoint(r, failures, trials, lower, upper, hoeffding_failure_reference(b, float(q1), float(q2), r))
        )
        exp_logger.log_metric("failure_rate", failures / trials, {"r": r})
    return FailureCurve(xhat, tuple(points))
