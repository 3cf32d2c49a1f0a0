"""Value types shared by every part of the lab: domains, hypotheses, samples and Gibbs mixtures."""

import math
from bisect import bisect_left
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from src.utils.exceptions import DomainException

Probability = Fraction | float

NORMALIZATION_TOLERANCE = 1e-12
NEGATIVE = -1
POSITIVE = 1


def exact_sum(values: Iterable[Probability]) -> Probability:
    """Sum probabilities exactly when they are rational, else with correctly rounded ``math.fsum``."""
    items = list(values)
    if all(isinstance(v, (Fraction, int)) for v in items):
        return sum(items, Fraction(0))
    return math.fsum(float(v) for v in items)


def _check_label(y: int) -> None:
    if y not in (NEGATIVE, POSITIVE):
        raise DomainException(f"Labels must be -1 or +1, got {y!r}", argument="y", value=y)


@dataclass(frozen=True)
class Domain:
    """The ordered domain {1,...,n}."""

    n: int

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise DomainException(f"Domain size must be a positive integer, got {self.n!r}", argument="n", value=self.n)

    def is_valid(self) -> bool:
        try:
            self.validate()
            return True
        except DomainException:
            return False

    def contains(self, x: int) -> bool:
        return isinstance(x, (int, np.integer)) and 1 <= x <= self.n

    def check_point(self, x: int) -> None:
        """Raise unless ``x`` lies in the domain."""
        if not self.contains(x):
            raise DomainException(f"Point {x!r} lies outside the domain {{1..{self.n}}}", argument="x", value=x)

    def points(self) -> range:
        return range(1, self.n + 1)


@dataclass(frozen=True)
class ThresholdHypothesis:
    """h_k(x) = -1 if x <= k else +1, on the domain {1..n}."""

    k: int
    n: int

    def __post_init__(self):
        self.validate()
        object.__setattr__(self, "k", int(self.k))

    def validate(self) -> None:
        Domain(self.n)
        if not isinstance(self.k, (int, np.integer)) or not 0 <= self.k <= self.n:
            raise DomainException(f"Threshold must lie in 0..{self.n}, got {self.k!r}", argument="k", value=self.k)

    def is_valid(self) -> bool:
        try:
            self.validate()
            return True
        except DomainException:
            return False

    def predict(self, x: int) -> int:
        Domain(self.n).check_point(x)
        return NEGATIVE if x <= self.k else POSITIVE

    def as_bits(self) -> tuple[int, ...]:
        return (NEGATIVE,) * self.k + (POSITIVE,) * (self.n - self.k)

    @property
    def key(self) -> tuple:
        return (0, self.k)

    def __str__(self) -> str:
        return f"h_{self.k}"


@dataclass(frozen=True)
class TableHypothesis:
    """A hypothesis given by its full truth table over {1..n}."""

    bits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        self.validate()

    def validate(self) -> None:
        if len(self.bits) < 1:
            raise DomainException("A truth table needs at least one entry", argument="bits", value=self.bits)
        for b in self.bits:
            _check_label(b)

    def is_valid(self) -> bool:
        try:
            self.validate()
            return True
        except DomainException:
            return False

    @property
    def n(self) -> int:
        return len(self.bits)

    def predict(self, x: int) -> int:
        Domain(self.n).check_point(x)
        return self.bits[x - 1]

    def as_bits(self) -> tuple[int, ...]:
        return self.bits

    @property
    def key(self) -> tuple:
        return (1, self.bits)

    def __str__(self) -> str:
        return "".join("+" if b == POSITIVE else "-" for b in self.bits)


Hypothesis = ThresholdHypothesis | TableHypothesis


def threshold_index(bits: Sequence[int]) -> int | None:
    """Return k when ``bits`` is the truth table of h_k, else None."""
    k = 0
    while k < len(bits) and bits[k] == NEGATIVE:
        k += 1
    if all(b == POSITIVE for b in bits[k:]):
        return k
    return None


def canonical_hypothesis(h: Hypothesis) -> Hypothesis:
    """Normalize a threshold-shaped table to its ThresholdHypothesis."""
    if isinstance(h, TableHypothesis):
        k = threshold_index(h.bits)
        if k is not None:
            return ThresholdHypothesis(k, h.n)
    return h


def same_predictor(h1: Hypothesis, h2: Hypothesis) -> bool:
    """Semantic equality on the full domain."""
    return h1.n == h2.n and canonical_hypothesis(h1).key == canonical_hypothesis(h2).key


@dataclass(frozen=True)
class LabeledExample:
    x: int
    y: int

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if not isinstance(self.x, (int, np.integer)) or self.x < 1:
            raise DomainException(f"Example point must be a positive integer, got {self.x!r}", argument="x", value=self.x)
        _check_label(self.y)

    def is_valid(self) -> bool:
        try:
            self.validate()
            return True
        except DomainException:
            return False


@dataclass(frozen=True)
class Sample:
    """An ordered list of labeled examples over {1..n}; list order is part of identity."""

    examples: tuple[LabeledExample, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "examples", tuple(self.examples))
        self.validate()

    def validate(self) -> None:
        domain = Domain(self.n)
        if not self.examples:
            raise DomainException("A sample must contain at least one example", argument="examples")
        for ex in self.examples:
            domain.check_point(ex.x)

    def is_valid(self) -> bool:
        try:
            self.validate()
            return True
        except DomainException:
            return False

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], n: int) -> "Sample":
        return cls(tuple(LabeledExample(int(x), int(y)) for x, y in pairs), n)

    @property
    def m(self) -> int:
        return len(self.examples)

    @property
    def points(self) -> tuple[int, ...]:
        return tuple(ex.x for ex in self.examples)

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(ex.y for ex in self.examples)

    @cached_property
    def underlying_set(self) -> frozenset[int]:
        return frozenset(self.points)

    @cached_property
    def sorted_points(self) -> tuple[int, ...]:
        return tuple(sorted(self.underlying_set))

    def __str__(self) -> str:
        return ";".join(f"({ex.x},{'+' if ex.y == POSITIVE else '-'})" for ex in self.examples)


@dataclass(frozen=True)
class EquivalenceType:
    """Order-type vector pi plus label vector ybar."""

    pi: tuple[int, ...]
    ybar: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "pi", tuple(int(p) for p in self.pi))
        object.__setattr__(self, "ybar", tuple(int(y) for y in self.ybar))
        self.validate()

    def validate(self) -> None:
        m = len(self.pi)
        if m < 1 or len(self.ybar) != m:
            raise DomainException(
                f"Order-type and label vector must be nonempty and of equal length, got {self.pi} and {self.ybar}",
                argument="pi",
            )
        if any(not 1 <= p <= m for p in self.pi):
            raise DomainException(f"Order-type entries must lie in 1..{m}, got {self.pi}", argument="pi", value=self.pi)
        # pos values of a sample are exactly 1..d for its d distinct points
        if set(self.pi) != set(range(1, max(self.pi) + 1)):
            raise DomainException(f"{self.pi} is not the order-type of any sample", argument="pi", value=self.pi)
        for y in self.ybar:
            _check_label(y)

    def is_valid(self) -> bool:
        try:
            self.validate()
            return True
        except DomainException:
            return False

    @property
    def m(self) -> int:
        return len(self.pi)

    @property
    def is_permutation(self) -> bool:
        return sorted(self.pi) == list(range(1, self.m + 1))

    def __str__(self) -> str:
        labels = ",".join("+" if y == POSITIVE else "-" for y in self.ybar)
        return f"({','.join(map(str, self.pi))}|{labels})"


@dataclass(frozen=True)
class GibbsClassifier:
    """A finite mixture over hypotheses on {1..n}, canonicalized and merged.

    Build instances with ``from_atoms``; the constructor expects atoms that are
    already canonical, merged and sorted.
    """

    n: int
    atoms: tuple[tuple[Hypothesis, Probability], ...]

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        Domain(self.n)
        if not self.atoms:
            raise DomainException("A Gibbs classifier needs at least one atom", argument="atoms")
        keys = set()
        for h, w in self.atoms:
            if h.n != self.n:
                raise DomainException(
                    f"Hypothesis {h} lives on a domain of size {h.n}, expected {self.n}", argument="atoms", value=h.n
                )
            if w < 0:
                raise DomainException(f"Atom weights must be nonnegative, got {w}", argument="weight", value=w)
            if h.key in keys:
                raise DomainException(f"Duplicate atom {h}", argument="atoms")
            keys.add(h.key)
        total = exact_sum(w for _, w in self.atoms)
        if abs(total - 1) > NORMALIZATION_TOLERANCE:
            raise DomainException(f"Atom weights must sum to 1, got {total}", argument="atoms", value=total)

    def is_valid(self) -> bool:
        try:
            self.validate()
            return True
        except DomainException:
            return False

    @classmethod
    def from_atoms(cls, n: int, atoms: Iterable[tuple[Hypothesis, Probability]]) -> "GibbsClassifier":
        """Canonicalize, merge duplicate predictors and drop zero-weight atoms."""
        grouped: dict[tuple, tuple[Hypothesis, list[Probability]]] = {}
        for h, w in atoms:
            ch = canonical_hypothesis(h)
            if ch.key in grouped:
                grouped[ch.key][1].append(w)
            else:
                grouped[ch.key] = (ch, [w])
        merged = []
        for key in sorted(grouped):
            h, weights = grouped[key]
            w = exact_sum(weights)
            if w != 0:
                merged.append((h, w))
        return cls(n, tuple(merged))

    @classmethod
    def point_mass(cls, h: Hypothesis) -> "GibbsClassifier":
        return cls.from_atoms(h.n, [(h, Fraction(1))])

    @classmethod
    def uniform(cls, hypotheses: Sequence[Hypothesis], n: int | None = None) -> "GibbsClassifier":
        """Uniform weights over ``hypotheses`` (duplicates accumulate weight)."""
        if not hypotheses:
            raise DomainException("Cannot build a uniform mixture over no hypotheses", argument="hypotheses")
        size = n if n is not None else hypotheses[0].n
        w = Fraction(1, len(hypotheses))
        return cls.from_atoms(size, [(h, w) for h in hypotheses])

    @classmethod
    def mixture(cls, components: Sequence[tuple["GibbsClassifier", Probability]]) -> "GibbsClassifier":
        """Convex combination of Gibbs classifiers."""
        if not components:
            raise DomainException("Cannot mix zero components", argument="components")
        n = components[0][0].n
        atoms = []
        for q, weight in components:
            if q.n != n:
                raise DomainException("Cannot mix classifiers over different domains", argument="components")
            atoms.extend((h, weight * w) for h, w in q.atoms)
        return cls.from_atoms(n, atoms)

    @property
    def hypotheses(self) -> tuple[Hypothesis, ...]:
        return tuple(h for h, _ in self.atoms)

    @property
    def weights(self) -> tuple[Probability, ...]:
        return tuple(w for _, w in self.atoms)

    @cached_property
    def _weight_by_key(self) -> dict[tuple, Probability]:
        return {h.key: w for h, w in self.atoms}

    @cached_property
    def thresholds_only(self) -> bool:
        return all(isinstance(h, ThresholdHypothesis) for h in self.hypotheses)

    def weight_of(self, h: Hypothesis) -> Probability:
        """Weight of the atom predicting like ``h`` (0 if absent)."""
        return self._weight_by_key.get(canonical_hypothesis(h).key, 0)

    def prob_positive(self, x: int) -> Probability:
        """Pr_{h~Q}[h(x) = +1]."""
        Domain(self.n).check_point(x)
        return exact_sum(w for h, w in self.atoms if h.predict(x) == POSITIVE)

    @cached_property
    def _threshold_prefix(self) -> tuple[tuple[int, ...], tuple[Probability, ...]]:
        ks = tuple(h.k for h in self.hypotheses)
        ws = self.weights
        prefix = tuple(exact_sum(ws[:j]) for j in range(len(ws) + 1))
        return ks, prefix

    def positive_rates(self, points: Iterable[int]) -> list[Probability]:
        """Pr[h(x) = +1] for each point, via prefix sums when every atom is a threshold."""
        if not self.thresholds_only:
            return [self.prob_positive(x) for x in points]
        domain = Domain(self.n)
        ks, prefix = self._threshold_prefix
        rates = []
        for x in points:
            domain.check_point(x)
            # atoms sorted by k; h_k(x) = +1 iff k < x
            rates.append(prefix[bisect_left(ks, x)])
        return rates

    def float_weights(self) -> np.ndarray:
        w = np.array([float(v) for v in self.weights], dtype=float)
        return w / w.sum()

    def draw(self, rng: np.random.Generator, size: int | tuple[int, ...]) -> np.ndarray:
        """Draw atom indices i.i.d. from the mixture."""
        return rng.choice(len(self.atoms), size=size, p=self.float_weights())

    def __str__(self) -> str:
        return " + ".join(f"{float(w):.4g}*{h}" for h, w in self.atoms)


@dataclass(frozen=True)
class RealizableDistribution:
    """A marginal over {1..n} with labels given by h_{true_threshold}."""

    marginal: tuple[Probability, ...]
    true_threshold: int

    def __post_init__(self):
        object.__setattr__(self, "marginal", tuple(self.marginal))
        self.validate()

    def validate(self) -> None:
        if not self.marginal:
            raise DomainException("The marginal must cover at least one point", argument="marginal")
        if any(p < 0 for p in self.marginal):
            raise DomainException("Marginal probabilities must be nonnegative", argument="marginal")
        total = exact_sum(self.marginal)
        if abs(total - 1) > NORMALIZATION_TOLERANCE:
            raise DomainException(f"Marginal must sum to 1, got {total}", argument="marginal", value=total)
        if not 0 <= self.true_threshold <= self.n:
            raise DomainException(
                f"True threshold must lie in 0..{self.n}, got {self.true_threshold}",
                argument="true_threshold",
                value=self.true_threshold,
            )

    def is_valid(self) -> bool:
        try:
            self.validate()
            return True
        except DomainException:
            return False

    @property
    def n(self) -> int:
        return len(self.marginal)

    @property
    def target(self) -> ThresholdHypothesis:
        return ThresholdHypothesis(self.true_threshold, self.n)

    def label(self, x: int) -> int:
        return self.target.predict(x)

    @cached_property
    def cumulative(self) -> tuple[Probability, ...]:
        """cumulative[j] = marginal mass of {1..j}."""
        running: list[Probability] = [Fraction(0) if isinstance(self.marginal[0], Fraction) else 0.0]
        for p in self.marginal:
            running.append(running[-1] + p)
        return tuple(running)

    @cached_property
    def support(self) -> tuple[int, ...]:
        return tuple(x for x, p in zip(range(1, self.n + 1), self.marginal) if p > 0)

    @cached_property
    def float_marginal(self) -> np.ndarray:
        p = np.array([float(v) for v in self.marginal], dtype=float)
        return p / p.sum()
