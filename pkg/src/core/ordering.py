"""Positions, order-types and equivalence of samples."""

from bisect import bisect_right
from collections.abc import Iterator, Sequence
from itertools import combinations, permutations, product

from src.core.models import NEGATIVE, POSITIVE, Domain, EquivalenceType, LabeledExample, Sample
from src.utils.exceptions import DomainException


def pos(x: int, sample: Sample) -> int:
    """Number of distinct sample points <= x."""
    Domain(sample.n).check_point(x)
    return bisect_right(sample.sorted_points, x)


def order_type(sample: Sample) -> EquivalenceType:
    """Order-type pi[i] = pos(x_i, S) together with the label vector."""
    rank = {p: i + 1 for i, p in enumerate(sample.sorted_points)}
    return EquivalenceType(tuple(rank[x] for x in sample.points), sample.labels)


def equivalent(first: Sample, second: Sample) -> bool:
    """True iff the two samples share order relations and labels position by position."""
    if first.m != second.m:
        raise DomainException(
            f"Cannot compare samples of sizes {first.m} and {second.m}", argument="sample", value=(first.m, second.m)
        )
    return order_type(first) == order_type(second)


def is_realizable(sample: Sample) -> bool:
    """True iff some threshold labels the sample without error."""
    negatives = [ex.x for ex in sample.examples if ex.y == NEGATIVE]
    if not negatives:
        return True
    split = max(negatives)
    return all(ex.x > split for ex in sample.examples if ex.y == POSITIVE)


def is_permutation_type(t: EquivalenceType) -> bool:
    return t.is_permutation


def permutation_types(m: int) -> list[EquivalenceType]:
    """All m!·2^m equivalence types with a permutation order-type."""
    if m < 1:
        raise DomainException(f"Sample size must be positive, got {m}", argument="m", value=m)
    return [
        EquivalenceType(pi, ybar)
        for pi in permutations(range(1, m + 1))
        for ybar in product((NEGATIVE, POSITIVE), repeat=m)
    ]


def realizable_labels(t: EquivalenceType) -> bool:
    """Whether samples of type ``t`` are realizable (decided on the order-type alone)."""
    by_rank = sorted(zip(t.pi, t.ybar))
    seen_positive = False
    for _, y in by_rank:
        if y == POSITIVE:
            seen_positive = True
        elif seen_positive:
            return False
    return True


def sample_of_type(t: EquivalenceType, points: Sequence[int], n: int) -> Sample:
    """The sample of permutation type ``t`` whose underlying set is ``points`` (any order)."""
    if not t.is_permutation:
        raise DomainException(f"Type {t} is not a permutation type", argument="t")
    chosen = sorted(points)
    if len(chosen) != t.m or len(set(chosen)) != t.m:
        raise DomainException(f"Need {t.m} distinct points, got {list(points)}", argument="points")
    return Sample(tuple(LabeledExample(chosen[p - 1], y) for p, y in zip(t.pi, t.ybar)), n)


def samples_of_type(t: EquivalenceType, points: Sequence[int], n: int | None = None) -> Iterator[Sample]:
    """Every sample over ``points`` with permutation equivalence type ``t``."""
    pool = sorted(set(points))
    size = n if n is not None else max(pool)
    for chosen in combinations(pool, t.m):
        yield sample_of_type(t, chosen, size)
