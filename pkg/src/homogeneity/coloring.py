"""Coloring of (m+1)-subsets by rounded p-values, and the search for monochromatic subsets."""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any

from src.core.models import EquivalenceType, Probability
from src.core.ordering import permutation_types, sample_of_type
from src.homogeneity.checker import HomogeneityVerdict, check_approx_homogeneity
from src.learners.base import Learner
from src.utils.exceptions import DomainException, RealizabilityException, ValidationFailure
from src.utils.logging import get_experiment_logger

EXHAUSTIVE_LIMIT = 16
DEFAULT_SEARCH_BUDGET = 10**6


def grid_step(m: int, gamma: float) -> Fraction:
    """The rounding grid gamma/(10m), as an exact fraction."""
    return Fraction(gamma).limit_denominator(10**9) / (10 * m)


def round_to_grid(value: Probability, step: Fraction) -> Fraction:
    """Nearest multiple of ``step`` in [0, 1]; exact ties round down."""
    t = math.ceil(Fraction(value) / step - Fraction(1, 2))
    t = max(0, min(t, math.floor(1 / step)))
    return t * step


@dataclass(frozen=True)
class ColorKey:
    """Rounded (p_0..p_m) per permutation type; ``None`` for types the learner rejects."""

    entries: tuple[tuple[EquivalenceType, tuple[Fraction, ...] | None], ...]

    def __len__(self) -> int:
        return len(self.entries)

    def to_dict(self) -> dict[str, Any]:
        return {
            str(t): None if values is None else [str(v) for v in values] for t, values in self.entries
        }


def color_of_subset(
    learner: Learner,
    subset: Sequence[int],
    gamma: float,
    n: int | None = None,
) -> ColorKey:
    """Color an (m+1)-subset D.

    For every permutation type and every held-out index i the learner is
    trained on D without its i-th smallest point, arranged in that type, and
    its probability of labelling the held-out point +1 is rounded to the grid.
    """
    points = sorted(subset)
    if len(set(points)) != len(points) or len(points) < 2:
        raise DomainException(f"Need at least two distinct points, got {list(subset)}", argument="subset")
    m = len(points) - 1
    size = n if n is not None else points[-1]
    step = grid_step(m, gamma)

    entries = []
    for t in permutation_types(m):
        values = []
        try:
            for i, held_out in enumerate(points):
                rest = points[:i] + points[i + 1 :]
                rate = learner(sample_of_type(t, rest, size)).prob_positive(held_out)
                values.append(round_to_grid(rate, step))
        except RealizabilityException:
            entries.append((t, None))
            continue
        entries.append((t, tuple(values)))
    return ColorKey(tuple(entries))


def color_count_bound(m: int, gamma: float) -> tuple[int, int]:
    """(m!·2^m·ceil(10m/gamma + 1)^{m+1}, (100m/gamma)^{2m}) rounded up to integers."""
    if m < 1 or not 0 < gamma < 1:
        raise DomainException(f"Need m >= 1 and gamma in (0, 1), got m={m}, gamma={gamma}", argument="m")
    g = Fraction(gamma).limit_denominator(10**9)
    grid_values = math.ceil(Fraction(10 * m) / g + 1)
    exact = math.factorial(m) * 2**m * grid_values ** (m + 1)
    cap = math.ceil((Fraction(100 * m) / g) ** (2 * m))
    return exact, cap


@dataclass
class HomogeneousSubsetResult:
    subset: tuple[int, ...] | None
    explored: int
    budget: int
    exhausted: bool
    method: str
    verdict: HomogeneityVerdict | None = None
    colors_seen: int = 0

    @property
    def found(self) -> bool:
        return self.subset is not None

    def to_dict(self) -> dict[str, Any]:
        return {
            "subset": list(self.subset) if self.subset else None,
            "explored": self.explored,
            "budget": self.budget,
            "exhausted": self.exhausted,
            "method": self.method,
            "colors_seen": self.colors_seen,
            "verdict": self.verdict.to_dict() if self.verdict else None,
        }


class _ColorCache:
    def __init__(self, learner: Learner, gamma: float, n: int):
        self.learner = learner
        self.gamma = gamma
        self.n = n
        self.colors: dict[tuple[int, ...], ColorKey] = {}

    def __call__(self, subset: tuple[int, ...]) -> ColorKey:
        if subset not in self.colors:
            self.colors[subset] = color_of_subset(self.learner, subset, self.gamma, self.n)
        return self.colors[subset]


def _monochromatic(candidate: tuple[int, ...], m: int, color: _ColorCache) -> bool:
    first = None
    for d in combinations(candidate, m + 1):
        key = color(d)
        if first is None:
            first = key
        elif key != first:
            return False
    return True


def find_homogeneous_subset(
    learner: Learner,
    points: Sequence[int],
    m: int,
    gamma: float,
    target_size: int,
    budget: int = DEFAULT_SEARCH_BUDGET,
    n: int | None = None,
) -> HomogeneousSubsetResult:
    """Search for a subset of ``target_size`` points whose (m+1)-subsets all share one color.

    Exhaustive over candidate subsets when |X| <= 16, greedy growth per color
    otherwise. ``budget`` caps the number of candidates (exhaustive) or
    extension attempts (greedy). A found subset is re-validated with the
    homogeneity checker at tolerance gamma/(5m).
    """
    pool = tuple(sorted(set(points)))
    if not m + 1 <= target_size <= len(pool):
        raise DomainException(
            f"Target size must lie in {m + 1}..{len(pool)}, got {target_size}", argument="target_size", value=target_size
        )
    size = n if n is not None else pool[-1]
    color = _ColorCache(learner, gamma, size)
    exp_logger = get_experiment_logger("homogeneity")
    exp_logger.log_stage("find-homogeneous-subset", {"points": len(pool), "m": m, "target": target_size})

    found: tuple[int, ...] | None = None
    explored = 0
    exhausted = False
    if len(pool) <= EXHAUSTIVE_LIMIT:
        method = "exhaustive"
        for candidate in combinations(pool, target_size):
            if explored >= budget:
                exhausted = True
                break
            explored += 1
            if _monochromatic(candidate, m, color):
                found = candidate
                break
    else:
        method = "greedy"
        found, explored, exhausted = _greedy(pool, m, target_size, budget, color)

    result = HomogeneousSubsetResult(
        subset=found,
        explored=explored,
        budget=budget,
        exhausted=exhausted,
        method=method,
        colors_seen=len(set(color.colors.values())),
    )
    if found is not None:
        result.verdict = check_approx_homogeneity(learner, found, m, gamma, n=size)
        if not result.verdict.passed:
            raise ValidationFailure(
                "find-homogeneous-subset",
                f"monochromatic subset {found} failed the homogeneity check",
                witness=result.verdict.witness,
            )
    exp_logger.log_verdict("homogeneous-subset", found is not None, {"explored": explored, "exhausted": exhausted})
    return result


def _greedy(
    pool: tuple[int, ...], m: int, target_size: int, budget: int, color: _ColorCache
) -> tuple[tuple[int, ...] | None, int, bool]:
    explored = 0
    for start in range(len(pool) - m):
        seed = pool[start : start + m + 1]
        target_color = color(seed)
        chosen = list(seed)
        for x in pool:
            if len(chosen) == target_size:
                break
            if x in seed:
                continue
            if explored >= budget:
                return None, explored, True
            explored += 1
            if all(color(tuple(sorted((*d, x)))) == target_color for d in combinations(chosen, m)):
                chosen.append(x)
        if len(chosen) == target_size:
            return tuple(sorted(chosen)), explored, False
    return None, explored, False
