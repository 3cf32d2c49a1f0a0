"""Tower-function numbers, iterated base-2 logarithms and the Phi / Ramsey size formulas.

A ``TowerInt(height, top)`` stands for twr_height(top) where twr_1(x) = x and
twr_i(x) = 2^twr_{i-1}(x). Values are kept normalized: the tower is collapsed
while ``height > 1`` and ``top < 1024``, so equal numbers compare equal.
"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from src.utils.exceptions import DomainException

Real = int | float | Fraction

COLLAPSE_LIMIT = 1024
_TOWER_LITERAL = re.compile(r"^2\^\^(\d+)\(([0-9]+(?:\.[0-9]+)?)\)$")
_POWER_LITERAL = re.compile(r"^2\^(\d+)$")


def _log2(value: Real) -> Real:
    if value <= 0:
        raise DomainException(f"Iterated logarithm reached a nonpositive value {value}", argument="x", value=value)
    if isinstance(value, int) and value & (value - 1) == 0:
        return value.bit_length() - 1
    if isinstance(value, Fraction):
        return math.log2(value.numerator) - math.log2(value.denominator)
    return math.log2(value)


def _ratio(numerator: Real, base: float, exponent: int) -> float:
    """numerator / base**exponent, falling back to log-space when either side overflows a float."""
    try:
        return float(numerator) / (base**exponent)
    except OverflowError:
        pass
    if numerator <= 0:
        return 0.0
    try:
        return math.exp(math.log(numerator) - exponent * math.log(base))
    except OverflowError:
        return math.inf


@total_ordering
@dataclass(frozen=True, eq=False)
class TowerInt:
    height: int
    top: Real

    def __post_init__(self):
        if not isinstance(self.height, int) or self.height < 1:
            raise DomainException(f"Tower height must be a positive integer, got {self.height}", argument="height")
        if self.height > 1 and self.top < 0:
            raise DomainException(f"Tower top must be nonnegative, got {self.top}", argument="top")
        height, top = self.height, self.top
        while height > 1 and top < COLLAPSE_LIMIT:
            top = 2**top if isinstance(top, int) else 2.0 ** float(top)
            height -= 1
        object.__setattr__(self, "height", height)
        object.__setattr__(self, "top", top)

    @classmethod
    def of(cls, value: Real) -> "TowerInt":
        return cls(1, value)

    def is_plain(self) -> bool:
        return self.height == 1

    def log2(self) -> "TowerInt":
        if self.height > 1:
            return TowerInt(self.height - 1, self.top)
        return TowerInt(1, _log2(self.top))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, float, Fraction)):
            other = TowerInt.of(other)
        if not isinstance(other, TowerInt):
            return NotImplemented
        return self.height == other.height and self.top == other.top

    def __hash__(self) -> int:
        return hash((self.height, self.top))

    def __lt__(self, other: "TowerInt") -> bool:
        if isinstance(other, (int, float, Fraction)):
            other = TowerInt.of(other)
        a, b = self, other
        while a.height != b.height:
            # the lower tower is plain; a nonpositive plain value is below any tower
            if a.height < b.height and a.top <= 0:
                return True
            if b.height < a.height and b.top <= 0:
                return False
            a, b = a.log2(), b.log2()
        return a.top < b.top

    def __str__(self) -> str:
        if self.height == 1:
            return str(self.top)
        return f"2^^{self.height}({self.top})"


def twr(height: int, top: Real) -> TowerInt:
    return TowerInt(height, top)


def parse_tower(text: str) -> TowerInt:
    """Parse ``d``, ``2^k`` or ``2^^h(t)`` (meaning twr_h(t))."""
    text = text.strip()
    if text.isdigit():
        return TowerInt.of(int(text))
    match = _TOWER_LITERAL.match(text)
    if match:
        top_text = match.group(2)
        top: Real = float(top_text) if "." in top_text else int(top_text)
        return TowerInt(int(match.group(1)), top)
    match = _POWER_LITERAL.match(text)
    if match:
        return TowerInt(2, int(match.group(1)))
    raise DomainException(f"Malformed tower literal '{text}'; expected 'd', '2^k' or '2^^h(t)'", argument="n", value=text)


def iterated_log(k: int, x: TowerInt | Real) -> TowerInt:
    """Base-2 iterated logarithm log^{(k)}(x), exact while x is a tower."""
    if k < 0:
        raise DomainException(f"Iteration count must be nonnegative, got {k}", argument="k", value=k)
    value = x if isinstance(x, TowerInt) else TowerInt.of(x)
    for _ in range(k):
        value = value.log2()
    return value


def _check_gamma(gamma: float) -> None:
    if not 0 < gamma < 1:
        raise DomainException(f"gamma must lie in (0, 1), got {gamma}", argument="gamma", value=gamma)


def phi(m: int, gamma: float, n: TowerInt | Real) -> float:
    """Phi(m, gamma, n) = log^{(m)}(n) / (10m/gamma)^{3m}; +inf when the numerator is still a tower."""
    _check_gamma(gamma)
    n = n if isinstance(n, TowerInt) else TowerInt.of(n)
    if m <= 1 or not n > 1:
        raise DomainException(f"phi needs m > 1 and n > 1, got m={m}, n={n}", argument="m", value=m)
    numerator = iterated_log(m, n)
    if not numerator.is_plain():
        return math.inf
    return _ratio(numerator.top, 10 * m / gamma, 3 * m)


def phi_threshold(m: int, gamma: float, s: float) -> TowerInt:
    """The smallest n with Phi(m, gamma, n) >= s, namely twr_{m+1}(s·(10m/gamma)^{3m})."""
    _check_gamma(gamma)
    if s <= 0:
        raise DomainException(f"Target size must be positive, got {s}", argument="s", value=s)
    ratio = Fraction(10 * m) / Fraction(gamma).limit_denominator(10**9)
    top = Fraction(s).limit_denominator(10**9) * ratio ** (3 * m)
    top_value: Real = float(top) if top < 2**1000 else math.ceil(top)
    return TowerInt(m + 1, top_value)


def ramsey_homogeneous_size(q: int, t: int, n: TowerInt | Real) -> float:
    """log^{(t-1)}(N) / (3 q log2 q): the guaranteed monochromatic subset size for q colors on t-subsets."""
    if q < 2 or t < 2:
        raise DomainException(f"Ramsey bound needs q >= 2 and t >= 2, got q={q}, t={t}", argument="q", value=q)
    numerator = iterated_log(t - 1, n if isinstance(n, TowerInt) else TowerInt.of(n))
    if not numerator.is_plain():
        return math.inf
    return _ratio(numerator.top, 3 * q * math.log2(q), 1)
