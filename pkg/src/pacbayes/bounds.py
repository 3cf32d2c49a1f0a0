"""The McAllester PAC-Bayes bound."""

import math
from dataclasses import asdict, dataclass
from typing import Any

from src.utils.exceptions import DomainException


def _encode(value: float) -> float | str:
    return "inf" if math.isinf(value) else value


@dataclass(frozen=True)
class BoundReport:
    """Evaluated bound; serializes with the keys empirical_loss, kl, m, delta, bound."""

    empirical_loss: float
    kl: float
    m: int
    delta: float
    bound: float

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.bound < self.empirical_loss:
            raise DomainException(
                f"Bound {self.bound} lies below the empirical loss {self.empirical_loss}", argument="bound"
            )

    def is_valid(self) -> bool:
        try:
            self.validate()
            return True
        except DomainException:
            return False

    def to_dict(self) -> dict[str, Any]:
        return {key: _encode(value) if isinstance(value, float) else value for key, value in asdict(self).items()}

    def holds_for(self, population_loss: float) -> bool:
        return population_loss <= self.bound


def mcallester_bound(empirical_loss: float, kl: float, m: int, delta: float) -> BoundReport:
    """empirical_loss + sqrt((KL + ln(2·sqrt(m)/delta)) / (2(m-1))).

    Args:
        empirical_loss: Empirical Gibbs loss of the posterior
        kl: KL(Q||P), possibly +inf
        m: Sample size, at least 2
        delta: Confidence parameter in (0, 1)

    Returns:
        BoundReport; +inf KL propagates to an infinite bound
    """
    if not isinstance(m, int) or m < 2:
        raise DomainException(f"The bound needs m >= 2, got {m}", argument="m", value=m)
    if not 0 < delta < 1:
        raise DomainException(f"delta must lie in (0, 1), got {delta}", argument="delta", value=delta)
    if kl < 0:
        raise DomainException(f"KL must be nonnegative, got {kl}", argument="kl", value=kl)

    empirical_loss = float(empirical_loss)
    kl = float(kl)
    if math.isinf(kl):
        bound = math.inf
    else:
        bound = empirical_loss + math.sqrt((kl + math.log(2 * math.sqrt(m) / delta)) / (2 * (m - 1)))
    return BoundReport(empirical_loss=empirical_loss, kl=kl, m=m, delta=float(delta), bound=bound)
