"""Abstract base class for all learning rules."""

from abc import ABC, abstractmethod
from typing import Any

from src.core.models import GibbsClassifier, Sample


class Learner(ABC):
    """A deterministic mapping from samples to Gibbs classifiers."""

    # Pr[h(x)=+1] depends only on the equivalence type of S and pos(x, S) for x outside S
    exactly_homogeneous: bool = False

    def __init__(self, name: str, params: dict[str, Any] | None = None):
        """Initialize a learner.

        Args:
            name: Short identifier used in reports and logs
            params: Parameter record, echoed into reports
        """
        self.name = name
        self.params = params or {}

    @abstractmethod
    def posterior(self, sample: Sample) -> GibbsClassifier:
        """Map a sample to its posterior.

        Args:
            sample: The training sample

        Returns:
            The Gibbs classifier Q_S
        """
        pass

    def __call__(self, sample: Sample) -> GibbsClassifier:
        return self.posterior(sample)

    def describe(self) -> str:
        """Spec-like description, e.g. ``exp:beta=1.0``."""
        if not self.params:
            return self.name
        args = ",".join(f"{key}={value}" for key, value in self.params.items())
        return f"{self.name}:{args}"

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.describe()})"
