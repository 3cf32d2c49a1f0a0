"""Factory resolving CLI learner specs such as ``exp:beta=4`` into learners."""

from collections.abc import Callable

from src.learners.base import Learner
from src.utils.exceptions import LearnerException

LearnerBuilder = Callable[[str | None], Learner]


def parse_params(argument: str | None, spec: str) -> dict[str, str]:
    """Parse ``key=value,key=value`` into a dict."""
    if not argument:
        return {}
    params = {}
    for part in argument.split(","):
        key, sep, value = part.partition("=")
        if not sep or not key.strip():
            raise LearnerException(f"Expected key=value in learner spec '{spec}', got '{part}'", spec=spec)
        params[key.strip()] = value.strip()
    return params


class LearnerFactory:
    """Registry of learner kinds keyed by spec prefix."""

    # Registry of learner builders
    _builders: dict[str, LearnerBuilder] = {}

    @classmethod
    def register(cls, prefix: str, builder: LearnerBuilder) -> None:
        """Register a learner kind.

        Args:
            prefix: Spec prefix before the first ':' (e.g. "exp")
            builder: Callable taking the text after ':' (or None) and returning a Learner
        """
        cls._builders[prefix] = builder

    @classmethod
    def create(cls, spec: str) -> Learner:
        """Create a learner from its spec.

        Args:
            spec: ``kind`` or ``kind:argument``

        Returns:
            The resolved Learner

        Raises:
            LearnerException: If the kind is unknown or the argument is malformed
        """
        if not isinstance(spec, str) or not spec.strip():
            raise LearnerException("Learner spec must be a non-empty string", spec=spec, available=cls.get_available_kinds())
        kind, sep, argument = spec.strip().partition(":")
        if kind not in cls._builders:
            raise LearnerException(
                f"Unknown learner kind '{kind}'", spec=spec, available=cls.get_available_kinds()
            )
        try:
            return cls._builders[kind](argument if sep else None)
        except LearnerException:
            raise
        except (ValueError, TypeError) as e:
            raise LearnerException(f"Invalid learner spec '{spec}': {e}", spec=spec) from e

    @classmethod
    def get_available_kinds(cls) -> list[str]:
        return list(cls._builders.keys())

    @classmethod
    def clear_registry(cls) -> None:
        """Clear the registry. Mainly for testing purposes."""
        cls._builders.clear()
