"""Custom exception classes for the threshold verification lab."""

from typing import Any


class LabException(Exception):
    """Base exception for lab-related errors.

    Carries an error code, structured context for the log files and a list of
    recovery suggestions that the CLI prints under the error message.
    """

    def __init__(
        self,
        message: str,
        recovery_suggestions: list[str] | None = None,
        error_code: str | None = None,
        context: dict[str, Any] | None = None,
    ):
        super().__init__(message)
        self.recovery_suggestions = recovery_suggestions or []
        self.error_code = error_code
        self.context = context or {}

    def get_user_friendly_message(self) -> str:
        """Return a user-friendly error message."""
        return str(self)

    def get_recovery_suggestions(self) -> list[str]:
        """Return list of recovery suggestions for the user."""
        return self.recovery_suggestions

    def can_recover(self) -> bool:
        """Return True if this error allows for recovery."""
        return len(self.recovery_suggestions) > 0


class DomainException(LabException):
    """Raised when an argument lies outside the finite domain or violates a precondition."""

    def __init__(self, message: str, argument: str | None = None, value: Any = None):
        suggestions = []
        if argument:
            suggestions.append(f"Check the value passed as '{argument}'.")
        suggestions.append("All points must lie in {1,...,n} and samples must be nonempty.")

        super().__init__(
            message,
            recovery_suggestions=suggestions,
            error_code="DOMAIN_ERROR",
            context={"argument": argument, "value": repr(value) if value is not None else None},
        )
        self.argument = argument
        self.value = value


class RealizabilityException(LabException):
    """Raised when an operation requires a realizable sample and gets a non-realizable one."""

    def __init__(self, sample_text: str, learner: str | None = None):
        super().__init__(
            f"Sample {sample_text} is not realizable by a threshold",
            recovery_suggestions=[
                "ERM learners only accept samples labelled by some threshold.",
                "Use 'erm:cover=<eps>' or an 'exp:beta=<float>' learner for noisy samples.",
            ],
            error_code="REALIZABILITY_ERROR",
            context={"sample": sample_text, "learner": learner},
        )
        self.sample_text = sample_text
        self.learner = learner


class LearnerException(LabException):
    """Raised when a learner cannot be resolved or cannot answer a sample."""

    def __init__(self, message: str, spec: str | None = None, available: list[str] | None = None):
        suggestions = []
        if available:
            suggestions.append(f"Available learner kinds are: {', '.join(available)}")
        suggestions.append("Learner specs look like 'exp:beta=1', 'erm', 'erm:cover=0.125' or 'table:<path>'.")

        super().__init__(
            message,
            recovery_suggestions=suggestions,
            error_code="LEARNER_ERROR",
            context={"spec": spec, "available": available},
        )
        self.spec = spec
        self.available = available or []


class ConfigurationException(LabException):
    """Raised when configuration loading or validation fails."""

    def __init__(self, config_type: str, message: str, config_file: str | None = None):
        suggestions = [
            "Check that the configuration file contains a valid JSON object.",
            "Compare against the samples under config/experiments/.",
        ]

        super().__init__(
            f"Configuration error in {config_type}: {message}",
            recovery_suggestions=suggestions,
            error_code="CONFIG_ERROR",
            context={"config_type": config_type, "config_file": config_file},
        )
        self.config_type = config_type
        self.config_file = config_file


class ValidationFailure(LabException):
    """Raised when a verification verdict fails (CLI exit code 2)."""

    def __init__(self, check: str, message: str, witness: Any = None):
        super().__init__(
            f"Validation failed in {check}: {message}",
            recovery_suggestions=["Inspect the witness in the JSON verdict or the debug log."],
            error_code="VALIDATION_FAILURE",
            context={"check": check, "witness": repr(witness) if witness is not None else None},
        )
        self.check = check
        self.witness = witness


class BudgetExhaustedException(LabException):
    """Raised when a search exhausts its budget without a certificate (CLI exit code 3)."""

    def __init__(self, search: str, budget: int, explored: int):
        super().__init__(
            f"Search '{search}' exhausted its budget of {budget} after exploring {explored} candidates",
            recovery_suggestions=[
                "Absence of a certificate is not a disproof.",
                "Raise the budget or shrink the point set.",
            ],
            error_code="BUDGET_EXHAUSTED",
            context={"search": search, "budget": budget, "explored": explored},
        )
        self.search = search
        self.budget = budget
        self.explored = explored


class ReportException(LabException):
    """Raised when a report cannot be written."""

    def __init__(self, path: str, reason: str):
        super().__init__(
            f"Failed to write report '{path}': {reason}",
            recovery_suggestions=[
                "Check that you have write permissions to the output directory.",
                "Try a different --out path.",
            ],
            error_code="REPORT_ERROR",
            context={"path": path, "reason": reason},
        )
        self.path = path
        self.reason = reason
