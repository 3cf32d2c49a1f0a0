"""Plug-in learners: constant posteriors, lookup tables and user-supplied functions."""

import json
from collections.abc import Callable
from fractions import Fraction
from pathlib import Path
from typing import Any

from src.core.literals import parse_sample
from src.core.models import GibbsClassifier, Hypothesis, Sample, TableHypothesis, ThresholdHypothesis
from src.learners.base import Learner
from src.utils.exceptions import DomainException, LearnerException
from src.utils.logging import get_logger


class ConstantLearner(Learner):
    """Returns the same posterior for every sample.

    Either a fixed ``posterior`` or a threshold ``k`` (point mass on h_k over the
    sample's own domain) must be given.
    """

    exactly_homogeneous = True

    def __init__(self, posterior: GibbsClassifier | None = None, k: int | None = None):
        if (posterior is None) == (k is None):
            raise LearnerException("Constant learner needs exactly one of a posterior or a threshold", spec="const")
        params: dict[str, Any] = {"k": k} if k is not None else {}
        super().__init__("const", params)
        self.fixed = posterior
        self.k = k

    def posterior(self, sample: Sample) -> GibbsClassifier:
        if self.fixed is not None:
            if self.fixed.n != sample.n:
                raise DomainException(
                    f"Constant posterior lives on {self.fixed.n} points, sample on {sample.n}",
                    argument="n",
                    value=sample.n,
                )
            return self.fixed
        return GibbsClassifier.point_mass(ThresholdHypothesis(self.k, sample.n))


def _parse_weight(value: Any) -> Fraction | float:
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, int):
        return Fraction(value)
    return float(value)


def _parse_atom(entry: dict[str, Any], n: int) -> tuple[Hypothesis, Fraction | float]:
    if "threshold" in entry:
        h: Hypothesis = ThresholdHypothesis(int(entry["threshold"]), n)
    elif "bits" in entry:
        bits = entry["bits"]
        if isinstance(bits, str):
            bits = [1 if c == "+" else -1 for c in bits]
        h = TableHypothesis(tuple(bits))
    else:
        raise LearnerException(f"Posterior atom {entry} needs 'threshold' or 'bits'", spec="table")
    return h, _parse_weight(entry.get("weight", 1))


class TableLearner(Learner):
    """Looks up the posterior of each sample in an explicit table."""

    def __init__(self, n: int, table: dict[str, GibbsClassifier], source: str | None = None):
        super().__init__("table", {"path": source} if source else {})
        self.n = n
        self.table = table

    @classmethod
    def from_file(cls, path: str | Path) -> "TableLearner":
        """Load a table from JSON ``{"n": int, "entries": [{"sample": literal, "posterior": [atoms]}]}``."""
        logger = get_logger("learners")
        path = Path(path)
        try:
            with open(path, encoding="utf-8") as f:
                data = json.load(f)
        except FileNotFoundError as e:
            raise LearnerException(f"Learner table not found: {path}", spec=f"table:{path}") from e
        except json.JSONDecodeError as e:
            raise LearnerException(f"Invalid JSON in learner table {path}: {e}", spec=f"table:{path}") from e

        learner = cls.from_dict(data, source=str(path))
        logger.debug(f"Loaded learner table from {path}", extra={"context": {"entries": len(learner.table)}})
        return learner

    @classmethod
    def from_dict(cls, data: dict[str, Any], source: str | None = None) -> "TableLearner":
        if not isinstance(data, dict) or "n" not in data or "entries" not in data:
            raise LearnerException("Learner table must be an object with 'n' and 'entries'", spec="table")
        n = int(data["n"])
        table: dict[str, GibbsClassifier] = {}
        for entry in data["entries"]:
            try:
                sample = parse_sample(entry["sample"], n)
                posterior = GibbsClassifier.from_atoms(n, [_parse_atom(atom, n) for atom in entry["posterior"]])
            except (KeyError, TypeError, ValueError, DomainException) as e:
                raise LearnerException(f"Malformed learner table entry {entry!r}: {e}", spec="table") from e
            table[str(sample)] = posterior
        return cls(n, table, source=source)

    def posterior(self, sample: Sample) -> GibbsClassifier:
        key = str(sample)
        if sample.n != self.n or key not in self.table:
            raise LearnerException(f"Learner table has no entry for sample {key} on n={sample.n}", spec=self.describe())
        return self.table[key]


class FunctionLearner(Learner):
    """Wraps a user-supplied mapping Sample -> GibbsClassifier."""

    def __init__(
        self,
        name: str,
        fn: Callable[[Sample], GibbsClassifier],
        exactly_homogeneous: bool = False,
        params: dict[str, Any] | None = None,
    ):
        super().__init__(name, params)
        self.fn = fn
        self.exactly_homogeneous = exactly_homogeneous

    def posterior(self, sample: Sample) -> GibbsClassifier:
        result = self.fn(sample)
        if not isinstance(result, GibbsClassifier):
            raise LearnerException(f"Learner '{self.name}' returned {type(result).__name__}, not a GibbsClassifier")
        return result
