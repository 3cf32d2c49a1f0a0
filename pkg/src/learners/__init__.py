"""Learning rules mapping samples to Gibbs classifiers."""

from .base import Learner
from .erm import CoverERMLearner, ERMLearner, cover_thresholds, margin_bounds
from .exp import ExpGibbsLearner
from .factory import LearnerFactory, parse_params
from .plugins import ConstantLearner, FunctionLearner, TableLearner
from src.utils.exceptions import LearnerException


def _build_exp(argument: str | None) -> Learner:
    params = parse_params(argument, f"exp:{argument}")
    unknown = set(params) - {"beta"}
    if unknown:
        raise LearnerException(f"Unknown exp parameters {sorted(unknown)}", spec=f"exp:{argument}")
    return ExpGibbsLearner(float(params.get("beta", 1.0)))


def _build_erm(argument: str | None) -> Learner:
    params = parse_params(argument, f"erm:{argument}")
    if not params:
        return ERMLearner()
    if set(params) != {"cover"}:
        raise LearnerException(f"Unknown erm parameters {sorted(params)}", spec=f"erm:{argument}")
    return CoverERMLearner(float(params["cover"]))


def _build_const(argument: str | None) -> Learner:
    params = parse_params(argument, f"const:{argument}")
    if set(params) != {"k"}:
        raise LearnerException("Constant learner spec is 'const:k=<int>'", spec=f"const:{argument}")
    return ConstantLearner(k=int(params["k"]))


def _build_table(argument: str | None) -> Learner:
    if not argument:
        raise LearnerException("Table learner spec is 'table:<path>'", spec="table")
    return TableLearner.from_file(argument)


# Register learner kinds with the factory
LearnerFactory.register("exp", _build_exp)
LearnerFactory.register("erm", _build_erm)
LearnerFactory.register("const", _build_const)
LearnerFactory.register("table", _build_table)

__all__ = [
    "ConstantLearner",
    "CoverERMLearner",
    "ERMLearner",
    "ExpGibbsLearner",
    "FunctionLearner",
    "Learner",
    "LearnerFactory",
    "TableLearner",
    "cover_thresholds",
    "margin_bounds",
    "parse_params",
]
