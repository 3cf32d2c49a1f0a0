"""Hard distributions, end-to-end experiments, trial fan-out and report writing."""

from src.core.distributions import hard_distribution, restricted_hard_distribution

from .experiments import (
    DEFAULT_KL_CONSTANT,
    HardDomain,
    KLGrowthRow,
    KLGrowthTable,
    TradeoffReport,
    TrialRecord,
    kl_growth_experiment,
    kl_threshold,
    run_tradeoff_experiment,
    select_hard_distribution,
    spacing_event,
    spacing_event_probability,
    spacing_gap,
)
from .reporting import write_report
from .trials import run_trials

__all__ = [
    "DEFAULT_KL_CONSTANT",
    "HardDomain",
    "KLGrowthRow",
    "KLGrowthTable",
    "TradeoffReport",
    "TrialRecord",
    "hard_distribution",
    "kl_growth_experiment",
    "kl_threshold",
    "restricted_hard_distribution",
    "run_tradeoff_experiment",
    "run_trials",
    "select_hard_distribution",
    "spacing_event",
    "spacing_event_probability",
    "spacing_gap",
    "write_report",
]
