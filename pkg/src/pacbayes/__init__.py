"""KL divergences, the McAllester bound and prior construction."""

from .bounds import BoundReport, mcallester_bound
from .divergence import (
    as_measure,
    event_kl_lower_bound,
    event_probability,
    kl_bernoulli,
    kl_divergence,
    measure_kl,
    product_measure,
)
from .intervals import wilson_interval
from .priors import (
    PriorFactory,
    cover_prior,
    estimate_optimal_prior,
    exact_optimal_prior,
    point_prior,
    prior_entropy,
    uniform_threshold_prior,
)

__all__ = [
    "BoundReport",
    "PriorFactory",
    "as_measure",
    "cover_prior",
    "estimate_optimal_prior",
    "event_kl_lower_bound",
    "event_probability",
    "exact_optimal_prior",
    "kl_bernoulli",
    "kl_divergence",
    "mcallester_bound",
    "measure_kl",
    "point_prior",
    "prior_entropy",
    "product_measure",
    "uniform_threshold_prior",
    "wilson_interval",
]
