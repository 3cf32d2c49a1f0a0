"""Sensitive indices, rounded hypotheses, the even-coordinate search and KL certificates."""

from .certificates import (
    CertificateReport,
    CertificateRow,
    EventMass,
    certify,
    default_repetitions,
    event_mass,
    family_average,
    kl_certificate,
    lemma3_family,
    premise_violations,
)
from .indices import (
    DichotomyVerdict,
    PointInterval,
    SensitiveIndexReport,
    claim3_dichotomy,
    interval_for_learner,
    interval_I,
    sensitive_index,
    type_profile,
)
from .search import (
    EventFamily,
    FailureCurve,
    FailurePoint,
    SearchInterval,
    binary_search_signchange,
    empirical_rounded_hypothesis,
    event_membership,
    hoeffding_failure_reference,
    rounded_hypothesis,
    search_failure_curve,
)

__all__ = [
    "CertificateReport",
    "CertificateRow",
    "DichotomyVerdict",
    "EventFamily",
    "EventMass",
    "FailureCurve",
    "FailurePoint",
    "PointInterval",
    "SearchInterval",
    "SensitiveIndexReport",
    "binary_search_signchange",
    "certify",
    "claim3_dichotomy",
    "default_repetitions",
    "empirical_rounded_hypothesis",
    "event_mass",
    "event_membership",
    "family_average",
    "hoeffding_failure_reference",
    "interval_I",
    "interval_for_learner",
    "kl_certificate",
    "lemma3_family",
    "premise_violations",
    "rounded_hypothesis",
    "search_failure_curve",
    "sensitive_index",
    "type_profile",
]
