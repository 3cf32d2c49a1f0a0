"""Confidence intervals for Monte-Carlo frequencies."""

import math

from scipy.stats import norm

from src.utils.exceptions import DomainException


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    """Two-sided Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise DomainException(f"Need at least one trial, got {trials}", argument="trials", value=trials)
    if not 0 <= successes <= trials:
        raise DomainException(f"Successes must lie in 0..{trials}, got {successes}", argument="successes")
    if not 0 < confidence < 1:
        raise DomainException(f"Confidence must lie in (0, 1), got {confidence}", argument="confidence")

    z = float(norm.ppf(0.5 + confidence / 2))
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    lower = 0.0 if successes == 0 else max(0.0, center - half)
    upper = 1.0 if successes == trials else min(1.0, center + half)
    return lower, upper
