"""p-profiles, homogeneity checking, subset coloring and tower arithmetic."""

from .checker import HomogeneityVerdict, HomogeneityWitness, Observation, check_approx_homogeneity
from .coloring import (
    ColorKey,
    HomogeneousSubsetResult,
    color_count_bound,
    color_of_subset,
    find_homogeneous_subset,
    grid_step,
    round_to_grid,
)
from .profiles import PProfile, p_profile, representative_samples
from .towers import TowerInt, iterated_log, parse_tower, phi, phi_threshold, ramsey_homogeneous_size, twr

__all__ = [
    "ColorKey",
    "HomogeneityVerdict",
    "HomogeneityWitness",
    "HomogeneousSubsetResult",
    "Observation",
    "PProfile",
    "TowerInt",
    "check_approx_homogeneity",
    "color_count_bound",
    "color_of_subset",
    "find_homogeneous_subset",
    "grid_step",
    "iterated_log",
    "p_profile",
    "parse_tower",
    "phi",
    "phi_threshold",
    "ramsey_homogeneous_size",
    "representative_samples",
    "round_to_grid",
    "twr",
]
