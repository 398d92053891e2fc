"""Excursion maxima of (2,1) and (1,2) random walks in Lamperti environments."""

from ._core import (
    LampwalkError,
    WalkModel,
    classify,
    escape_prob_21,
    hitting_ratio,
    local_exponent,
    max_dist_linear_solve,
    max_distribution,
    normalized_entry,
    r,
    r_increment_rate,
    simulate,
    spectral_radius,
    xi,
)

__all__ = [
    "LampwalkError",
    "WalkModel",
    "classify",
    "escape_prob_21",
    "hitting_ratio",
    "local_exponent",
    "max_dist_linear_solve",
    "max_distribution",
    "normalized_entry",
    "r",
    "r_increment_rate",
    "simulate",
    "spectral_radius",
    "xi",
]
