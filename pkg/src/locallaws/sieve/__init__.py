"""Exact ground truth: nu(n, y) histograms, friable sums and Legendre's Phi."""

from .legendre import phi_legendre
from .segmented import (DEFAULT_MAX_X, DEFAULT_SEGMENT, FriableStats, NuHistogram,
                        friable_stats, nu_histogram, nu_values)
from .stats import s_z_from_hist, variance_stat

__all__ = [
    "DEFAULT_MAX_X", "DEFAULT_SEGMENT", "FriableStats", "NuHistogram", "friable_stats",
    "nu_histogram", "nu_values", "phi_legendre", "s_z_from_hist", "variance_stat",
]
