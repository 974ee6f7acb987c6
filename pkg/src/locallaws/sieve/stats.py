"""Exact statistics derived from a nu(n, y) histogram."""

from __future__ import annotations

import math

from .segmented import NuHistogram, _poly_sum


def s_z_from_hist(h: NuHistogram, z: float):
    """S_z(x, y) = sum_k N_k z^k, with 0^0 = 1; exact integer for integral z."""
    return _poly_sum(h.counts, z)


def variance_stat(h: NuHistogram, r: float) -> float:
    """sum_{n<=x} r^nu(n,y) (nu(n,y) - r log log y)^2."""
    centre = r * math.log(math.log(h.y))
    return math.fsum(c * r**k * (k - centre) ** 2 for k, c in h.counts.items())
