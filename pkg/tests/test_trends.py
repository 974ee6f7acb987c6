"""Desk-scale trends behind the bounded-ratio acceptance checks.

At fixed u the friable-sum ratio U_r / predict_ur42 approaches 1 only
slowly (the correction is O(1/log y)); these tests pin down the direction.
"""

import pytest

from locallaws.laws import LawParams, predict_ur42
from locallaws.sieve import friable_stats


@pytest.mark.parametrize("r", [0.5, 1.0])
def test_ur42_ratio_decreases_toward_one(r):
    ratios = []
    for x in (10**5, 10**6, 10**7):
        y = round(x ** (1 / 3))
        ratios.append(friable_stats(x, y).u_r(r) / predict_ur42(LawParams(x, y, 0), r))
    assert all(q > 1 for q in ratios)
    assert ratios == sorted(ratios, reverse=True)
