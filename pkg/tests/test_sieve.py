import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st

from locallaws import BudgetError, DomainError
from locallaws.euler import primes_up_to
from locallaws.sieve import (NuHistogram, friable_stats, nu_histogram, nu_values, phi_legendre,
                             s_z_from_hist, variance_stat)
from locallaws.sieve.segmented import _segment


def nu_trial(n: int, y: int) -> int:
    """Distinct prime factors <= y by trial division."""
    count, d = 0, 2
    while d * d <= n:
        if n % d == 0:
            count += d <= y
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        count += n <= y
    return count


def largest_prime_factor(n: int) -> int:
    best, d = 1, 2
    while d * d <= n:
        while n % d == 0:
            best, n = d, n // d
        d += 1
    return max(best, n) if n > 1 else best


@pytest.fixture(scope="module")
def nu_full():
    """nu(n) for n <= 10^5 by trial division."""
    return np.array([0] + [nu_trial(n, n) for n in range(1, 10**5 + 1)])


def test_hand_examples():
    assert nu_histogram(30, 3).counts == {0: 10, 1: 15, 2: 5}
    assert nu_histogram(10, 10).counts == {0: 1, 1: 7, 2: 2}
    for x in (1, 2, 7, 1000):
        expected = {0: x - x // 2, 1: x // 2} if x > 1 else {0: 1}
        assert nu_histogram(x, 2).counts == expected


def test_third_oracle_all_x(nu_full):
    # nu_histogram(x, x) equals the trial-factoring histogram for every x <= 10^5;
    # checking cumulative counts at each x reduces to nu_values matching pointwise
    assert np.array_equal(nu_values(1, 10**5, 10**5), nu_full[1:])
    for x in (2, 3, 10, 97, 1000, 30030, 65535, 99991, 10**5):
        expected = Counter(nu_full[1 : x + 1].tolist())
        assert nu_histogram(x, x).counts == {k: expected.get(k, 0) for k in range(max(expected) + 1)}


@given(st.integers(min_value=1, max_value=10**5), st.integers(min_value=2, max_value=10**5))
def test_sampled_against_trial_division(x, y):
    h = nu_histogram(x, y, segment_size=4096)
    expected = Counter(nu_trial(n, y) for n in range(max(1, x - 200), x + 1))
    tail = Counter(nu_values(max(1, x - 200), x, y).tolist())
    assert tail == expected
    assert h.total() == x


@pytest.mark.parametrize("x", [10**5, 10**6])
@pytest.mark.parametrize("y", [16, 100, 1000])
def test_phi_matches_sieve(x, y):
    assert nu_histogram(x, y)[0] == phi_legendre(x, y)


def test_phi_examples():
    assert phi_legendre(10, 2) == 5
    assert phi_legendre(100, 5) == 26
    assert phi_legendre(10.7, 1) == 10
    assert phi_legendre(0, 10) == 0
    # Phi(x, sqrt x) = 1 + pi(x) - pi(sqrt x)
    assert phi_legendre(10**6, 1000) == 1 + 78498 - 168


def test_deterministic_over_segments_and_workers():
    ref = nu_histogram(300000, 1000)
    assert nu_histogram(300000, 1000, segment_size=1 << 12) == ref
    assert nu_histogram(300000, 1000, segment_size=1 << 14, workers=2) == ref


def test_monotone_in_y():
    x = 200000
    tagged = [x - nu_histogram(x, y)[0] for y in (16, 100, 1000, 10**4, x)]
    assert tagged == sorted(tagged)


def test_errors():
    with pytest.raises(DomainError):
        nu_histogram(10, 1)
    with pytest.raises(DomainError):
        nu_histogram(0, 5)
    with pytest.raises(BudgetError):
        nu_histogram(10**10, 16)
    with pytest.raises(BudgetError):
        nu_histogram(10**6, 16, max_x=10**5)
    with pytest.raises(DomainError):
        friable_stats(10, 20)


def test_friable_examples():
    s = friable_stats(10, 2, [2])
    assert s.psi == 4 and s.u_r_values[2.0] == 7
    s = friable_stats(30, 3, [2])
    assert s.psi == 12 and s.u_r_values[2.0] == 31
    assert s.u_r(1) == s.psi


@pytest.mark.parametrize("x,y", [(5000, 7), (5000, 50), (20000, 141), (20000, 20000)])
def test_friable_against_trial_division(x, y):
    smooth = [n for n in range(1, x + 1) if largest_prime_factor(n) <= y]
    s = friable_stats(x, y, [0.5, 2], segment_size=1 << 10)
    assert s.psi == len(smooth)
    assert s.u_r(2) == sum(2 ** nu_trial(n, y) for n in smooth)
    assert s.u_r(0.5) == pytest.approx(math.fsum(0.5 ** nu_trial(n, y) for n in smooth), rel=1e-14)


def test_friable_large_powers():
    # the log-sum friability test must stay exact over high prime powers
    hist = _segment(2**29 - 10, 2**29, 3, True, primes=primes_up_to(100).primes)
    # in [2^29 - 10, 2^29], the 3-friable numbers are 2^29 only
    assert hist.sum() == 1 and hist[1] == 1


@given(st.integers(min_value=16, max_value=20000), st.floats(min_value=0, max_value=3))
def test_u_r_monotone(x, r):
    s = friable_stats(x, min(x, 23))
    assert s.u_r(r) <= s.u_r(r + 0.5)
    assert s.psi <= x


def test_s_z_examples():
    h = nu_histogram(30, 3)
    assert s_z_from_hist(h, 1) == 30
    assert s_z_from_hist(h, 2) == 60
    assert s_z_from_hist(h, 0) == 10
    assert s_z_from_hist(h, -1) == 10 - 15 + 5


def test_s_z_interpolation_recovers_counts():
    h = nu_histogram(1000, 5)
    zs = [-1, 0, 1, 2]
    vals = [s_z_from_hist(h, z) for z in zs]
    coef = np.linalg.solve(np.vander(zs, 4, increasing=True), vals)
    assert np.allclose(coef[: len(h.counts)], [h[k] for k in range(len(h.counts))], atol=1e-9)


def test_variance_examples():
    h = NuHistogram(10, 16, {3: 10})
    r = 0.7
    ll = math.log(math.log(16))
    assert variance_stat(h, r) == pytest.approx(10 * r**3 * (3 - r * ll) ** 2, rel=1e-14)
    assert variance_stat(h, 3 / ll) == pytest.approx(0, abs=1e-9)
    h = nu_histogram(30, 3)
    l3 = math.log(math.log(3))
    assert variance_stat(h, 1) == pytest.approx(10 * l3**2 + 15 * (1 - l3) ** 2 + 5 * (2 - l3) ** 2)


def test_histogram_invariants():
    h = nu_histogram(10**6, 10**6)
    assert h.total() == 10**6
    assert max(h.counts) <= 15
    assert all(c >= 0 for c in h.counts.values())
