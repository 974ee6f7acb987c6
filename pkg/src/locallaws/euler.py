"""Primes and prime-indexed sums and products.

Every product over primes is evaluated as ``exp`` of a compensated sum of
logarithms (``math.fsum``), so that products over ~10^5 factors keep full
double precision.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .errors import BudgetError, DomainError

# Odd-only bytearray sieve: ~limit/2 bytes plus 8 bytes per prime.
MAX_PRIME_LIMIT = 10**9
DEFAULT_TRUNCATION = 10**6

EULER_GAMMA = float(mpmath.euler)


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: np.ndarray

    def __len__(self) -> int:
        return len(self.primes)

    def upto(self, y: float) -> np.ndarray:
        """Primes p <= y (y may be real)."""
        if y > self.limit:
            raise ValueError(f"table only reaches {self.limit}, asked for {y}")
        return self.primes[: int(np.searchsorted(self.primes, math.floor(y), side="right"))]


def _sieve(limit: int) -> np.ndarray:
    # index i of the odd sieve stands for 2*i + 1
    odd = np.ones((limit + 1) // 2, dtype=bool)
    odd[0] = False
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if odd[i]:
            p = 2 * i + 1
            odd[p * p // 2 :: p] = False
    out = np.empty(int(odd.sum()) + 1, dtype=np.int64)
    out[0] = 2
    out[1:] = 2 * np.flatnonzero(odd) + 1
    return out


_lock = threading.Lock()
_largest: PrimeTable | None = None


def primes_up_to(limit: int) -> PrimeTable:
    """All primes <= limit, ascending.

    Tables are cached: the largest one built so far serves every smaller request.
    """
    global _largest
    limit = int(limit)
    if limit < 2:
        raise DomainError(f"no primes up to {limit}")
    if limit > MAX_PRIME_LIMIT:
        raise BudgetError(f"prime table limit {limit} exceeds cap {MAX_PRIME_LIMIT}")
    with _lock:
        if _largest is None or _largest.limit < limit:
            _largest = PrimeTable(limit, _sieve(limit))
            _largest.primes.setflags(write=False)
        big = _largest
    if big.limit == limit:
        return big
    return PrimeTable(limit, big.upto(limit))


def _primes_to(y: float) -> np.ndarray:
    if not y >= 2:
        raise DomainError(f"y must be >= 2, got {y}")
    return primes_up_to(math.floor(y)).primes


def _fsum(a: np.ndarray) -> float:
    return math.fsum(a.tolist())


@lru_cache(maxsize=256)
def prime_reciprocal_sum(y: float) -> float:
    """E(y) = sum of 1/p over primes p <= y."""
    return _fsum(1.0 / _primes_to(y))


@lru_cache(maxsize=256)
def zeta1(y: float) -> float:
    """prod_{p<=y} (1 - 1/p)^{-1}."""
    return math.exp(-_fsum(np.log1p(-1.0 / _primes_to(y))))


def shifted_mertens(y: float, s: float) -> float:
    """prod_{p<=y} (1 + s/p); the mean value of z^{nu(n,y)} with s = z - 1."""
    p = _primes_to(y)
    if 1.0 + s / 2.0 <= 0.0:
        raise DomainError(f"factor at p=2 is non-positive for s={s}")
    if s == 0:
        return 1.0
    return math.exp(_fsum(np.log1p(s / p.astype(float))))


@dataclass(frozen=True)
class EulerProductValue:
    value: float
    truncation_prime: int
    tail_bound: float  # bound on |log(true F) - log(value)|


@lru_cache(maxsize=None)
def _prime_zeta_tail2(P: int) -> float:
    """sum_{p > P} p^-2."""
    with mpmath.workdps(40):
        total = mpmath.primezeta(2)
        head = mpmath.fsum(mpmath.mpf(1) / (int(q) * int(q)) for q in _primes_to(P))
        return float(total - head)


def _remainder_bound(s: float, P: int) -> float:
    # log F tail = sum_{m>=2} c_m sum_{p>P} p^-m with |c_m| <= (|s|^m + |s|)/m,
    # and sum_{p>P} p^-m <= P^(1-m)/(m-1).
    a = abs(s)
    bound = 0.0
    for m in range(3, 200):
        term = (a**m + a) / (m * (m - 1)) * float(P) ** (1 - m)
        bound += term
        if term < 1e-30 * max(bound, 1e-300):
            break
    return bound


@lru_cache(maxsize=1024)
def big_F(z: float, truncation_prime: int = DEFAULT_TRUNCATION) -> EulerProductValue:
    """F(z) = prod_p (1 + z/(p-1)) (1 - 1/p)^z with a second-order tail correction.

    Each factor is rewritten as (1 + (z-1)/p) (1 - 1/p)^(z-1), whose logarithm
    is sum_{m>=2} [(-1)^(m+1) (z-1)^m - (z-1)] / (m p^m). The m = 2 term,
    -z(z-1)/(2p^2), is summed exactly over p > truncation_prime through the
    prime zeta function; the rest is bounded in ``tail_bound``.
    """
    if z <= -1:
        raise DomainError(f"F(z) needs z > -1, got {z}")
    P = int(truncation_prime)
    if P < 100:
        raise DomainError(f"truncation prime must be >= 100, got {P}")
    s = float(z) - 1.0
    if abs(s) >= P / 2:
        raise DomainError(f"|z - 1| = {abs(s)} too large for truncation at {P}")
    if z == 0 or z == 1:
        return EulerProductValue(1.0, P, 0.0)
    inv = 1.0 / _primes_to(P).astype(float)
    logF = _fsum(np.log1p(s * inv) + s * np.log1p(-inv))
    logF += -z * s / 2.0 * _prime_zeta_tail2(P)
    return EulerProductValue(math.exp(logF), P, _remainder_bound(s, P))
