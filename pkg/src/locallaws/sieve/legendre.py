"""Legendre's Phi(x, y) by the recursion Phi(x, p_j) = Phi(x, p_{j-1}) - Phi(x/p_j, p_{j-1}).

Deliberately self-contained (own prime list, no numpy): it serves as an
oracle for N_0(x, y) computed by the segmented sieve.
"""

from __future__ import annotations

import math
import sys


def _small_primes(y: int) -> list[int]:
    out: list[int] = []
    for n in range(2, y + 1):
        if all(n % p for p in out if p * p <= n):
            out.append(n)
    return out


def phi_legendre(x: float, y: float) -> int:
    """Number of n <= x with no prime factor <= y."""
    n = math.floor(x)
    if n <= 0:
        return 0
    if y < 2:
        return n
    primes = _small_primes(min(math.floor(y), n))
    memo: dict[tuple[int, int], int] = {}

    # period table for the first few primes: Phi(m, a) = (m // M) phi(M) + T[m % M]
    a0 = min(len(primes), 5)
    M = math.prod(primes[:a0])
    table = [0] * M
    acc = 0
    for m in range(M):
        if m and all(m % p for p in primes[:a0]):
            acc += 1
        table[m] = acc
    per = table[M - 1]

    def phi(m: int, a: int) -> int:
        # integers in [1, m] free of the first a primes
        if a <= a0:
            if a == a0:
                return (m // M) * per + table[m % M]
            return _naive(m, primes[:a])
        if m <= primes[a - 1]:
            return 1 if m >= 1 else 0
        key = (m, a)
        v = memo.get(key)
        if v is None:
            v = phi(m, a - 1) - phi(m // primes[a - 1], a - 1)
            memo[key] = v
        return v

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, len(primes) + 1000))
    try:
        return phi(n, len(primes))
    finally:
        sys.setrecursionlimit(limit)


def _naive(m: int, ps: list[int]) -> int:
    # inclusion-exclusion over at most 4 primes
    total = 0
    k = len(ps)
    for mask in range(1 << k):
        d, bits = 1, 0
        for i in range(k):
            if mask >> i & 1:
                d *= ps[i]
                bits += 1
        total += (-1) ** bits * (m // d)
    return total
