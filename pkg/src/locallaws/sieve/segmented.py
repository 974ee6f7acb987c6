"""Segmented sieve for nu(n, y) histograms and friable sums.

Each segment of integers carries a one-byte counter per integer; every prime
p <= y adds one at its multiples.  Small primes use strided slices, large
primes (few multiples per segment) are scattered in one vectorised batch.
Segments are independent, and their histograms are merged by integer
addition, so results do not depend on scheduling or worker count.
"""

from __future__ import annotations

import math
import multiprocessing as mp
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..errors import BudgetError, DomainError
from ..euler import MAX_PRIME_LIMIT, primes_up_to

DEFAULT_SEGMENT = 1 << 22
DEFAULT_MAX_X = 10**9
K_CAP = 64  # histogram slots; nu(n) <= 15 for n <= 10^10


@dataclass(frozen=True)
class NuHistogram:
    """Exact counts N_k(x, y) for k = 0 .. max k present."""

    x: int
    y: int
    counts: dict[int, int]

    def __post_init__(self):
        top = max((k for k, c in self.counts.items() if c), default=0)
        norm = {k: int(self.counts.get(k, 0)) for k in range(top + 1)}
        object.__setattr__(self, "counts", norm)

    def __getitem__(self, k: int) -> int:
        return self.counts.get(k, 0)

    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class FriableStats:
    x: int
    y: int
    psi: int
    u_r_values: dict[float, float]
    # nu(m) histogram restricted to y-friable m <= x; U_r is its generating polynomial
    friable_counts: dict[int, int] = field(default_factory=dict)

    def u_r(self, r: float) -> float:
        return _poly_sum(self.friable_counts, r)


def _poly_sum(counts: dict[int, int], z):
    if float(z).is_integer():
        zi = int(z)
        return sum(c * zi**k for k, c in counts.items())
    return math.fsum(c * float(z) ** k for k, c in counts.items())


# -- segment kernels ----------------------------------------------------------

_PRIMES: np.ndarray | None = None


def _init_worker(primes: np.ndarray) -> None:
    global _PRIMES
    _PRIMES = primes


def _scatter_index(lo: int, hi: int, ps: np.ndarray):
    """Offsets (n - lo) of every multiple n in [lo, hi] of every p in ps,
    plus the prime responsible for each offset."""
    first = (lo + ps - 1) // ps * ps
    cnt = np.maximum((hi - first) // ps + 1, 0)
    keep = cnt > 0
    first, cnt, ps = first[keep], cnt[keep], ps[keep]
    total = int(cnt.sum())
    start = np.repeat(np.cumsum(cnt) - cnt, cnt)
    step = np.arange(total, dtype=np.int64) - start
    owner = np.repeat(ps, cnt)
    return np.repeat(first - lo, cnt) + owner * step, owner


def _segment_arrays(lo: int, hi: int, y: int, friable: bool, primes: np.ndarray):
    """Per-integer nu(n, y) over n in [lo, hi] and, with ``friable``, the
    y-friable mask."""
    size = hi - lo + 1
    nu = np.zeros(size, dtype=np.uint8)
    logs = np.zeros(size) if friable else None
    ps = primes[: np.searchsorted(primes, min(y, hi), side="right")]
    # strided slices cost ~1us per call, scattering ~15ns per hit
    cut = max(size // 128, math.isqrt(hi) if friable else 0)
    small = ps[ps <= cut]
    for p in small.tolist():
        off = (-lo) % p
        nu[off::p] += 1
        if friable:
            lp = math.log(p)
            pe = p
            while pe <= hi:
                logs[(-lo) % pe :: pe] += lp
                pe *= p
    large = ps[ps > cut]
    if len(large):
        idx, owner = _scatter_index(lo, hi, large)
        nu += np.bincount(idx, minlength=size).astype(np.uint8)
        if friable:
            logs += np.bincount(idx, weights=np.log(owner), minlength=size)
    if not friable:
        return nu, None
    n = np.arange(lo, hi + 1, dtype=np.float64)
    # a non-friable n has a cofactor > y >= 2 missing from logs
    return nu, np.abs(logs - np.log(n)) < 0.5


def _segment(lo: int, hi: int, y: int, friable: bool, primes: np.ndarray | None = None):
    """Histogram of nu(n, y) over n in [lo, hi]; with ``friable``, the same
    histogram restricted to y-friable n."""
    nu, smooth = _segment_arrays(lo, hi, y, friable, _PRIMES if primes is None else primes)
    return np.bincount(nu if smooth is None else nu[smooth], minlength=K_CAP)


def _segment_task(args):
    return _segment(*args)


def nu_values(lo: int, hi: int, y: int) -> np.ndarray:
    """nu(n, y) for each n in [lo, hi], as a uint8 array (the sieve kernel itself)."""
    if lo < 1 or hi < lo:
        raise DomainError(f"bad range [{lo}, {hi}]")
    if y < 2:
        return np.zeros(hi - lo + 1, dtype=np.uint8)
    primes = primes_up_to(max(2, min(y, hi))).primes
    out = [_segment_arrays(a, min(a + DEFAULT_SEGMENT - 1, hi), y, False, primes)[0]
           for a in range(lo, hi + 1, DEFAULT_SEGMENT)]
    return np.concatenate(out)


# -- drivers ------------------------------------------------------------------


def _check(x: int, y: int, max_x: int) -> None:
    if y < 2:
        raise DomainError(f"y must be >= 2, got {y}")
    if x < 1:
        raise DomainError(f"x must be >= 1, got {x}")
    if x > max_x:
        raise BudgetError(
            f"x={x} exceeds the sieve budget {max_x}; shrink x or raise max_x")
    if min(x, y) > MAX_PRIME_LIMIT:
        raise BudgetError(f"prime table for y={y} exceeds cap {MAX_PRIME_LIMIT}")


def default_workers() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


def _run(x: int, y: int, friable: bool, workers: int | None, segment_size: int) -> np.ndarray:
    ymax = int(min(y, x))
    primes = primes_up_to(max(2, ymax)).primes
    tasks = [(lo, min(lo + segment_size - 1, x), ymax, friable)
             for lo in range(1, x + 1, segment_size)]
    workers = default_workers() if workers is None else max(1, int(workers))
    total = np.zeros(K_CAP, dtype=np.int64)
    if workers == 1 or len(tasks) == 1:
        for t in tasks:
            total += _segment(*t, primes=primes)
        return total
    ctx = mp.get_context("fork")
    with ProcessPoolExecutor(workers, mp_context=ctx, initializer=_init_worker,
                             initargs=(primes,)) as pool:
        for part in pool.map(_segment_task, tasks):
            total += part
    return total


def nu_histogram(x: int, y: int, *, workers: int | None = None,
                 segment_size: int = DEFAULT_SEGMENT, max_x: int = DEFAULT_MAX_X) -> NuHistogram:
    """Exact N_k(x, y) = #{n <= x : nu(n, y) = k} for all k."""
    x, y = int(x), int(y)
    _check(x, y, max_x)
    hist = _run(x, y, False, workers, segment_size)
    return NuHistogram(x, y, {k: int(c) for k, c in enumerate(hist) if c})


def friable_stats(x: int, y: int, r_list=(), *, workers: int | None = None,
                  segment_size: int = DEFAULT_SEGMENT, max_x: int = DEFAULT_MAX_X) -> FriableStats:
    """Psi(x, y) and U_r(x, y) = sum over y-friable m <= x of r^nu(m)."""
    x, y = int(x), int(y)
    _check(x, y, max_x)
    if y > x:
        raise DomainError(f"friable_stats needs y <= x, got y={y} > x={x}")
    hist = _run(x, y, True, workers, segment_size)
    counts = {k: int(c) for k, c in enumerate(hist) if c}
    for r in r_list:
        if r < 0:
            raise DomainError(f"r must be >= 0, got {r}")
    values = {float(r): _poly_sum(counts, r) for r in r_list}
    return FriableStats(x, y, sum(counts.values()), values, counts)
