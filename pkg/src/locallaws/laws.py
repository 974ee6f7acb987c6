"""Main terms of the local laws for N_k(x, y), and regime classification.

Every main term is assembled as a logarithm and exponentiated once, with
k! taken from ``lgamma``; the quantities x (log log y)^k / k! span hundreds
of orders of magnitude over the supported grid.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from dataclasses import dataclass, field

from .errors import DomainError
from .euler import EULER_GAMMA, big_F, shifted_mertens, zeta1
from .specfun import buchstab_omega, log_rho_r, sigma_r

MIN_Y = 16
R_CAP = 4.0

# stand-ins for implicit constants of the asymptotic ranges; arbitrary but fixed
DEFAULT_C_SMALL = 0.5
DEFAULT_KAPPA = 0.25
DEFAULT_EPS = 0.1


def loglog(t: float) -> float:
    return math.log(math.log(t))


@dataclass(frozen=True)
class LawParams:
    x: float
    y: float
    k: int

    def __post_init__(self):
        if not self.x >= 3:
            raise DomainError(f"x must be >= 3, got {self.x}")
        if not 3 <= self.y <= self.x:
            raise DomainError(f"need 3 <= y <= x, got y={self.y}, x={self.x}")
        if int(self.k) != self.k or self.k < 0:
            raise DomainError(f"k must be a non-negative integer, got {self.k}")
        object.__setattr__(self, "k", int(self.k))

    @property
    def log_x(self) -> float:
        return math.log(self.x)

    @property
    def log_y(self) -> float:
        return math.log(self.y)

    @property
    def loglog_y(self) -> float:
        return loglog(self.y)

    @property
    def u(self) -> float:
        return self.log_x / self.log_y

    @property
    def r(self) -> float:
        return self.k / self.loglog_y

    @property
    def w(self) -> float:
        return self.log_x / math.log(3 * self.x / self.y)


def _need_y16(p: LawParams) -> None:
    if p.y < MIN_Y:
        raise DomainError(f"law needs y >= {MIN_Y} (log log y >= 1), got y={p.y}")


def _log_F(r: float) -> float:
    return math.log(big_F(r).value)


def _local_shape(p: LawParams, j: int) -> float:
    """log of (log log y)^j / j!"""
    return j * math.log(p.loglog_y) - math.lgamma(j + 1)


def predict_thm11(p: LawParams) -> float:
    """F(r) e^{gamma(r-1)} x (log log y)^k / (k! log y)."""
    _need_y16(p)
    r = p.r
    return math.exp(_log_F(r) + EULER_GAMMA * (r - 1) + p.log_x + _local_shape(p, p.k) - math.log(p.log_y))


def et21_parameters(p: LawParams) -> tuple[float, float, float]:
    """(L, M, varrho) of the refined small-y predictor."""
    k = p.k
    if k + 1 >= p.y:
        raise DomainError(f"L <= 0: k + 1 = {k + 1} >= y = {p.y}")
    L = math.inf if k == 0 else math.log(p.log_y / math.log(k + 1))
    ratio = k / L
    log_plus = math.log(ratio) if ratio > 1 else 0.0
    M = p.loglog_y - math.log1p(log_plus)
    if M <= 0:
        raise DomainError(f"M = {M} <= 0 for k={k}, y={p.y}")
    return L, M, k / M


def predict_et21(p: LawParams) -> float:
    """x prod_{p<=y}(1 + (varrho-1)/p) M^k / (k! e^k)."""
    _need_y16(p)
    _, M, rho = et21_parameters(p)
    k = p.k
    log_val = p.log_x + math.log(shifted_mertens(p.y, rho - 1.0)) + k * math.log(M) - math.lgamma(k + 1) - k
    return math.exp(log_val)


def _check_r(r: float) -> None:
    if not r > 0:
        raise DomainError(f"r must be > 0, got {r}")


def predict_sr17(p: LawParams, r_override: float | None = None) -> float:
    """F(r) sigma_r(u) x (log y)^{r-1}: the prediction for S_r(x, y)."""
    r = p.r if r_override is None else float(r_override)
    _check_r(r)
    return math.exp(_log_F(r) + math.log(sigma_r(r, p.u)) + p.log_x + (r - 1) * math.log(p.log_y))


def predict_thm13(p: LawParams) -> float:
    """F(r) sigma_r(u) x (log log y)^k / (k! log y)."""
    _need_y16(p)
    if p.k < 1:
        raise DomainError("thm13 needs k >= 1")
    r = p.r
    return math.exp(_log_F(r) + math.log(sigma_r(r, p.u)) + p.log_x + _local_shape(p, p.k) - math.log(p.log_y))


def bridge15(p: LawParams, s_r_exact: float) -> float:
    """S_r(x, y) (log log y)^k / (k! e^k) with S_r taken from exact counts."""
    if p.k < 1:
        raise DomainError("bridge15 needs k >= 1")
    if s_r_exact < 0:
        raise DomainError(f"S_r must be >= 0, got {s_r_exact}")
    if s_r_exact == 0:
        return 0.0
    return math.exp(math.log(s_r_exact) + _local_shape(p, p.k) - p.k)


def envelope19_terms(p: LawParams) -> tuple[float, float]:
    """The two terms of the large-y envelope: the shifted (k-1) law and the small-y law evaluated at 3x/y."""
    _need_y16(p)
    if p.k < 1:
        raise DomainError("envelope19 needs k >= 1; N_0 is Phi(x, y)")
    k = p.k
    log_base = p.log_x - math.log(p.log_y)
    first = math.exp(log_base + _local_shape(p, k - 1))
    second = math.exp(log_base + k * math.log(loglog(3 * p.x / p.y)) - math.lgamma(k + 1))
    return first, second


def envelope19(p: LawParams) -> float:
    first, second = envelope19_terms(p)
    return first + second


def predict_ur42(p: LawParams, r: float) -> float:
    """F(r) rho_r(u) x (log y)^{r-1}: the prediction for U_r(x, y)."""
    _check_r(r)
    return math.exp(_log_F(r) + log_rho_r(r, p.u) + p.log_x + (r - 1) * math.log(p.log_y))


def predict_phi43(p: LawParams) -> float:
    """e^gamma (x omega(u) - y) / zeta(1, y): the prediction for Phi(x, y) = N_0(x, y)."""
    u = p.u
    if not u > 1:
        raise DomainError(f"phi43 needs u > 1, got u={u}")
    return math.exp(EULER_GAMMA) * (p.x * buchstab_omega(u) - p.y) / zeta1(p.y)


# -- regimes ------------------------------------------------------------------


class Regime(enum.Enum):
    SMALL_Y = "SMALL_Y"
    H_EPS = "H_EPS"
    LARGE_Y_LAW11 = "LARGE_Y_LAW11"
    LARGE_Y_LAW110 = "LARGE_Y_LAW110"
    TRANSITION = "TRANSITION"
    RANGE_A = "RANGE_A"
    OUT_OF_STATED_RANGE = "OUT_OF_STATED_RANGE"


def classify_regime(p: LawParams, c_small: float = DEFAULT_C_SMALL, kappa: float = DEFAULT_KAPPA,
                    eps: float = DEFAULT_EPS) -> list[Regime]:
    """All regimes containing (x, y, k), most specific first.

    Unspecified implicit constants are replaced by ``c_small`` (the small-y
    bound and the 1 - c margin of RANGE_A), ``kappa`` (the bound
    k <= log log y / kappa) and ``eps`` (H_eps); the "<<" in the large-y
    k-range is taken with constant 1.
    """
    if not 0 < c_small < 1:
        raise DomainError(f"c_small must lie in (0, 1), got {c_small}")
    if not kappa > 0:
        raise DomainError(f"kappa must be > 0, got {kappa}")
    lx, ly, k = p.log_x, p.log_y, p.k
    l2x = math.log(lx)
    l2y = math.log(ly)
    k_ok = k <= l2y / kappa
    tags = []
    if l2x > 1 and ly <= c_small * math.log(l2x) / l2x * lx:
        tags.append(Regime.SMALL_Y)
    if l2x ** (5.0 / 3.0 + eps) <= ly <= lx / 2:
        tags.append(Regime.H_EPS)
    large = ly > lx / 2
    if large and 1 <= k and k_ok:
        w = p.w
        law11 = law110 = False
        if w >= 3:
            lw = math.log(w)
            law11 = k <= l2y / lw
            law110 = k >= 1 + l2y * math.log(lw) / lw
        if law11:
            tags.append(Regime.LARGE_Y_LAW11)
        if law110:
            tags.append(Regime.LARGE_Y_LAW110)
        if not (law11 or law110):
            tags.append(Regime.TRANSITION)
    if ly <= (1 - c_small) * lx and k_ok:
        tags.append(Regime.RANGE_A)
    if not tags:
        tags.append(Regime.OUT_OF_STATED_RANGE)
    return tags


# -- records ------------------------------------------------------------------

LAW_IDS = ("bridge15", "envelope19", "et21", "phi43", "thm11", "thm13", "u_r42")


@dataclass
class PredictionRecord:
    law: str
    params: LawParams
    predicted: float | None
    exact: int | float | None = None
    ratio: float | None = None
    flags: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        # law "" marks an exact-count-only row
        if self.law and self.law not in LAW_IDS:
            raise ValueError(f"unknown law {self.law!r}")
        if self.exact is not None and self.predicted and self.ratio is None:
            self.ratio = float(Fraction(self.exact) / Fraction(self.predicted))
        if self.params.y >= math.e and self.params.r > R_CAP and "OUT_OF_STATED_RANGE" not in self.flags:
            self.flags = self.flags + ("OUT_OF_STATED_RANGE",)
