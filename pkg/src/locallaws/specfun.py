"""Dickman rho, Buchstab omega, fractional Dickman powers rho_r and sigma_r.

The delay equations are integrated one unit interval at a time.  On
[j, j+1] (j >= 1) the fractional power is stored as

    rho_r(u) = exp(c_j) * (A_j(u) + (u - j)**r * B_j(u))

with A_j, B_j Chebyshev interpolants.  The factor (u - j)**r carries the
algebraic singularity that the u**(r-1) start on [0, 1] propagates to
every integer; A_j and B_j themselves are analytic, so fixed-degree
interpolation is spectrally accurate.  c_j is a running log scale that
keeps the stored coefficients O(1) however far u goes.

Integrals against these functions (Laplace moments, sigma_r, convolutions)
are split at every singular point and the algebraic factors are handed to
QUADPACK's weighted rule (``quad(..., weight='alg')``).
"""

from __future__ import annotations

import math
import threading
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from numpy.polynomial import Chebyshev
from numpy.polynomial import chebyshev as cheb
from scipy import integrate, special

from .errors import DomainError
from .euler import EULER_GAMMA

DEFAULT_DEGREE = 32
DEFAULT_U_MAX = 50.0
_JACOBI_NODES = 48

_QUAD = dict(epsabs=0.0, epsrel=1e-12, limit=200)


@dataclass
class _Piece:
    j: int
    # (exponent, smooth factor): the piece equals exp(log_scale) * sum (u-j)**e * g(u)
    terms: list[tuple[float, Callable[[float], float]]]
    log_scale: float = 0.0

    def value(self, u):
        out = 0.0
        for e, g in self.terms:
            out = out + (g(u) if e == 0 else (u - self.j) ** e * g(u))
        return out


@dataclass
class PiecewiseSolution:
    """rho, omega or rho_r on [start, u_max], one piece per unit interval."""

    kind: str  # "rho" | "omega" | "rho_r"
    r: float | None
    degree: int = DEFAULT_DEGREE
    u_max: float = 0.0
    pieces: list[_Piece] = field(default_factory=list)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def start(self) -> int:
        return 1 if self.kind == "omega" else 0

    @property
    def log_scale(self) -> bool:
        return any(p.log_scale != 0.0 for p in self.pieces)

    def ensure(self, u_max: float) -> None:
        if u_max <= self.u_max:
            return
        with self._lock:
            while self.start + len(self.pieces) < u_max:
                self.pieces.append(self._next_piece())
            self.u_max = float(self.start + len(self.pieces))

    def piece(self, j: int) -> _Piece:
        self.ensure(j + 1)
        return self.pieces[j - self.start]

    def _locate(self, u: float) -> _Piece:
        j = min(int(math.floor(u)), max(self.start, int(math.ceil(u)) - 1))
        return self.piece(j)

    def __call__(self, u):
        if np.ndim(u):
            return np.array([self(float(v)) for v in np.ravel(u)]).reshape(np.shape(u))
        u = float(u)
        if u < self.start:
            if self.kind == "omega":
                raise DomainError(f"omega is defined for u >= 1, got {u}")
            return 0.0
        if u == 0.0:
            return _rho_r_at_zero(self.r)
        p = self._locate(u)
        return math.exp(p.log_scale) * p.value(u)

    def log(self, u: float) -> float:
        """Natural log of the value; finite far beyond the double underflow point."""
        u = float(u)
        if u <= 0 and self.kind != "omega":
            return -math.inf if u < 0 else math.log(_rho_r_at_zero(self.r))
        p = self._locate(u)
        return p.log_scale + math.log(p.value(u))

    # -- construction ------------------------------------------------------

    def _next_piece(self) -> _Piece:
        j = self.start + len(self.pieces)
        if self.kind == "omega":
            return _omega_piece(j, self.pieces[-1] if self.pieces else None, self.degree)
        r = self.r
        if j == 0:
            # u^(r-1)/Gamma(r): no analytic part, constant singular factor
            zero = Chebyshev([0.0], domain=[0, 1])
            const = Chebyshev([1.0 / special.gamma(r)], domain=[0, 1])
            return _Piece(0, [(0.0, zero), (r - 1.0, const)])
        return _rho_r_piece(r, j, self.pieces[-1], self.degree)


def _rho_r_at_zero(r: float) -> float:
    if r == 1:
        return 1.0
    return math.inf if r < 1 else 0.0


def _cheb(func, j: int, degree: int) -> Chebyshev:
    return Chebyshev.interpolate(func, degree, domain=[j, j + 1])


@lru_cache(maxsize=None)
def _reference(degree: int):
    """Collocation data on [0, 1]: nodes, values->coefficients, running integral."""
    x = np.cos(np.pi * (np.arange(degree + 1) + 0.5) / (degree + 1))[::-1]
    s = (x + 1.0) / 2.0
    to_coef = np.linalg.inv(cheb.chebvander(x, degree))
    integ = np.empty((degree + 1, degree + 1))
    for k in range(degree + 1):
        c = cheb.chebint(to_coef[:, k], lbnd=-1, scl=0.5)
        integ[:, k] = cheb.chebval(x, c)
    return s, to_coef, integ


@lru_cache(maxsize=None)
def _jacobi(e: float):
    # Gauss-Jacobi rule for int_0^1 tau^e h(tau) dtau
    x, w = special.roots_jacobi(_JACOBI_NODES, 0.0, e)
    return (x + 1.0) / 2.0, w / 2.0 ** (e + 1.0)


def _rho_r_piece(r: float, j: int, prev: _Piece, degree: int) -> _Piece:
    """Collocate u f(u) = r int_{u-1}^u f on [j, j+1], in units of exp(prev.log_scale).

    With f = A + (u-j)^e B on [j, j+1] (e = r + j - 1) and the previous piece
    A_p + (t-j+1)^(e-1) B_p, the analytic and singular parts separate into
        u A(u) - r int_j^u A = r (int_{u-1}^j A_p + int_{j-1}^j (t-j+1)^(e-1) B_p)
        u B(u) - r s int_0^1 tau^e B(j + tau s) = -r int_0^1 tau^(e-1) B_p(j-1 + tau s)
    with s = u - j.  Both are second-kind Volterra equations; unlike the
    differential form, no free constant can drift into a slowly decaying mode.
    """
    s, to_coef, integ = _reference(degree)
    u = j + s
    e = r + j - 1.0
    (_, Ap), (e_prev, Bp) = prev.terms
    tau_p, w_p = _jacobi(e_prev)
    tau, w = _jacobi(e)

    IAp = Ap.integ()
    c_b = float(w_p @ Bp(j - 1.0 + tau_p))
    rhs_a = r * (IAp(j) - IAp(u - 1.0) + c_b)
    rhs_b = -r * (Bp(j - 1.0 + np.outer(s, tau_p)) @ w_p)

    interp = cheb.chebvander(2.0 * np.outer(s, tau) - 1.0, degree) @ to_coef  # (n, q, n)
    m = np.einsum("q,iqk->ik", w, interp)
    a_vals = np.linalg.solve(np.diag(u) - r * integ, rhs_a)
    b_vals = np.linalg.solve(np.diag(u) - r * s[:, None] * m, rhs_b)

    scale = float(np.max(np.abs(a_vals) + np.abs(b_vals)))
    A = Chebyshev(to_coef @ (a_vals / scale), domain=[j, j + 1])
    B = Chebyshev(to_coef @ (b_vals / scale), domain=[j, j + 1])
    return _Piece(j, [(0.0, A), (e, B)], prev.log_scale + math.log(scale))


def _omega_piece(j: int, prev: _Piece | None, degree: int) -> _Piece:
    if prev is None:
        return _Piece(1, [(0.0, _cheb(lambda u: 1.0 / u, 1, degree))])
    W = prev.terms[0][1]
    I = _cheb(lambda t: W(t - 1.0), j, degree).integ(lbnd=j)
    w_j = W(j)
    return _Piece(j, [(0.0, _cheb(lambda u: (j * w_j + I(u)) / u, j, degree))])


# -- cached solutions --------------------------------------------------------


@lru_cache(maxsize=64)
def rho_r_solution(r: float) -> PiecewiseSolution:
    """Shared solution for rho_r, built to DEFAULT_U_MAX and extended on demand."""
    if not r > 0:
        raise DomainError(f"rho_r needs r > 0, got {r}")
    sol = PiecewiseSolution("rho" if r == 1 else "rho_r", float(r))
    sol.ensure(DEFAULT_U_MAX)
    return sol


def dickman_solution() -> PiecewiseSolution:
    return rho_r_solution(1.0)


@lru_cache(maxsize=1)
def buchstab_solution() -> PiecewiseSolution:
    sol = PiecewiseSolution("omega", None)
    sol.ensure(DEFAULT_U_MAX)
    return sol


def dickman_rho(u):
    """Dickman's function: 1 on [0, 1], u rho'(u) = -rho(u - 1) beyond, 0 for u < 0."""
    return dickman_solution()(u)


def log_dickman_rho(u: float) -> float:
    return dickman_solution().log(u)


def buchstab_omega(u):
    """Buchstab's function: 1/u on [1, 2], (u omega(u))' = omega(u - 1) beyond."""
    if np.any(np.asarray(u) < 1):
        raise DomainError(f"omega is defined for u >= 1, got {u}")
    return buchstab_solution()(u)


def rho_r(r: float, u):
    """r-th convolution power of rho: u^(r-1)/Gamma(r) on (0, 1], then
    u f'(u) = (r - 1) f(u) - r f(u - 1)."""
    if not r > 0:
        raise DomainError(f"rho_r needs r > 0, got {r}")
    return rho_r_solution(float(r))(u)


def log_rho_r(r: float, u: float) -> float:
    if not r > 0:
        raise DomainError(f"rho_r needs r > 0, got {r}")
    return rho_r_solution(float(r)).log(u)


# -- quadrature against piecewise solutions -----------------------------------


def _piece_terms(sol: PiecewiseSolution, j: int):
    p = sol.piece(j)
    c = math.exp(p.log_scale)
    return p.j, [(e, g, c) for e, g in p.terms if np.any(g.coef)]


def _product_integral(f: PiecewiseSolution, lo: float, hi: float, left_sing: bool,
                      g: PiecewiseSolution | None = None, u: float = 0.0, right_sing: bool = False,
                      kernel: Callable[[float], float] | None = None) -> float:
    """int_lo^hi f(t) * G(t) dt inside one piece of f and (if given) one piece of g,
    with G(t) = g(u - t) or kernel(t)."""
    mid = 0.5 * (lo + hi)
    jf, fterms = _piece_terms(f, int(math.floor(mid)))
    if g is not None:
        jg, gterms = _piece_terms(g, int(math.floor(u - mid)))
    else:
        jg, gterms = 0, [(0.0, kernel if kernel is not None else (lambda t: 1.0), 1.0)]
    total = 0.0
    for a, fa, ca in fterms:
        wa = a if (left_sing and a != 0) else 0.0
        for b, gb, cb in gterms:
            wb = b if (right_sing and b != 0) else 0.0
            if g is not None:
                def G(t, gb=gb, b=b, wb=wb):
                    x = u - t
                    return gb(x) if (b == 0 or wb) else (x - jg) ** b * gb(x)
            else:
                G = gb

            def F(t, fa=fa, a=a, wa=wa, G=G):
                fv = fa(t) if (a == 0 or wa) else (t - jf) ** a * fa(t)
                return fv * G(t)

            with warnings.catch_warnings():
                # roundoff notices at epsrel=1e-12 are expected on tiny integrands
                warnings.simplefilter("ignore", integrate.IntegrationWarning)
                if wa or wb:
                    val, _ = integrate.quad(F, lo, hi, weight="alg", wvar=(wa, wb), **_QUAD)
                else:
                    val, _ = integrate.quad(F, lo, hi, **_QUAD)
            total += ca * cb * val
    return total


def laplace_moment(fn: PiecewiseSolution, s: float, u_cut: float) -> float:
    """int_0^u_cut exp(-s t) fn(t) dt (from u = 1 for omega)."""
    if s < 0:
        raise DomainError(f"s must be >= 0, got {s}")
    if u_cut > fn.u_max:
        raise DomainError(f"u_cut={u_cut} beyond u_max={fn.u_max}")
    kernel = (lambda t: math.exp(-s * t)) if s else (lambda t: 1.0)
    total = 0.0
    j = fn.start
    while j < u_cut:
        total += _product_integral(fn, j, min(j + 1.0, u_cut), True, kernel=kernel)
        j += 1
    return total


def _breakpoints(lo: float, hi: float, u: float):
    """Sorted split points of [lo, hi]: integers (singular for f) and u - integers
    (singular for g(u - t)).  Each carries (is_f_point, is_g_point)."""
    pts: dict[float, list[bool]] = {lo: [False, False], hi: [False, False]}
    for j in range(int(math.ceil(lo)), int(math.floor(hi)) + 1):
        pts.setdefault(float(j), [False, False])[0] = True
    for j in range(int(math.ceil(u - hi)), int(math.floor(u - lo)) + 1):
        t = u - j
        # snap onto an existing point to avoid sliver intervals
        near = [q for q in pts if abs(q - t) < 1e-12]
        pts.setdefault(near[0] if near else t, [False, False])[1] = True
    return sorted(pts.items())


def _convolve(f: PiecewiseSolution, g: PiecewiseSolution, u: float, lo: float, hi: float) -> float:
    pts = _breakpoints(lo, hi, u)
    total = 0.0
    for (a, (fa, _)), (b, (_, gb)) in zip(pts, pts[1:]):
        if b - a <= 0:
            continue
        total += _product_integral(f, a, b, fa, g=g, u=u, right_sing=gb)
    return total


def convolution(f: PiecewiseSolution, g: PiecewiseSolution, u: float) -> float:
    """(f * g)(u) = int_0^u f(t) g(u - t) dt by adaptive quadrature."""
    if u <= 0:
        return 0.0
    f.ensure(u + 1)
    g.ensure(u + 1)
    return _convolve(f, g, u, 0.0, u)


@lru_cache(maxsize=4096)
def sigma_r(r: float, u: float) -> float:
    """int_0^{u-1} omega(u - t) rho_r(t) dt + rho_r(u)."""
    if not r > 0:
        raise DomainError(f"sigma_r needs r > 0, got {r}")
    if u < 1:
        raise DomainError(f"sigma_r needs u >= 1, got {u}")
    f = rho_r_solution(float(r))
    f.ensure(u + 1)
    om = buchstab_solution()
    om.ensure(u + 1)
    tail = f(u)
    if u == 1:
        return tail
    return _convolve(f, om, u, 0.0, u - 1.0) + tail


def omega_limit() -> float:
    return math.exp(-EULER_GAMMA)
