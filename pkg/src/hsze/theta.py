"""Jacobi theta function and the generating functions built from it.

Conventions
-----------
``theta(z; tau) = -i sum_n exp(pi i (n+1/2)^2 tau + 2 pi i (n+1/2) z + pi i n)``
is the odd theta function with simple zeros on Z + tau Z.  From it:

* ``gen_E``  -- Kronecker's function, Laurent coefficients are the Hurwitz functions
* ``gen_F``  -- (2 pi i/w2) e^{2 pi i xi z/w2} / (e^{2 pi i xi/w2} - 1)
* ``gen_D``  -- gen_E * gen_F^r
* ``gen_K``  -- gen_D minus its principal part at 0 resolved against gen_F

Taylor/Laurent coefficients are extracted with the trapezoidal rule on a
circle (``laurent_coeffs``), which converges geometrically for functions that
are analytic in an annulus around the circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from mpmath import mp, mpc, mpf

from .bernoulli import frac_int_parts
from .errors import (
    InadmissibleParameters,
    NonconvergentTau,
    PoleHit,
    QuadratureNonconvergence,
)
from .expoly import eval_log_derivative
from .precision import PrecisionConfig, make_constants, resolve, to_mpf

__all__ = [
    "LatticeBasis",
    "TwistParams",
    "LaurentExpansion",
    "theta",
    "gen_E",
    "gen_F",
    "gen_D",
    "gen_K",
    "laurent_coeffs",
    "hurwitz_function",
    "hurwitz_number",
    "K_coeff",
    "D_coeffs",
]


@dataclass(frozen=True)
class LatticeBasis:
    """Periods (omega1, omega2) with Im(omega2/omega1) > 0.

    ``tag`` is ``"i"`` or ``"rho"`` for the two lattices that have exact
    closed forms, otherwise ``None``.
    """

    omega1: mpc
    omega2: mpc
    tag: str | None = None

    def __post_init__(self):
        if self.omega1 == 0 or self.omega2 == 0:
            raise NonconvergentTau("periods must be non-zero")
        if (self.omega2 / self.omega1).imag <= 0:
            raise NonconvergentTau("Im(omega2/omega1) must be positive")

    @property
    def tau(self) -> mpc:
        # keep the precision of the stored periods even outside cfg.active()
        bits = max(
            [mp.prec] + [p._mpf_[3] + 16 for w in (self.omega1, self.omega2) for p in (w.real, w.imag)]
        )
        with mp.workprec(bits):
            return self.omega2 / self.omega1

    @classmethod
    def square(cls, cfg: PrecisionConfig | None = None) -> "LatticeBasis":
        return cls(mpc(1), mpc(0, 1), "i")

    @classmethod
    def hexagonal(cls, cfg: PrecisionConfig | None = None) -> "LatticeBasis":
        return cls(mpc(1), make_constants(resolve(cfg)).rho, "rho")

    @classmethod
    def from_tau(cls, tau, tag: str | None = None) -> "LatticeBasis":
        return cls(mpc(1), mpc(tau), tag)

    def min_distance(self) -> mpf:
        """Shortest non-zero vector of omega1 Z + omega2 Z (small search box)."""
        best = None
        for m in range(-6, 7):
            for n in range(-6, 7):
                if m or n:
                    d = abs(m * self.omega1 + n * self.omega2)
                    if best is None or d < best:
                        best = d
        return best

    def default_radius(self) -> mpf:
        return self.min_distance() / 4


@dataclass(frozen=True)
class TwistParams:
    x: Fraction = Fraction(0)
    y: Fraction = Fraction(0)
    z: Fraction = Fraction(1, 2)

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not (-1 < self.x < 1 and -1 < self.y < 1):
            raise InadmissibleParameters("x and y must lie in (-1, 1)")
        if not 0 <= self.z <= 1:
            raise InadmissibleParameters("z must lie in [0, 1]")

    @property
    def untwisted(self) -> bool:
        return self.x == 0 and self.y == 0

    @property
    def z_endpoint(self) -> bool:
        return self.z in (0, 1)

    def shift(self, r: int) -> Fraction:
        """{y + r z}."""
        return frac_int_parts(self.y + r * self.z)[1]

    def shift_integral(self, r: int) -> bool:
        return (self.y + r * self.z).denominator == 1


@dataclass(frozen=True)
class LaurentExpansion:
    base_order: int
    coefficients: tuple
    radius: mpf
    nodes: int = 0

    def coeff(self, j: int):
        """Coefficient of xi^j."""
        idx = j - self.base_order
        if idx < 0:
            return mpc(0)
        return self.coefficients[idx]


# -- theta ------------------------------------------------------------------


def _theta(z: mpc, tau: mpc, deriv: int) -> mpc:
    a = tau.imag
    centre = -z.imag / a
    n0 = int(mp.nint(centre - mpf(1) / 2))
    eps = mpf(2) ** (-(mp.prec + 8))
    pi = mp.pi
    two_pi_i = 2j * pi
    half = mpf(1) / 2
    # term(n) = exp(pi i ((n+1/2)^2 tau + 2 (n+1/2) z + n)); neighbouring terms
    # differ by -e^{+-2 pi i z} e^{2 pi i tau m}, which is updated multiplicatively
    A = mp.exp(two_pi_i * tau)
    first = mp.exp(1j * pi * ((n0 + half) ** 2 * tau + 2 * (n0 + half) * z + n0))

    def weight(n):
        return (two_pi_i * (n + half)) ** deriv if deriv else 1

    total = first * weight(n0)
    peak = abs(total)
    starts = (
        (1, -mp.exp(two_pi_i * (z + tau * (n0 + 1)))),
        (-1, -mp.exp(-two_pi_i * (z + tau * n0))),
    )
    for step, ratio in starts:
        t = first
        n = n0
        small = 0
        while small < 2:
            t *= ratio
            ratio *= A
            n += step
            wt = t * weight(n)
            total += wt
            at = abs(wt)
            if at > peak:
                peak = at
            small = small + 1 if at <= eps * peak else 0
    return -1j * total


def theta(z, tau, deriv: int = 0, cfg: PrecisionConfig | None = None) -> mpc:
    """theta(z; tau) or its ``deriv``-th derivative in z (0 <= deriv <= 3)."""
    if deriv not in (0, 1, 2, 3):
        raise ValueError("deriv must be 0..3")
    cfg = resolve(cfg)
    with cfg.active():
        tau = mpc(tau)
        if tau.imag <= 0:
            raise NonconvergentTau(f"Im(tau) must be positive, got {tau}")
        return _theta(mpc(z), tau, deriv)


@lru_cache(maxsize=256)
def _theta_data(tau: mpc, x: Fraction, y: Fraction, prec: int):
    with mp.workprec(prec):
        d1 = _theta(mpc(0), tau, 1)
        d3 = _theta(mpc(0), tau, 3)
        if x == 0 and y == 0:
            return d1, d3, None
        w = to_mpf(x) * tau - to_mpf(y)
        return d1, d3, tuple(_theta(w, tau, d) for d in range(3))


def _lattice_gap(u: mpc, tau: mpc) -> mpf:
    """Distance from u to Z + tau Z, measured in the (1, tau) cell."""
    b = u.imag / tau.imag
    a = u.real - b * tau.real
    return abs((a - mp.nint(a)) + (b - mp.nint(b)) * tau)


# -- generating functions -----------------------------------------------------


def gen_E(xi, x, y, basis: LatticeBasis, cfg: PrecisionConfig | None = None) -> mpc:
    cfg = resolve(cfg)
    x, y = Fraction(x), Fraction(y)
    with cfg.active():
        return _gen_E(mpc(xi), x, y, basis, cfg)


@lru_cache(maxsize=8192)
def _gen_E(xi, x, y, basis, cfg):
    # memoised: Laurent extractions of different products reuse the same nodes
    w1 = basis.omega1
    tau = basis.tau
    u = xi / w1
    if _lattice_gap(u, tau) < mpf(2) ** (-cfg.bits // 2):
        raise PoleHit(f"xi={xi} is a lattice point")
    d1, _, tw = _theta_data(tau, x, y, mp.prec)
    if tw is None:
        return _theta(u, tau, 1) / _theta(u, tau, 0) / w1 + 2j * mp.pi * xi / (w1 * basis.omega2)
    shift = to_mpf(x) * tau - to_mpf(y)
    return (
        mp.exp(2j * mp.pi * to_mpf(x) * u)
        / w1
        * d1
        * _theta(u + shift, tau, 0)
        / (_theta(u, tau, 0) * tw[0])
    )


def gen_F(xi, z, omega2, deriv: int = 0, cfg: PrecisionConfig | None = None) -> mpc:
    """deriv-th xi-derivative of (2 pi i/w2) e^{2 pi i xi z/w2}/(e^{2 pi i xi/w2} - 1)."""
    cfg = resolve(cfg)
    with cfg.active():
        return _gen_F(mpc(xi), Fraction(z), mpc(omega2), deriv, cfg)


def _gen_F(xi, z, omega2, deriv, cfg):
    s = xi / omega2
    if abs(s - mp.nint(s.real)) < mpf(2) ** (-cfg.bits // 2):
        raise PoleHit(f"xi={xi} lies on omega2*Z")
    k = 2j * mp.pi / omega2
    arg = 2j * mp.pi * s
    w = 1 / mp.expm1(arg)
    return k ** (deriv + 1) * mp.exp(arg * to_mpf(z)) * eval_log_derivative(z, deriv, w)


def gen_D(xi, r: int, params: TwistParams, basis: LatticeBasis, cfg: PrecisionConfig | None = None):
    cfg = resolve(cfg)
    with cfg.active():
        xi = mpc(xi)
        return _gen_E(xi, params.x, params.y, basis, cfg) * _gen_F(xi, params.z, basis.omega2, 0, cfg) ** r


# -- contour extraction -----------------------------------------------------


def laurent_coeffs(
    f: Callable,
    pole_order: int,
    count: int,
    radius=None,
    cfg: PrecisionConfig | None = None,
    start_nodes: int = 16,
    max_doublings: int = 12,
) -> LaurentExpansion:
    """Coefficients c_j, j = -pole_order .. count-pole_order-1, of f around 0.

    Trapezoidal rule for (1/2 pi i) \\oint f(xi) xi^{-j-1} dxi on |xi| = radius;
    the node count doubles (reusing old nodes) until two successive passes agree.
    """
    cfg = resolve(cfg)
    if count < 1:
        raise ValueError("count must be positive")
    with cfg.active():
        R = mpf(1) / 4 if radius is None else mpf(radius)
        span = count + pole_order
        N = start_nodes
        while N < 2 * span + 2:
            N *= 2
        samples: dict[Fraction, mpc] = {}
        tol = mpf(2) ** (-cfg.bits)

        def sample(N):
            for l in range(N):
                key = Fraction(l, N)
                if key not in samples:
                    samples[key] = mpc(f(R * mp.expjpi(2 * to_mpf(key))))
            return [samples[Fraction(l, N)] for l in range(N)]

        def extract(N):
            vals = sample(N)
            out = []
            for idx in range(count):
                j = idx - pole_order
                acc = mpc(0)
                for l, v in enumerate(vals):
                    acc += v * mp.expjpi(-2 * mpf(j * l % N) / N)
                out.append(acc / N)  # scaled coefficient c_j R^j
            return out, max(abs(v) for v in vals)

        prev, _ = extract(N)
        for _ in range(max_doublings):
            N *= 2
            cur, scale = extract(N)
            if max(abs(a - b) for a, b in zip(cur, prev)) <= tol * max(1, scale):
                coeffs = tuple(c / R ** (idx - pole_order) for idx, c in enumerate(cur))
                return LaurentExpansion(-pole_order, coeffs, R, N)
            prev = cur
        raise QuadratureNonconvergence(f"no agreement after {max_doublings} doublings (N={N})")


# -- Hurwitz functions ------------------------------------------------------


@lru_cache(maxsize=128)
def _E_expansion(basis: LatticeBasis, x: Fraction, y: Fraction, count: int, cfg: PrecisionConfig):
    with cfg.active():
        return laurent_coeffs(
            lambda t: _gen_E(t, x, y, basis, cfg), 1, count, basis.default_radius(), cfg
        )


def hurwitz_function(k: int, x, y, basis: LatticeBasis, cfg: PrecisionConfig | None = None) -> mpc:
    """k-th Hurwitz function: k! times the coefficient of xi^{k-1} in gen_E."""
    if k < 0:
        raise ValueError("k must be non-negative")
    cfg = resolve(cfg)
    x, y = Fraction(x), Fraction(y)
    with cfg.active():
        if k == 0:
            return mpc(1)
        w1, w2, tau = basis.omega1, basis.omega2, basis.tau
        d1, d3, tw = _theta_data(tau, x, y, mp.prec)
        pi = mp.pi
        if k == 1:
            if tw is None:
                return mpc(0)
            return (2j * pi * to_mpf(x) + tw[1] / tw[0]) / w1
        if k == 2:
            if tw is None:
                return (4j * pi * w1 / w2 + 2 * d3 / (3 * d1)) / w1**2
            tpx = 2j * pi * to_mpf(x)
            return (tpx**2 + 2 * tpx * tw[1] / tw[0] + tw[2] / tw[0] - d3 / (3 * d1)) / w1**2
        exp = _E_expansion(basis, x, y, max(k + 1, 10), cfg)
        return exp.coeff(k - 1) * math.factorial(k)


def hurwitz_number(k: int, basis: LatticeBasis, cfg: PrecisionConfig | None = None) -> mpc:
    if k < 2:
        raise ValueError("Hurwitz numbers are defined for k >= 2")
    return hurwitz_function(k, 0, 0, basis, cfg)


# -- the residue-corrected generating function -------------------------------


@lru_cache(maxsize=256)
def _D_expansion(r: int, params: TwistParams, basis: LatticeBasis, cfg: PrecisionConfig):
    with cfg.active():

        def f(t):
            return _gen_E(t, params.x, params.y, basis, cfg) * _gen_F(t, params.z, basis.omega2, 0, cfg) ** r

        return laurent_coeffs(f, r + 1, r + 1, basis.default_radius(), cfg)


def D_coeffs(r: int, params: TwistParams, basis: LatticeBasis, cfg: PrecisionConfig | None = None) -> list:
    """[D_0, ..., D_r] with gen_D(xi) = sum_l D_l xi^{l-r-1}."""
    cfg = resolve(cfg)
    return list(_D_expansion(r, params, basis, cfg).coefficients)


def _reflected(params: TwistParams) -> bool:
    return params.untwisted and params.z == 1


def _gen_K(xi, r, params, basis, cfg):
    if _reflected(params):
        return (-1) ** (r + 1) * _gen_K(-xi, r, TwistParams(0, 0, 0), basis, cfg)
    D = _D_expansion(r, params, basis, cfg).coefficients
    a = params.shift(r)
    val = _gen_E(xi, params.x, params.y, basis, cfg) * _gen_F(xi, params.z, basis.omega2, 0, cfg) ** r
    for j in range(r + 1):
        val -= D[r - j] * ((-1) ** j / mpf(math.factorial(j))) * _gen_F(xi, a, basis.omega2, j, cfg)
    return val


def gen_K(xi, r: int, params: TwistParams, basis: LatticeBasis, cfg: PrecisionConfig | None = None) -> mpc:
    """Holomorphic-at-0 combination D_r(xi) - sum_j D_{r-j} (-1)^j/j! F^{(j)}(xi; {y+rz})."""
    if r < 1:
        raise ValueError("r must be positive")
    cfg = resolve(cfg)
    with cfg.active():
        return _gen_K(mpc(xi), r, params, basis, cfg)


@lru_cache(maxsize=256)
def _K_expansion(r: int, params: TwistParams, basis: LatticeBasis, count: int, cfg: PrecisionConfig):
    with cfg.active():
        return laurent_coeffs(
            lambda t: _gen_K(t, r, params, basis, cfg), 0, count, basis.default_radius(), cfg
        )


def K_expansion(r: int, params: TwistParams, basis: LatticeBasis, count: int = 8, cfg=None) -> LaurentExpansion:
    return _K_expansion(r, params, basis, count, resolve(cfg))


def K_coeff(k: int, r: int, params: TwistParams, basis: LatticeBasis, cfg: PrecisionConfig | None = None) -> mpc:
    """k! times the Taylor coefficient of xi^{k-1} in gen_K."""
    if k < 1 or r < 1:
        raise ValueError("k and r must be positive")
    cfg = resolve(cfg)
    count = max(k, 8)
    exp = _K_expansion(r, params, basis, count, cfg)
    with cfg.active():
        return exp.coeff(k - 1) * math.factorial(k)


def principal_part_residual(expansion: LaurentExpansion, orders: Sequence[int]) -> mpf:
    """Largest |c_j| over the given orders; used to check holomorphy."""
    return max(abs(expansion.coeff(j)) for j in orders)
