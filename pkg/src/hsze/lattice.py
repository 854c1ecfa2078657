"""Lattice sums: Eisenstein series and their hyperbolic-sine analogues.

The hyperbolic-sine series

    G_k^<r>(x,y,z; w1,w2) = sum_{m != 0} sum_n (-1)^{rn} / sinh(m pi i/tau)^r
                            * e^{2 pi i (m(x + r(z-1/2)/tau) + n(y + r(z-1/2)))}
                            / (m w1 + n w2)^k

is summed row by row: for fixed m the n-sum equals

    w2^{-k} sum_n e^{2 pi i n (y + r z)} / (n + m/tau)^k,

which has a closed form (derivatives of the Lerch kernel ``lerch_phi``).  The
remaining m-sum converges geometrically because of the sinh factor.  A naive
symmetric box sum is kept as an independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from mpmath import mp, mpc, mpf

from .bernoulli import bernoulli_poly, frac_int_parts, zeta_even
from .errors import (
    CasePreconditionViolated,
    IllegalLerchPoint,
    NonconvergenceAtPolicyCap,
    NonconvergentTau,
)
from .expoly import eval_log_derivative
from .precision import PrecisionConfig, resolve, to_mpc, to_mpf
from .theta import LatticeBasis, TwistParams

__all__ = [
    "Route",
    "SeriesResult",
    "TruncationPolicy",
    "lerch_phi",
    "inner_row_sum",
    "eisenstein_G",
    "eisenstein_G_series",
    "check_case",
    "sinh_eisenstein_G",
    "naive_box",
    "cauchy_mellin_sum",
    "sinh_alternating_sum",
    "sinh_power_sum",
]


class Route(str, Enum):
    naive_symmetric = "naive_symmetric"
    row_accelerated = "row_accelerated"
    closed_form = "closed_form"


@dataclass(frozen=True)
class SeriesResult:
    value: mpc
    est_error: mpf
    terms_used: int
    route: Route

    def __post_init__(self):
        if self.est_error < 0:
            raise ValueError("est_error must be non-negative")


@dataclass(frozen=True)
class TruncationPolicy:
    max_m: int = 2000
    max_n: int = 256
    stop_rel: mpf | None = field(default=None)

    def __post_init__(self):
        if self.max_m < 8 or self.max_n < 8:
            raise ValueError("max_m and max_n must be >= 8")

    def threshold(self, cfg: PrecisionConfig) -> mpf:
        if self.stop_rel is None:
            return cfg.trunc_threshold
        if self.stop_rel > mpf(2) ** (-cfg.bits / 2):
            raise ValueError("stop_rel must not exceed 2^(-bits/2)")
        return mpf(self.stop_rel)


# -- single rows ------------------------------------------------------------


def _near_integer(b: mpc, cfg: PrecisionConfig) -> bool:
    return abs(b - mp.nint(b.real)) < mpf(2) ** (-cfg.bits // 2)


def _row(k: int, alpha: Fraction, beta: mpc) -> mpc:
    # sum_n e^{2 pi i n alpha} / (beta + n)^k
    #   = (-1)^{k-1}/(k-1)! d^{k-1}/dbeta^{k-1}  2 pi i e^{2 pi i beta c}/(e^{2 pi i beta} - 1)
    # with c = 1 - {alpha}; for integer alpha and k >= 2 the dropped constant
    # is killed by the differentiation.
    c = 1 - frac_int_parts(alpha)[1]
    arg = 2j * mp.pi * beta
    w = 1 / mp.expm1(arg)
    val = (2j * mp.pi) ** k * mp.exp(arg * to_mpf(c)) * eval_log_derivative(c, k - 1, w)
    return val * ((-1) ** (k - 1)) / math.factorial(k - 1)


def inner_row_sum(k: int, alpha, beta, cfg: PrecisionConfig | None = None) -> mpc:
    """sum_{n in Z} e^{2 pi i n alpha}/(beta + n)^k (symmetric limit when k = 1)."""
    if k < 1:
        raise ValueError("k must be positive")
    alpha = Fraction(alpha)
    cfg = resolve(cfg)
    with cfg.active():
        beta = to_mpc(beta)
        if _near_integer(beta, cfg):
            raise IllegalLerchPoint(f"beta={beta} is an integer")
        if k == 1 and alpha.denominator == 1:
            raise IllegalLerchPoint("k=1 requires non-integral alpha")
        return _row(k, alpha, beta)


def lerch_phi(alpha, beta, cfg: PrecisionConfig | None = None) -> mpc:
    """2 pi i e^{2 pi i beta (1-{alpha})}/(e^{2 pi i beta} - 1)."""
    return inner_row_sum(1, alpha, beta, cfg)


# -- classical Eisenstein series ---------------------------------------------


def eisenstein_G_series(
    k2: int, tau, cfg: PrecisionConfig | None = None, policy: TruncationPolicy | None = None
) -> SeriesResult:
    """G_{k2}(tau), rows over m outer and n inner (the prescribed order for k2 = 2)."""
    if k2 < 2 or k2 % 2:
        raise ValueError("k2 must be an even integer >= 2")
    cfg = resolve(cfg)
    policy = policy or TruncationPolicy()
    with cfg.active():
        tau = mpc(tau)
        if tau.imag <= 0:
            raise NonconvergentTau("Im(tau) must be positive")
        thr = policy.threshold(cfg)
        tk = tau**k2
        # m = 0 row: sum_{n != 0} (n tau)^{-k2} = 2 zeta(k2) tau^{-k2}
        axis = 2 * to_mpf(zeta_even(k2)) * mp.pi**k2 / tk
        acc = mpc(0)
        m, small, mag, prev = 0, 0, mpf(0), None
        while small < 2:
            m += 1
            if m > policy.max_m:
                raise NonconvergenceAtPolicyCap(f"G_{k2} rows did not settle by m={policy.max_m}")
            row = 2 * _row(k2, Fraction(0), m / tau) / tk
            acc += row
            prev, mag = mag, abs(row)
            small = small + 1 if mag <= thr * max(abs(acc), abs(axis)) else 0
        ratio = mag / prev if prev else mpf(0)
        tail = mag * ratio / (1 - ratio) if ratio < 1 else mag
        return SeriesResult(acc + axis, mag + tail, 2 * m + 1, Route.row_accelerated)


def eisenstein_G(k2: int, tau, cfg: PrecisionConfig | None = None) -> mpc:
    return eisenstein_G_series(k2, tau, cfg).value


# -- hyperbolic-sine Eisenstein series ----------------------------------------


def check_case(k: int, r: int, params: TwistParams) -> str:
    """Which branch of the definition applies: ``"absolute"`` or ``"limit"``."""
    z = params.z
    if k < 1 or r < 1:
        raise CasePreconditionViolated("k and r must be positive")
    if k >= 3:
        return "absolute"
    if k == 2:
        if 0 < z < 1:
            return "absolute"
        if not params.untwisted:
            return "limit"
        raise CasePreconditionViolated("k=2 with (x,y)=(0,0) requires 0<z<1")
    if 0 < z < 1 and not params.shift_integral(r):
        return "limit"
    raise CasePreconditionViolated("k=1 requires 0<z<1 and y+rz not an integer")


def _sinh_weight(m: int, r: int, params: TwistParams, basis: LatticeBasis) -> mpc:
    tau = basis.tau
    if basis.tag == "i":
        s = mpc(mp.sinh(m * mp.pi))
    else:
        s = mp.sinh(m * mp.pi * 1j / tau)
    half = to_mpf(params.z) - mpf(1) / 2
    return mp.exp(2j * mp.pi * m * (to_mpf(params.x) + r * half / tau)) / s**r


def _row_accelerated(k, r, params, basis, policy, cfg) -> SeriesResult:
    tau, w2 = basis.tau, basis.omega2
    alpha = params.y + r * params.z
    thr = policy.threshold(cfg)
    acc = mpc(0)
    peak = mpf(0)
    m, small, mag, prev = 0, 0, mpf(0), mpf(0)
    while small < 2:
        m += 1
        if m > policy.max_m:
            raise NonconvergenceAtPolicyCap(f"rows did not settle by m={policy.max_m}")
        plus = _sinh_weight(m, r, params, basis) * _row(k, alpha, m / tau)
        minus = _sinh_weight(-m, r, params, basis) * _row(k, alpha, -m / tau)
        acc += plus + minus
        prev, mag = mag, abs(plus) + abs(minus)
        peak = max(peak, mag)
        small = small + 1 if mag <= thr * max(abs(acc), peak) else 0
    ratio = mag / prev if prev else mpf(0)
    tail = mag * ratio / (1 - ratio) if ratio < 1 else mag
    scale = w2 ** (-k)
    rounding = mpf(2) ** (-cfg.working_bits) * peak * m
    return SeriesResult(acc * scale, (mag + tail + rounding) * abs(scale), 2 * m, Route.row_accelerated)


def naive_box(
    k: int, r: int, params: TwistParams, basis: LatticeBasis, M: int, N: int, cfg: PrecisionConfig | None = None
) -> tuple[mpc, int]:
    """Direct box sum over 0 < |m| <= M, |n| <= N of the defining terms.

    Rows whose total contribution is provably below the working precision
    are skipped.  Returns (value, number of terms added).
    """
    cfg = resolve(cfg)
    with cfg.active():
        w1, w2 = basis.omega1, basis.omega2
        half = to_mpf(params.z) - mpf(1) / 2
        nphase = [
            (-1) ** ((r * n) % 2) * mp.exp(2j * mp.pi * n * (to_mpf(params.y) + r * half))
            for n in range(-N, N + 1)
        ]
        # distance from m*w1 to the line w2*R, per unit m
        gap = abs((w1 * mp.conj(w2)).imag) / abs(w2)
        eps = mpf(2) ** (-cfg.working_bits)
        acc = mpc(0)
        terms = 0
        for m in range(1, M + 1):
            row_total = mpc(0)
            bound = mpf(0)
            for mm in (m, -m):
                wgt = _sinh_weight(mm, r, params, basis)
                bound += abs(wgt) * (2 * N + 1) / (gap * m) ** k
                base = mm * w1
                for idx, n in enumerate(range(-N, N + 1)):
                    row_total += wgt * nphase[idx] / (base + n * w2) ** k
                terms += 2 * N + 1
            acc += row_total
            if bound <= eps * max(abs(acc), 1) and m > 1:
                break
        return acc, terms


def sinh_eisenstein_G(
    k: int,
    r: int,
    params: TwistParams,
    basis: LatticeBasis,
    policy: TruncationPolicy | None = None,
    route: Route | str = Route.row_accelerated,
    cfg: PrecisionConfig | None = None,
) -> SeriesResult:
    check_case(k, r, params)
    cfg = resolve(cfg)
    policy = policy or TruncationPolicy()
    route = Route(route)
    with cfg.active():
        if route is Route.row_accelerated:
            return _row_accelerated(k, r, params, basis, policy, cfg)
        if route is Route.naive_symmetric:
            T = policy.max_n
            lo, t1 = naive_box(k, r, params, basis, T // 2, T // 2, cfg)
            hi, t2 = naive_box(k, r, params, basis, T, T, cfg)
            return SeriesResult(hi, 2 * abs(hi - lo), t1 + t2, Route.naive_symmetric)
        raise ValueError(f"route {route} is not a summation route")


# -- one-dimensional sinh sums -------------------------------------------------


def _sum_positive_n(term, cfg: PrecisionConfig, cap: int = 100000) -> tuple[mpc, int]:
    thr = cfg.trunc_threshold
    acc = mpc(0)
    peak = mpf(0)
    n, small = 0, 0
    while small < 2:
        n += 1
        if n > cap:
            raise NonconvergenceAtPolicyCap("one-dimensional sum did not settle")
        t = term(n)
        acc += t
        peak = max(peak, abs(t))
        small = small + 1 if abs(t) <= thr * max(abs(acc), peak) and abs(t) < peak else 0
    return acc, n


def cauchy_mellin_sum(k: int, cfg: PrecisionConfig | None = None) -> tuple[mpc, mpc, mpc]:
    """(lhs, rhs, lhs - rhs) for sum_{m != 0} (-1)^m/(sinh(m pi) m^{4k+3})."""
    if k < 0:
        raise ValueError("k must be non-negative")
    cfg = resolve(cfg)
    e = 4 * k + 3
    half = Fraction(1, 2)
    coeff = sum(
        (-1) ** (j + 1)
        * bernoulli_poly(2 * j)(half)
        / math.factorial(2 * j)
        * bernoulli_poly(4 * k + 4 - 2 * j)(half)
        / math.factorial(4 * k + 4 - 2 * j)
        for j in range(2 * k + 3)
    )
    with cfg.active():
        # the summand is even in m
        half_sum, _ = _sum_positive_n(lambda m: (-1) ** m / (mp.sinh(m * mp.pi) * mpf(m) ** e), cfg)
        lhs = mpc(2 * half_sum)
        rhs = mpc((2 * mp.pi) ** e * to_mpf(coeff))
        return lhs, rhs, lhs - rhs


def sinh_alternating_sum(j: int, cfg: PrecisionConfig | None = None) -> mpc:
    """sum_{n >= 1} (-1)^n / (sinh(n pi) n^j)."""
    cfg = resolve(cfg)
    with cfg.active():
        val, _ = _sum_positive_n(lambda n: (-1) ** n / (mp.sinh(n * mp.pi) * mpf(n) ** j), cfg)
        return val


def sinh_power_sum(p: int, cfg: PrecisionConfig | None = None) -> mpc:
    """sum_{m != 0} sinh(m pi)^{-p} for even p."""
    if p < 1 or p % 2:
        raise ValueError("p must be a positive even integer")
    cfg = resolve(cfg)
    with cfg.active():
        val, _ = _sum_positive_n(lambda m: 1 / mp.sinh(m * mp.pi) ** p, cfg)
        return 2 * val
