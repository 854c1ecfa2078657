"""Exact Bernoulli numbers, Bernoulli polynomials and their higher-order versions.

Higher-order polynomials use the normalisation

    (t e^{tx} / (e^t - 1))^r = sum_m B_m^<r>(x) t^m / m!

so that ``B_m^<1> = B_m``.  Everything here is exact ``Fraction`` arithmetic.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from mpmath import mpc

from .errors import IllegalLerchPoint
from .precision import PrecisionConfig, make_constants, resolve, to_mpf

__all__ = [
    "RatPoly",
    "bernoulli_number",
    "bernoulli_poly",
    "bernoulli_poly_high",
    "frac_int_parts",
    "bernoulli_scaled",
    "zeta_even",
]


class RatPoly:
    """Dense univariate polynomial with Fraction coefficients (low degree first)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> "RatPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "RatPoly":
        return cls([0, 1])

    @property
    def degree(self) -> float:
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def __call__(self, x):
        acc = 0 if not isinstance(x, Fraction) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(x, (int, Fraction)) else to_mpf(c))
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RatPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatPoly.constant(other)
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RatPoly({[str(c) for c in self.coeffs]})"

    def derivative(self) -> "RatPoly":
        return RatPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def compose_linear(self, a, b) -> "RatPoly":
        """p(a*x + b)."""
        lin = RatPoly([b, a])
        acc = RatPoly()
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc


def _as_poly(v) -> RatPoly:
    return v if isinstance(v, RatPoly) else RatPoly.constant(v)


_bern_lock = threading.Lock()
_bern: list[Fraction] = [Fraction(1)]


def bernoulli_number(m: int) -> Fraction:
    """B_m with B_1 = -1/2, from sum_{j<=m} C(m+1, j) B_j = 0."""
    if m < 0:
        raise ValueError("m must be non-negative")
    with _bern_lock:
        while len(_bern) <= m:
            n = len(_bern)
            s = sum(math.comb(n + 1, j) * _bern[j] for j in range(n))
            _bern.append(-s / (n + 1))
        return _bern[m]


@lru_cache(maxsize=None)
def bernoulli_poly(m: int) -> RatPoly:
    if m < 0:
        raise ValueError("m must be non-negative")
    # B_m(x) = sum_j C(m, j) B_j x^{m-j}
    coeffs = [Fraction(0)] * (m + 1)
    for j in range(m + 1):
        coeffs[m - j] = math.comb(m, j) * bernoulli_number(j)
    return RatPoly(coeffs)


@lru_cache(maxsize=None)
def _high_numbers(length: int, r: int) -> tuple[Fraction, ...]:
    # coefficients of t^n in (t/(e^t - 1))^r by exact convolution
    base = [bernoulli_number(n) / math.factorial(n) for n in range(length)]
    acc = list(base)
    for _ in range(r - 1):
        acc = [sum((acc[i] * base[n - i] for i in range(n + 1)), Fraction(0)) for n in range(length)]
    return tuple(acc)


@lru_cache(maxsize=None)
def bernoulli_poly_high(m: int, r: int) -> RatPoly:
    """B_m^<r>(x), the coefficient of t^m/m! in (t/(e^t-1))^r e^{r x t}."""
    if m < 0 or r < 1:
        raise ValueError("need m >= 0 and r >= 1")
    # coefficients below the truncation point are exact, so share one series per power of two
    nums = _high_numbers(1 << max(4, m.bit_length()), r)
    fm = math.factorial(m)
    # sum_j m!/(m-j)! nums[j] * (r x)^(m-j)
    coeffs = [Fraction(0)] * (m + 1)
    for j in range(m + 1):
        coeffs[m - j] = fm * nums[j] / math.factorial(m - j) * Fraction(r) ** (m - j)
    return RatPoly(coeffs)


def frac_int_parts(x) -> tuple[int, Fraction]:
    """([x], {x}) with the floor convention, so {x} lies in [0, 1)."""
    x = Fraction(x)
    n = math.floor(x)
    return n, x - n


def zeta_even(k: int) -> Fraction:
    """zeta(k)/pi^k for even k >= 2, exactly."""
    if k < 2 or k % 2:
        raise ValueError("k must be even and >= 2")
    j = k // 2
    return (-1) ** (j + 1) * bernoulli_number(k) * Fraction(2**k, 2 * math.factorial(k))


def bernoulli_scaled(m: int, z, omega2, cfg: PrecisionConfig | None = None) -> mpc:
    """(2 pi i / omega2)^m B_m({z})."""
    if m < 1:
        raise ValueError("m must be >= 1")
    z = Fraction(z)
    if m == 1 and z.denominator == 1:
        raise IllegalLerchPoint("B_1 scaling is undefined at integer z")
    cfg = resolve(cfg)
    c = make_constants(cfg)
    with cfg.active():
        _, fz = frac_int_parts(z)
        return (2 * c.pi * c.imag_unit / mpc(omega2)) ** m * to_mpf(bernoulli_poly(m)(fz))
