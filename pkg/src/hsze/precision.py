"""Working precision, tolerance comparison and the certified constants.

Every analytic routine in the package runs inside ``cfg.active()``, which
sets the mpmath working precision to ``bits + guard_bits``.  Values are
plain ``mpmath.mpf`` / ``mpmath.mpc`` objects.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp, mpc, mpf

from .errors import ConfigError, ZeroToNegativePower

DEFAULT_BITS = 256
DEFAULT_GUARD = 32


@dataclass(frozen=True)
class PrecisionConfig:
    bits: int = DEFAULT_BITS
    guard_bits: int = DEFAULT_GUARD

    def __post_init__(self):
        if self.bits < 64:
            raise ConfigError(f"bits must be >= 64, got {self.bits}")
        if self.guard_bits < 16:
            raise ConfigError(f"guard_bits must be >= 16, got {self.guard_bits}")

    @property
    def working_bits(self) -> int:
        return self.bits + self.guard_bits

    @property
    def trunc_threshold(self) -> mpf:
        # exact power of two, independent of the ambient precision
        return mpf(2) ** (-self.working_bits)

    @property
    def digits(self) -> int:
        """Decimal digits that are meaningful at ``bits``."""
        return int(self.bits * 0.30103)

    @contextmanager
    def active(self):
        with mp.workprec(self.working_bits):
            yield self


def default_config() -> PrecisionConfig:
    env = os.environ.get("HSZE_PREC")
    if env:
        try:
            return PrecisionConfig(bits=int(env))
        except ValueError as exc:
            raise ConfigError(f"HSZE_PREC={env!r} is not a valid bit count") from exc
    return PrecisionConfig()


def resolve(cfg: PrecisionConfig | None) -> PrecisionConfig:
    return default_config() if cfg is None else cfg


def to_mpf(q) -> mpf:
    """Fraction / int / str / mpf -> mpf at the current working precision."""
    if isinstance(q, Fraction):
        return mpf(q.numerator) / q.denominator
    return mpf(q)


def to_mpc(q) -> mpc:
    if isinstance(q, Fraction):
        return mpc(to_mpf(q))
    return mpc(q)


def close_enough(a, b, tol) -> bool:
    """Relative-with-floor comparison ``|a-b| <= tol*max(1,|a|,|b|)``."""
    return abs(a - b) <= tol * max(1, abs(a), abs(b))


def rel_diff(a, b):
    return abs(a - b) / max(1, abs(a), abs(b))


def complex_pow_int(base, n: int):
    """Integer power by repeated squaring."""
    if n < 0:
        if base == 0:
            raise ZeroToNegativePower("0 raised to a negative power")
        return 1 / complex_pow_int(base, -n)
    result = mpc(1)
    b = mpc(base)
    while n:
        if n & 1:
            result *= b
        b *= b
        n >>= 1
    return result


@dataclass(frozen=True)
class Constants:
    pi: mpf
    lemniscate: mpf
    lemniscate6: mpf
    sqrt3: mpf
    rho: mpc
    imag_unit: mpc


@lru_cache(maxsize=16)
def make_constants(cfg: PrecisionConfig | None = None) -> Constants:
    cfg = resolve(cfg)
    with cfg.active():
        pi = +mp.pi
        varpi = mp.gamma(mpf(1) / 4) ** 2 / (2 * mp.sqrt(2 * pi))
        varpi6 = mp.gamma(mpf(1) / 3) ** 3 / (mp.cbrt(2) ** 4 * pi)
        sqrt3 = mp.sqrt(3)
        rho = mpc(-mpf(1) / 2, sqrt3 / 2)
        return Constants(pi, varpi, varpi6, sqrt3, rho, mpc(0, 1))


def _root_quadrature(n: int) -> mpf:
    # 2*int_0^1 dx/sqrt(1-x^n); x = 1-u^2 removes the endpoint singularity
    # since 1-x^n = (1-x)(1+x+...+x^(n-1))
    def f(u):
        x = 1 - u * u
        return 2 / mp.sqrt(mp.fsum(x**j for j in range(n)))

    return 2 * mp.quad(f, [0, 1])


def lemniscate_by_quadrature(cfg: PrecisionConfig | None = None) -> mpf:
    """2*int_0^1 dx/sqrt(1-x^4) by quadrature."""
    cfg = resolve(cfg)
    with cfg.active():
        return _root_quadrature(4)


def lemniscate_by_agm(cfg: PrecisionConfig | None = None) -> mpf:
    cfg = resolve(cfg)
    with cfg.active():
        return mp.pi / mp.agm(1, mp.sqrt(2))


def lemniscate6_by_quadrature(cfg: PrecisionConfig | None = None) -> mpf:
    cfg = resolve(cfg)
    with cfg.active():
        return _root_quadrature(6)


def decimal_str(x, digits: int) -> str:
    """Deterministic decimal rendering of a real or complex number."""
    with mp.workprec(max(mp.prec, int(digits * 3.33) + 16)):
        x = mpc(x)
        re = mp.nstr(x.real, digits, min_fixed=-5, max_fixed=5)
        if x.imag == 0:
            return re
        im = mp.nstr(abs(x.imag), digits, min_fixed=-5, max_fixed=5)
    sign = "-" if x.imag < 0 else "+"
    return f"{re}{sign}{im}i"
