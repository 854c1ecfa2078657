"""Exact right-hand sides: Hurwitz data, the K-coefficient formula and the catalog.

Exact Eisenstein values on the square and hexagonal lattices come from the
Laurent recurrence of the Weierstrass function,

    c_n = 3/((2n+1)(n-3)) * sum_{k=2}^{n-2} c_k c_{n-k},   c_n = (2n-1) G_{2n},

seeded by G_4(i) = w^4/15 (square) or G_6(rho) = wt^6/35 (hexagonal).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from mpmath import mp, mpc, mpf

from .bernoulli import RatPoly, bernoulli_poly, bernoulli_poly_high, bernoulli_scaled, frac_int_parts
from .errors import CasePreconditionViolated, InadmissibleParameters, NotCatalogued
from .lattice import check_case
from .precision import PrecisionConfig, make_constants, resolve, to_mpf
from .ring import RingExpr
from .theta import K_coeff, LatticeBasis, TwistParams, hurwitz_function, hurwitz_number

__all__ = [
    "weierstrass_coeffs",
    "eisenstein_exact",
    "hurwitz_H",
    "hurwitz_symbolic",
    "bootstrap_check",
    "IntervalExpr",
    "theorem1_rhs",
    "theorem1_rhs_at",
    "K_symbolic",
    "K_closed",
    "G_closed",
    "DiffCheck",
    "diff_relation_check",
    "LhsTerm",
    "CatalogEntry",
    "example_catalog",
    "catalog_entry",
]

PI = RingExpr.gen("pi")
W = RingExpr.gen("w")
WT = RingExpr.gen("wt")
S3 = RingExpr.gen("s3")
Z = RingExpr.gen("z")
I = RingExpr.i()
RHO = RingExpr.rho()
RHO_INV = RingExpr.rho_inv()

SYMBOLIC_TAGS = ("i", "rho")


def _check_tag(tag: str) -> None:
    if tag not in SYMBOLIC_TAGS:
        raise InadmissibleParameters(f"no exact data for basis tag {tag!r}")


def _pi_pow(e: int) -> RingExpr:
    return RingExpr.gen("pi", e)


# -- exact Eisenstein and Hurwitz data -----------------------------------------


@lru_cache(maxsize=None)
def weierstrass_coeffs(tag: str, nmax: int) -> tuple[Fraction, ...]:
    """g_n with G_{2n} = g_n * period^{2n} for n = 0..nmax (g_0 = g_1 = 0)."""
    _check_tag(tag)
    c = [Fraction(0)] * (max(nmax, 3) + 1)
    if tag == "i":
        c[2] = 3 * Fraction(1, 15)
    else:
        c[3] = 5 * Fraction(1, 35)
    for n in range(4, nmax + 1):
        s = sum(c[k] * c[n - k] for k in range(2, n - 1))
        c[n] = Fraction(3, (2 * n + 1) * (n - 3)) * s
    return tuple(c[n] / (2 * n - 1) if n >= 2 else Fraction(0) for n in range(nmax + 1))


def eisenstein_exact(l: int, tag: str) -> RingExpr:
    """G_l on (1, i) or (1, rho) as an exact ring element (l even, l >= 2)."""
    if l < 2 or l % 2:
        raise InadmissibleParameters("l must be even and >= 2")
    _check_tag(tag)
    if l == 2:
        # quasi-period data: G_2(i) = -pi, G_2(rho) = 2 pi rho / sqrt 3
        return -PI if tag == "i" else PI * RHO * S3 * Fraction(2, 3)
    g = weierstrass_coeffs(tag, l // 2)[l // 2]
    return (W if tag == "i" else WT) ** l * g


def hurwitz_H(l: int) -> Fraction:
    """Rational Hurwitz number H_l: G_l(i) = (2w)^l H_l / l!."""
    if l < 4 or l % 4:
        return Fraction(0)
    g = weierstrass_coeffs("i", l // 2)[l // 2]
    return g * math.factorial(l) / 2**l


def hurwitz_symbolic(l: int, tag: str) -> RingExpr:
    """The l-th Hurwitz function at (x, y) = (0, 0) as an exact ring element."""
    _check_tag(tag)
    if l == 0:
        return RingExpr.const(1)
    if l % 2:
        return RingExpr.zero()
    return eisenstein_exact(l, tag) * (-math.factorial(l))


def bootstrap_check(l: int = 12, cfg: PrecisionConfig | None = None) -> tuple[Fraction, mpf, mpf]:
    """(exact H_l, numeric H_l from the theta kernel, |difference|)."""
    cfg = resolve(cfg)
    exact = hurwitz_H(l)
    consts = make_constants(cfg)
    numeric = hurwitz_number(l, LatticeBasis.square(cfg), cfg)
    with cfg.active():
        num = -numeric / (2 * consts.lemniscate) ** l
        return exact, num.real, abs(num - to_mpf(exact))


# -- scaled Bernoulli polynomials in the ring ----------------------------------


def _poly_in_z(p: RatPoly) -> RingExpr:
    return RingExpr({(0, 0, 0, 0, e): c for e, c in enumerate(p.coeffs)})


def _bernoulli_scale(tag: str) -> RingExpr:
    # 2 pi i / omega2 with omega2 = i or rho
    return PI * 2 if tag == "i" else PI * I * RHO_INV * 2


@lru_cache(maxsize=None)
def _scale_pow(tag: str, j: int) -> RingExpr:
    return _bernoulli_scale(tag) ** j


def _check_closed_params(k: int, r: int, params: TwistParams) -> None:
    try:
        check_case(k, r, params)
    except CasePreconditionViolated as exc:
        raise InadmissibleParameters(str(exc)) from exc


def _assemble(k: int, r: int, H: Callable, Bh: Callable, Bk: Callable, include_l1: bool, lift: Callable):
    """k! * [sum_{l>r} H_l/l! Bh_{k+r-l}/(k+r-l)! + sum_{l<=r} H_l/l! (Bh_{k+r-l}/(k+r-l)! - corr_l)]."""
    f = math.factorial
    total = lift(0)
    for l in range(r + 1, k + r + 1):
        total = total + H(l) * Bh(k + r - l) * lift(Fraction(1, f(l) * f(k + r - l)))
    for l in range(r + 1):
        if l == 1 and not include_l1:
            continue
        inner = Bh(k + r - l) * lift(Fraction(1, f(k + r - l)))
        for j in range(r - l + 1):
            c = Fraction((-1) ** j * f(k + j - 1), f(r - j - l) * f(j) * f(k - 1) * f(k + j))
            inner = inner - Bh(r - j - l) * Bk(k + j) * lift(c)
        total = total + H(l) * inner * lift(Fraction(1, f(l)))
    return total * lift(f(k))


@lru_cache(maxsize=None)
def K_symbolic(k: int, r: int, tag: str, shift: int) -> RingExpr:
    """K_{k,r}(0,0,z) as a polynomial in z, valid where [r z] = shift."""
    _check_tag(tag)
    return _assemble(
        k,
        r,
        lambda l: hurwitz_symbolic(l, tag),
        lambda j: _scale_pow(tag, j) * _poly_in_z(bernoulli_poly_high(j, r)),
        lambda m: _scale_pow(tag, m) * _poly_in_z(bernoulli_poly(m).compose_linear(r, -shift)),
        False,
        RingExpr.const,
    )


def _G_factor(k: int, r: int, tag: str) -> RingExpr:
    # G = K * (-1/(k! (pi i/omega2)^r)); (omega2/(pi i))^r = pi^{-r} (omega2 / i)^r
    w2_over_i = RingExpr.const(1) if tag == "i" else RHO * -I
    return _pi_pow(-r) * w2_over_i**r * Fraction(-1, math.factorial(k))


def K_closed(
    k: int,
    r: int,
    x,
    y,
    z,
    basis: LatticeBasis | str,
    cfg: PrecisionConfig | None = None,
) -> RingExpr | mpc:
    """K_{k,r}(x,y,z) from Hurwitz functions and scaled Bernoulli values.

    Returns a RingExpr for (x,y) = (0,0) on the square or hexagonal lattice,
    and a high-precision number otherwise.
    """
    params = TwistParams(x, y, z)
    _check_closed_params(k, r, params)
    cfg = resolve(cfg)
    tag = basis if isinstance(basis, str) else basis.tag
    if params.untwisted and tag in SYMBOLIC_TAGS:
        shift = frac_int_parts(r * params.z)[0]
        return K_symbolic(k, r, tag, shift).substitute_z(params.z)
    if isinstance(basis, str):
        basis = LatticeBasis.square(cfg) if basis == "i" else LatticeBasis.hexagonal(cfg)
    with cfg.active():
        w2 = basis.omega2
        scale = 2j * mp.pi / w2
        zf = params.z
        a = params.shift(r)

        def H(l):
            return hurwitz_function(l, params.x, params.y, basis, cfg)

        def Bh(j):
            return scale**j * to_mpf(bernoulli_poly_high(j, r)(zf))

        def Bk(m):
            return bernoulli_scaled(m, a, w2, cfg)

        def lift(q):
            return to_mpf(Fraction(q))

        return _assemble(k, r, H, Bh, Bk, not params.untwisted, lift)


def G_closed(k: int, r: int, z, tag: str) -> RingExpr:
    """Hyperbolic-sine Eisenstein value at (0,0,z) on (1,i) or (1,rho), exactly."""
    K = K_closed(k, r, 0, 0, z, tag)
    return K * _G_factor(k, r, tag)


# -- the explicit evaluation formula on (1, i) ---------------------------------


@dataclass(frozen=True)
class IntervalExpr:
    """An expression valid for z in an interval with the given endpoint types."""

    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool
    shift: int
    expr: RingExpr

    def contains(self, z) -> bool:
        z = Fraction(z)
        above = z > self.lo or (self.lo_closed and z == self.lo)
        below = z < self.hi or (self.hi_closed and z == self.hi)
        return above and below

    def tag(self) -> str:
        return f"{'[' if self.lo_closed else '('}{self.lo},{self.hi}{']' if self.hi_closed else ')'}"


def _B(m: int) -> RingExpr:
    return _poly_in_z(bernoulli_poly(m))


def _Br(m: int, r: int) -> RingExpr:
    return _poly_in_z(bernoulli_poly_high(m, r))


def _B_frac(m: int, r: int, shift: int) -> RingExpr:
    # B_m({r z}) on the interval where [r z] = shift
    return _poly_in_z(bernoulli_poly(m).compose_linear(r, -shift))


def _varpi_term(l: int) -> RingExpr:
    # (2 w)^l H_l / l!
    return W**l * (Fraction(2**l, math.factorial(l)) * hurwitz_H(l))


def _formula_r1(k: int) -> RingExpr:
    f = math.factorial
    two_pi = PI * 2
    out = RingExpr.zero()
    for l in range(4, k + 2):
        out += _varpi_term(l) * two_pi ** (k + 1 - l) * _B(k + 1 - l) * Fraction(1, f(k + 1 - l))
    out -= two_pi**k * _B(k - 1) * Fraction(1, 2 * f(k - 1))
    out += two_pi ** (k + 1) * (_B(1) * _B(k) - _B(k + 1)) * Fraction(1, f(k))
    return out


def _formula_r(k: int, r: int, shift: int) -> RingExpr:
    f = math.factorial
    two_pi = PI * 2

    def bracket(l):
        # B^<r>_{k+r-l}/(k+r-l)! - sum_j (-1)^j C(k+j-1, j) B^<r>_{r-j-l}/(r-j-l)! B_{k+j}({rz})/(k+j)!
        val = _Br(k + r - l, r) * Fraction(1, f(k + r - l))
        for j in range(r - l + 1):
            c = Fraction((-1) ** j * math.comb(k + j - 1, j), f(r - j - l) * f(k + j))
            val -= _Br(r - j - l, r) * _B_frac(k + j, r, shift) * c
        return val

    out = RingExpr.zero()
    for l in range(r + 1, k + r + 1):
        out += _varpi_term(l) * two_pi ** (k + r - l) * _Br(k + r - l, r) * Fraction(1, f(k + r - l))
    for l in range(4, r + 1):
        out += _varpi_term(l) * two_pi ** (k + r - l) * bracket(l)
    out -= two_pi ** (k + r - 1) * bracket(2) * Fraction(1, 2)
    out -= two_pi ** (k + r) * bracket(0)
    return out


@lru_cache(maxsize=None)
def theorem1_rhs(k: int, r: int) -> tuple[IntervalExpr, ...]:
    """pi^r times the hyperbolic-sine series at (0,0,z;1,i), one polynomial per interval.

    Intervals are those on which [r z] is constant, restricted to the
    admissible z for the given k.  The last entry for k >= 3 is the endpoint
    z = 1, stored with z already substituted.
    """
    if k < 1 or r < 1:
        raise InadmissibleParameters("k and r must be positive")
    out = []
    for j in range(r):
        lo, hi = Fraction(j, r), Fraction(j + 1, r)
        lo_closed = (k >= 3) or (k == 2 and j > 0)
        if k == 1:
            lo_closed = False
        expr = _formula_r1(k) if r == 1 else _formula_r(k, r, j)
        out.append(IntervalExpr(lo, hi, lo_closed, False, j, expr))
    if k >= 3:
        expr = _formula_r1(k) if r == 1 else _formula_r(k, r, r)
        out.append(IntervalExpr(Fraction(1), Fraction(1), True, True, r, expr.substitute_z(1)))
    return tuple(out)


def theorem1_rhs_at(k: int, r: int, z) -> RingExpr:
    z = Fraction(z)
    for piece in theorem1_rhs(k, r):
        if piece.contains(z):
            return piece.expr.substitute_z(z)
    raise InadmissibleParameters(f"z={z} is not admissible for k={k}, r={r}")


# -- differential relation -----------------------------------------------------


@dataclass(frozen=True)
class DiffCheck:
    ok: bool
    residual: mpf | Fraction
    mode: str
    details: tuple = field(default=())


def diff_relation_check(
    k: int,
    r: int,
    x=0,
    y=0,
    basis: LatticeBasis | str = "i",
    z=Fraction(1, 3),
    h: Fraction = Fraction(1, 2**20),
    tol: float = 1e-15,
    cfg: PrecisionConfig | None = None,
) -> DiffCheck:
    """(omega2/(2 pi i r)) d/dz K_{k,r} = k K_{k-1,r}.

    Exact on every interval for (0,0) on (1,i) or (1,rho); otherwise a
    five-point central difference in z at the point ``z`` with step ``h``.
    """
    if k < 2:
        raise InadmissibleParameters("the relation needs k >= 2")
    x, y = Fraction(x), Fraction(y)
    tag = basis if isinstance(basis, str) else basis.tag
    if x == 0 and y == 0 and tag in SYMBOLIC_TAGS:
        # omega2/(2 pi i r) as a ring element
        w2 = RingExpr.i() if tag == "i" else RHO
        factor = w2 * (-I) * _pi_pow(-1) * Fraction(1, 2 * r)
        bad = []
        for shift in range(r):
            lhs = K_symbolic(k, r, tag, shift).differentiate_z() * factor
            rhs = K_symbolic(k - 1, r, tag, shift) * k
            if lhs != rhs:
                bad.append(shift)
        return DiffCheck(not bad, Fraction(len(bad)), "exact", tuple(bad))
    cfg = resolve(cfg)
    if isinstance(basis, str):
        basis = LatticeBasis.square(cfg) if basis == "i" else LatticeBasis.hexagonal(cfg)
    z = Fraction(z)
    if not (2 * h < z < 1 - 2 * h):
        raise InadmissibleParameters("the stencil must stay inside (0, 1)")

    def K(kk, zz):
        return K_coeff(kk, r, TwistParams(x, y, zz), basis, cfg)

    with cfg.active():
        hf = to_mpf(h)
        fm2, fm1, fp1, fp2 = (K(k, z + s * h) for s in (-2, -1, 1, 2))
        deriv = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * hf)
        lhs = basis.omega2 / (2j * mp.pi * r) * deriv
        rhs = k * K(k - 1, z)
        res = abs(lhs - rhs) / max(1, abs(lhs), abs(rhs))
        return DiffCheck(bool(res <= tol), res, "finite_difference", (lhs, rhs))


# -- catalog of explicit evaluations -------------------------------------------


@dataclass(frozen=True)
class LhsTerm:
    """One summand of a left-hand side.

    kind ``"G"``: coeff * G_k^<r>(x,y,z; 1, tau);
    kind ``"eisenstein"``: coeff * G_k(tau);
    kind ``"axis"``: coeff * sum_{n != 0} (n tau)^{-k} = coeff * 2 zeta(k) tau^{-k}.
    """

    kind: str
    k: int
    coeff: Fraction = Fraction(1)
    r: int = 0
    x: Fraction = Fraction(0)
    y: Fraction = Fraction(0)
    z: Fraction = Fraction(1, 2)


@dataclass(frozen=True)
class CatalogEntry:
    identity_id: str
    basis_tag: str
    lhs: tuple[LhsTerm, ...]
    rhs: RingExpr
    tol_digits: int
    description: str = ""


def _catalog_entries() -> list[CatalogEntry]:
    pi, w4, wt6 = PI, W**4, WT**6
    ipi = _pi_pow(-1)
    F = Fraction
    G = lambda k, r, z=F(1, 2), c=F(1): LhsTerm("G", k, c, r, z=F(z))  # noqa: E731
    return [
        CatalogEntry(
            "1-11", "i", (G(3, 1),),
            w4 * ipi * F(1, 15) - pi**3 * F(7, 90) + pi**2 * F(1, 6), 35,
            "G_3^<1>(i)",
        ),
        CatalogEntry(
            "1-11-2", "i", (G(5, 1),),
            w4 * pi * F(-1, 90) + pi**5 * F(31, 2520) - pi**4 * F(7, 360), 35,
            "G_5^<1>(i)",
        ),
        CatalogEntry(
            "aust-1", "i", (G(3, 1, 0, F(1, 2)), G(3, 1, 1, F(1, 2))),
            w4 * ipi * F(1, 15) + pi**3 * F(4, 45) - pi**2 * F(1, 3), 30,
            "sum over m != 0 of coth(m pi)/(m+ni)^3",
        ),
        CatalogEntry(
            "4-2", "i", (G(2, 2),),
            w4 * _pi_pow(-2) * F(1, 15) - pi**2 * F(11, 45) + pi * F(2, 3), 30,
            "G_2^<2>(i)",
        ),
        CatalogEntry(
            "4-3", "i", (G(4, 2),),
            w4 * F(-1, 45) + pi**4 * F(37, 945) - pi**3 * F(4, 45), 30,
            "G_4^<2>(i)",
        ),
        CatalogEntry(
            "4-4", "i", (G(1, 3),),
            w4 * _pi_pow(-3) * F(1, 15) - pi * F(11, 45) + F(2, 3), 30,
            "G_1^<3>(i)",
        ),
        CatalogEntry(
            "4-4-2", "i", (G(1, 5),),
            w4 * _pi_pow(-3) * F(-1, 15) + pi * F(191, 945) - F(8, 15), 30,
            "G_1^<5>(i)",
        ),
        CatalogEntry(
            "4-4-3", "i", (G(1, 1),),
            pi * F(1, 3) - 1, 30,
            "G_1^<1>(i)",
        ),
        CatalogEntry(
            "4-5", "i", (G(3, 3),),
            w4 * ipi * F(-1, 30) + pi**3 * F(151, 1890) - pi**2 * F(1, 5), 30,
            "G_3^<3>(i)",
        ),
        CatalogEntry(
            "4-6", "i", (G(2, 4),),
            w4 * _pi_pow(-2) * F(-1, 15) + pi**2 * F(191, 945) - pi * F(8, 15), 30,
            "G_2^<4>(i)",
        ),
        CatalogEntry(
            "aust-2", "i",
            (LhsTerm("eisenstein", 4), LhsTerm("axis", 4, F(-1)), G(4, 2)),
            w4 * F(2, 45) + pi**4 * F(16, 945) - pi**3 * F(4, 45), 30,
            "sum over m != 0 of coth(m pi)^2/(m+ni)^4",
        ),
        CatalogEntry(
            "e-16", "rho", (G(1, 1),),
            I * RHO_INV * (pi - S3 * 2) * F(1, 3), 25,
            "G_1^<1>(rho)",
        ),
        CatalogEntry(
            "e-17", "rho", (G(3, 1),),
            I * (pi**3 * F(7, 90) - S3 * pi**2 * F(1, 9)), 25,
            "G_3^<1>(rho)",
        ),
        CatalogEntry(
            "e-18", "rho", (G(5, 1),),
            RHO * I * (wt6 * ipi * F(-1, 35) + pi**5 * F(31, 2520) - S3 * pi**4 * F(7, 540)), 25,
            "G_5^<1>(rho)",
        ),
        CatalogEntry(
            "e-19", "rho", (G(2, 2),),
            RHO * (pi**2 * F(11, 45) - S3 * pi * F(4, 9)), 25,
            "G_2^<2>(rho)",
        ),
        CatalogEntry(
            "e-20", "rho", (G(4, 2),),
            RHO_INV * (wt6 * _pi_pow(-2) * F(-1, 35) + pi**4 * F(37, 945) - S3 * pi**3 * F(8, 135)), 25,
            "G_4^<2>(rho)",
        ),
        CatalogEntry(
            "aust-3", "rho",
            (LhsTerm("eisenstein", 4), LhsTerm("axis", 4, F(-1)), G(4, 2)),
            RHO_INV * (wt6 * _pi_pow(-2) * F(-1, 35) + pi**4 * F(16, 945) - S3 * pi**3 * F(8, 135)), 25,
            "sum over m != 0 of coth(m pi i/rho)^2/(m+n rho)^4",
        ),
    ]


@lru_cache(maxsize=1)
def _catalog() -> tuple[CatalogEntry, ...]:
    return tuple(sorted(_catalog_entries(), key=lambda e: e.identity_id))


def example_catalog() -> list[CatalogEntry]:
    return list(_catalog())


def catalog_entry(identity_id: str) -> CatalogEntry:
    for e in _catalog():
        if e.identity_id == identity_id:
            return e
    raise NotCatalogued(identity_id)
