"""Exact arithmetic in Q(i)[pi, 1/pi, w, wt, s3, z].

``w`` is the lemniscate constant, ``wt`` the hexagonal period constant and
``s3`` the square root of 3 (reduced by s3^2 = 3).  Elements are immutable
and stored in a canonical form, so equality is structural.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from mpmath import mpc

from .errors import SymbolRemains
from .precision import Constants, to_mpf

__all__ = ["GaussianRational", "RingExpr", "eval_ring", "GENERATORS"]

GENERATORS = ("pi", "w", "wt", "s3", "z")


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def of(cls, v) -> "GaussianRational":
        if isinstance(v, GaussianRational):
            return v
        if isinstance(v, complex):
            raise TypeError("binary complex numbers are not exact")
        return cls(Fraction(v), Fraction(0))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __add__(self, o):
        o = GaussianRational.of(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-GaussianRational.of(o))

    def __rsub__(self, o):
        return GaussianRational.of(o) - self

    def __mul__(self, o):
        o = GaussianRational.of(o)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, o):
        return self * GaussianRational.of(o).inverse()

    def to_mpc(self) -> mpc:
        return mpc(to_mpf(self.re), to_mpf(self.im))

    def __str__(self):
        sign = "-" if self.im < 0 else "+"
        return f"({self.re}{sign}{abs(self.im)}i)"


# exponent tuple: (pi, w, wt, s3, z)
Key = tuple


def _mul_keys(a: Key, b: Key) -> tuple[Key, int]:
    """Product of two monomials; also returns the rational factor from s3^2 = 3."""
    s3 = a[3] + b[3]
    factor = 1
    if s3 >= 2:
        s3 -= 2
        factor = 3
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], s3, a[4] + b[4]), factor


class RingExpr:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, GaussianRational] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Key, GaussianRational] = {}
        for key, c in items:
            key = tuple(int(e) for e in key)
            if len(key) != 5:
                raise ValueError("monomial keys have five exponents")
            if min(key[1:]) < 0 or key[3] > 1:
                raise ValueError(f"invalid monomial exponents {key}")
            acc[key] = acc.get(key, GaussianRational()) + GaussianRational.of(c)
        self._terms = tuple(sorted((k, v) for k, v in acc.items() if v))
        self._hash = None

    # -- constructors
    @classmethod
    def const(cls, c) -> "RingExpr":
        return cls({(0, 0, 0, 0, 0): GaussianRational.of(c)})

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> "RingExpr":
        if name == "s3":
            return cls.const(3 ** (exp // 2)) * (cls({(0, 0, 0, 1, 0): 1}) if exp % 2 else 1)
        idx = GENERATORS.index(name)
        key = [0] * 5
        key[idx] = exp
        return cls({tuple(key): 1})

    @classmethod
    def i(cls) -> "RingExpr":
        return cls.const(GaussianRational(0, 1))

    @classmethod
    def rho(cls) -> "RingExpr":
        # (-1 + i s3)/2
        return cls({(0, 0, 0, 0, 0): Fraction(-1, 2), (0, 0, 0, 1, 0): GaussianRational(0, Fraction(1, 2))})

    @classmethod
    def rho_inv(cls) -> "RingExpr":
        return cls({(0, 0, 0, 0, 0): Fraction(-1, 2), (0, 0, 0, 1, 0): GaussianRational(0, Fraction(-1, 2))})

    @classmethod
    def zero(cls) -> "RingExpr":
        return cls()

    # -- structure
    @property
    def terms(self) -> tuple[tuple[Key, GaussianRational], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = RingExpr.const(other)
        return isinstance(other, RingExpr) and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __repr__(self):
        return f"RingExpr({self.to_text()!r})"

    # -- arithmetic
    @staticmethod
    def _lift(v) -> "RingExpr":
        return v if isinstance(v, RingExpr) else RingExpr.const(v)

    def __add__(self, other):
        other = self._lift(other)
        return RingExpr(list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __neg__(self):
        return RingExpr((k, -c) for k, c in self._terms)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        other = self._lift(other)
        out: list = []
        for ka, ca in self._terms:
            for kb, cb in other._terms:
                key, f = _mul_keys(ka, kb)
                out.append((key, ca * cb * f))
        return RingExpr(out)

    __rmul__ = __mul__

    def scale(self, c) -> "RingExpr":
        c = GaussianRational.of(c)
        return RingExpr((k, v * c) for k, v in self._terms)

    def __truediv__(self, c):
        if isinstance(c, RingExpr):
            raise TypeError("division is only by exact scalars")
        return self.scale(GaussianRational.of(c).inverse())

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not ring operations")
        result = RingExpr.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- calculus in z
    def substitute_z(self, q) -> "RingExpr":
        q = Fraction(q)
        return RingExpr(((k[0], k[1], k[2], k[3], 0), c * q ** k[4]) for k, c in self._terms)

    def differentiate_z(self) -> "RingExpr":
        return RingExpr(
            ((k[0], k[1], k[2], k[3], k[4] - 1), c * k[4]) for k, c in self._terms if k[4]
        )

    def degree_in(self, gen: str) -> int:
        """Largest exponent of ``gen``; -1 for the zero element."""
        idx = GENERATORS.index(gen)
        return max((k[idx] for k, _ in self._terms), default=-1)

    def min_degree_in(self, gen: str) -> int:
        idx = GENERATORS.index(gen)
        return min((k[idx] for k, _ in self._terms), default=0)

    # -- text form
    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, c in self._terms:
            mono = " * ".join(f"{g}^{e}" for g, e in zip(GENERATORS, k))
            parts.append(f"{c} * {mono}")
        return " + ".join(parts)

    __str__ = to_text

    _TERM = re.compile(
        r"\((?P<re>-?\d+(?:/\d+)?)(?P<sg>[+-])(?P<im>\d+(?:/\d+)?)i\)"
        r" \* pi\^(?P<pi>-?\d+) \* w\^(?P<w>\d+) \* wt\^(?P<wt>\d+) \* s3\^(?P<s3>[01]) \* z\^(?P<z>\d+)"
    )

    @classmethod
    def from_text(cls, text: str) -> "RingExpr":
        text = text.strip()
        if text == "0":
            return cls()
        out = []
        for chunk in text.split(" + "):
            m = cls._TERM.fullmatch(chunk.strip())
            if not m:
                raise ValueError(f"malformed term {chunk!r}")
            im = Fraction(m["im"]) * (-1 if m["sg"] == "-" else 1)
            key = (int(m["pi"]), int(m["w"]), int(m["wt"]), int(m["s3"]), int(m["z"]))
            out.append((key, GaussianRational(Fraction(m["re"]), im)))
        return cls(out)

    def to_json(self) -> list:
        return [
            {"coeff": [str(c.re), str(c.im)], "exponents": dict(zip(GENERATORS, k))}
            for k, c in self._terms
        ]


def eval_ring(e: RingExpr, consts: Constants, z=None) -> mpc:
    """Numeric value with the certified constants substituted.

    Call inside the precision context that produced ``consts``.
    """
    if z is not None:
        e = e.substitute_z(z)
    if e.degree_in("z") > 0:
        raise SymbolRemains("z is still symbolic; pass a value for z")
    total = mpc(0)
    for (pe, we, wte, se, _), c in e.terms:
        total += (
            c.to_mpc()
            * consts.pi**pe
            * consts.lemniscate**we
            * consts.lemniscate6**wte
            * (consts.sqrt3 if se else 1)
        )
    return total
