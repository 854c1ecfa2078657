"""Derivatives of u^c/(u-1) with respect to log u.

With D = u d/du and w = 1/(u-1) one has D w = -(w + w^2) and D u^c = c u^c, so

    D^j [u^c w] = u^c q_j(w)

for a polynomial q_j with exact rational coefficients and no constant term.
Both the Lerch closed form and the Bernoulli generating function are of this
shape, so their derivatives reduce to evaluating q_j.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from mpmath import mpf


@lru_cache(maxsize=None)
def log_derivative_poly(c: Fraction, j: int) -> tuple[Fraction, ...]:
    """Coefficients (constant term first) of q_j."""
    q = [Fraction(0), Fraction(1)]
    for _ in range(j):
        nxt = [Fraction(0)] * (len(q) + 1)
        for i, a in enumerate(q):
            if not a:
                continue
            nxt[i] += c * a
            # -(w + w^2) * d/dw (a w^i)
            if i:
                nxt[i] -= i * a
                nxt[i + 1] -= i * a
        q = nxt
    return tuple(q)


def eval_log_derivative(c: Fraction, j: int, w):
    """q_j(w) by Horner; ``w`` is any mpmath number."""
    acc = mpf(0)
    for a in reversed(log_derivative_poly(Fraction(c), j)):
        acc = acc * w + mpf(a.numerator) / a.denominator
    return acc
