"""Gate: the exact Hurwitz numbers from the Weierstrass recurrence must agree
with the theta-kernel Laurent extraction before the symbolic layer is used."""

from fractions import Fraction

from mpmath import mpf

from hsze.closed_form import bootstrap_check, hurwitz_H


def test_seed_values():
    assert hurwitz_H(4) == Fraction(1, 10)
    assert hurwitz_H(8) == Fraction(3, 10)


def test_h12_matches_numeric(cfg):
    exact, numeric, diff = bootstrap_check(12, cfg)
    assert exact == Fraction(567, 130)
    assert diff <= mpf(10) ** -30
