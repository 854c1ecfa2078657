from fractions import Fraction

import pytest
from mpmath import mp, mpc, mpf

from hsze.closed_form import (
    G_closed,
    K_closed,
    bootstrap_check,
    catalog_entry,
    diff_relation_check,
    eisenstein_exact,
    example_catalog,
    hurwitz_H,
    hurwitz_symbolic,
    theorem1_rhs,
    theorem1_rhs_at,
)
from hsze.errors import InadmissibleParameters, NotCatalogued
from hsze.lattice import sinh_eisenstein_G
from hsze.precision import PrecisionConfig, make_constants
from hsze.ring import RingExpr, eval_ring
from hsze.theta import K_coeff, LatticeBasis, TwistParams

P, W, Z = RingExpr.gen("pi"), RingExpr.gen("w"), RingExpr.gen("z")
F = Fraction
half = F(1, 2)


def poly(*coeffs):
    out = RingExpr.zero()
    for j, c in enumerate(coeffs):
        out = out + c * Z**j
    return out


# pi times the sinh series on (1, i), linear, quadratic and cubic in z
LINEAR = poly(-P**3 / 3 + P**2, P**3 * F(2, 3) - P**2 * 2)
QUADRATIC = poly(
    W**4 / 15 + P**4 * F(4, 45) - P**3 / 3,
    -P**4 * F(2, 3) + P**3 * 2,
    P**4 * F(2, 3) - P**3 * 2,
)
CUBIC = poly(
    -P * W**4 / 15 + P**5 / 45,
    P * W**4 * F(2, 15) + P**5 * F(8, 45) - P**4 * F(2, 3),
    -P**5 * F(2, 3) + P**4 * 2,
    P**5 * F(4, 9) - P**4 * F(4, 3),
)


@pytest.mark.parametrize("k,expected", [(2, LINEAR), (3, QUADRATIC), (4, CUBIC)])
def test_worked_examples(k, expected):
    for piece in theorem1_rhs(k, 1):
        if piece.lo < piece.hi:
            assert piece.expr == expected
    assert theorem1_rhs_at(k, 1, F(1, 3)) == expected.substitute_z(F(1, 3))


def test_quadratic_example_at_half_and_endpoints():
    assert QUADRATIC.substitute_z(half) == W**4 / 15 - P**4 * F(7, 90) + P**3 / 6
    assert theorem1_rhs_at(3, 1, 1) == QUADRATIC.substitute_z(1)
    assert LINEAR.degree_in("z") == 1


def test_intervals_partition(cfg):
    pieces = theorem1_rhs(3, 3)
    assert [p.tag() for p in pieces] == ["[0,1/3)", "[1/3,2/3)", "[2/3,1)", "[1,1]"]
    assert [p.tag() for p in theorem1_rhs(1, 2)] == ["(0,1/2)", "(1/2,1)"]
    with pytest.raises(InadmissibleParameters):
        theorem1_rhs_at(1, 2, half)
    with pytest.raises(InadmissibleParameters):
        theorem1_rhs_at(2, 1, 0)


@pytest.mark.parametrize("k,r", [(k, r) for k in range(1, 7) for r in range(1, 5)])
def test_structure_and_degree(k, r):
    for piece in theorem1_rhs(k, r):
        e = piece.expr
        assert e.degree_in("z") <= k - 1
        assert e.degree_in("pi") <= k + r
        assert e.degree_in("w") // 4 <= (k + r) // 4
        for key, c in e.terms:
            assert c.im == 0 and key[0] >= 0 and key[1] % 4 == 0 and key[2] == key[3] == 0


@pytest.mark.parametrize("k,r,z", [(2, 1, F(1, 3)), (3, 2, F(3, 4)), (4, 3, F(1, 5)), (5, 2, 1)])
def test_theorem_matches_lattice(cfg, square, k, r, z):
    with cfg.active():
        lhs = mp.pi**r * sinh_eisenstein_G(k, r, TwistParams(0, 0, z), square, cfg=cfg).value
        rhs = eval_ring(theorem1_rhs_at(k, r, z), make_constants(cfg))
        assert abs(lhs - rhs) < mpf(10) ** -70 * max(1, abs(rhs))


def test_K_closed_examples(cfg, consts):
    with cfg.active():
        v = eval_ring(K_closed(1, 1, 0, 0, half, "i"), consts)
        assert abs(v - (consts.pi - consts.pi**2 / 3)) < mpf(10) ** -70
        v = eval_ring(K_closed(3, 1, 0, 0, half, "i"), consts)
        ref = -6 * (consts.lemniscate**4 / 15 - 7 * consts.pi**4 / 90 + consts.pi**3 / 6)
        assert abs(v - ref) < mpf(10) ** -70


@pytest.mark.parametrize("params", [TwistParams(0, 0, F(1, 3)), TwistParams(F(1, 4), F(1, 2), F(2, 5))])
def test_K_closed_generic_basis(params):
    low = PrecisionConfig(128)
    with low.active():
        b = LatticeBasis(mpc(1), mpc(0, 2))
    val = K_closed(3, 2, params.x, params.y, params.z, b, low)
    with low.active():
        assert abs(val - K_coeff(3, 2, params, b, low)) < mpf(10) ** -30 * max(1, abs(val))


def test_K_closed_hexagonal_matches_series(cfg, hexagonal, consts):
    with cfg.active():
        exact = eval_ring(G_closed(4, 2, F(1, 3), "rho"), consts)
        num = sinh_eisenstein_G(4, 2, TwistParams(0, 0, F(1, 3)), hexagonal, cfg=cfg).value
        assert abs(exact - num) < mpf(10) ** -60 * max(1, abs(num))


def test_K_closed_inadmissible():
    with pytest.raises(InadmissibleParameters):
        K_closed(1, 2, 0, 0, half, "i")
    with pytest.raises(InadmissibleParameters):
        K_closed(2, 1, 0, 0, 0, "i")


def test_exact_hurwitz_and_eisenstein(cfg, consts):
    assert hurwitz_H(12) == F(567, 130)
    assert all(hurwitz_H(l) == 0 for l in (2, 6, 10))
    assert eisenstein_exact(4, "i") == W**4 / 15
    assert eisenstein_exact(8, "i") == W**8 / 525
    assert eisenstein_exact(12, "i") == W**12 * F(2, 53625)
    assert eisenstein_exact(12, "rho") == RingExpr.gen("wt", 12) / 7007
    assert hurwitz_symbolic(2, "i") == P * 2
    with cfg.active():
        assert abs(eval_ring(hurwitz_symbolic(4, "i"), consts) + 24 * consts.lemniscate**4 / 15) < mpf(10) ** -70


def test_bootstrap_at_lower_order(cfg):
    exact, numeric, diff = bootstrap_check(8, cfg)
    assert exact == F(3, 10) and diff < mpf(10) ** -60


@pytest.mark.parametrize("k,r", [(k, r) for k in range(3, 7) for r in range(1, 4)])
def test_diff_relation_exact(k, r):
    res = diff_relation_check(k, r)
    assert res.ok and res.mode == "exact"


def test_diff_relation_spelled_out():
    # on (1, i) with r = 1 the relation reads d/dz R_k = 2 pi R_{k-1}
    # for the polynomials R_k = -K_k/k! above
    assert QUADRATIC.differentiate_z() == LINEAR * P * 2
    assert CUBIC.differentiate_z() == QUADRATIC * P * 2


def test_diff_relation_hexagonal():
    assert diff_relation_check(4, 2, basis="rho").ok


def test_diff_relation_numeric(cfg):
    with cfg.active():
        b = LatticeBasis(mpc(1), mpc(0, 2))
    res = diff_relation_check(3, 2, basis=b, cfg=cfg)
    assert res.mode == "finite_difference" and res.residual <= mpf(10) ** -15


def test_catalog_lookup():
    ids = [e.identity_id for e in example_catalog()]
    assert ids == sorted(ids) and len(set(ids)) == len(ids)
    assert {"1-11", "1-11-2", "aust-1", "aust-2", "aust-3", "e-16", "e-20"} <= set(ids)
    assert catalog_entry("1-11").rhs == W**4 / 15 * RingExpr.gen("pi", -1) - P**3 * F(7, 90) + P**2 / 6
    with pytest.raises(NotCatalogued):
        catalog_entry("no-such-identity")
