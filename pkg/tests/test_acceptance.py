"""One test per acceptance criterion, each at its stated tolerance.

Every test records a PASS/FAIL line which the terminal summary prints; see
conftest.py.  Reference constants are rebuilt here from mpmath's gamma
function rather than taken from the package.
"""

import math
import random
import time
from fractions import Fraction

import pytest
from mpmath import mp, mpc, mpf

from conftest import ACCEPTANCE
from hsze.bernoulli import bernoulli_poly, bernoulli_poly_high
from hsze.closed_form import (
    K_closed,
    catalog_entry,
    diff_relation_check,
    hurwitz_H,
    theorem1_rhs,
    theorem1_rhs_at,
)
from hsze.lattice import cauchy_mellin_sum, eisenstein_G, naive_box, sinh_alternating_sum, sinh_eisenstein_G
from hsze.precision import PrecisionConfig, make_constants
from hsze.qzeta import QParams, f_q, q_two_pi, sinh_power_identity
from hsze.ring import RingExpr, eval_ring
from hsze.theta import (
    K_coeff,
    LatticeBasis,
    TwistParams,
    gen_D,
    gen_E,
    gen_K,
    hurwitz_function,
    hurwitz_number,
    laurent_coeffs,
    theta,
)
from hsze.verify import RunConfig, evaluate_lhs

CFG = PrecisionConfig(256)
half = Fraction(1, 2)


def tol(e):
    return mpf(10) ** -e


def ref_constants():
    """(pi, varpi, varpi-tilde) from the gamma function, independent of the package."""
    pi = mp.pi
    w = mp.gamma(mpf(1) / 4) ** 2 / (2 * mp.sqrt(2 * pi))
    wt = mp.gamma(mpf(1) / 3) ** 3 / (mpf(2) ** (mpf(4) / 3) * pi)
    return pi, w, wt


def exact_tau(re_, im_):
    re_, im_ = Fraction(re_), Fraction(im_)
    return mpc(mpf(re_.numerator) / re_.denominator, mpf(im_.numerator) / im_.denominator)


def record(n, ok, detail):
    ACCEPTANCE[n] = (bool(ok), detail)
    return ok


def G_i(k, r, z=half, x=0, y=0):
    with CFG.active():
        return sinh_eisenstein_G(k, r, TwistParams(x, y, z), LatticeBasis.square(CFG), cfg=CFG)


def test_criterion_01():
    start = time.perf_counter()
    res = G_i(3, 1)
    elapsed = time.perf_counter() - start
    with CFG.active():
        pi, w, _ = ref_constants()
        diff = abs(res.value - (w**4 / (15 * pi) - 7 * pi**3 / 90 + pi**2 / 6))
    ok = diff <= tol(35) and elapsed < 1
    record(1, ok, f"G_3^<1>(i) diff={mp.nstr(diff, 3)} (<=1e-35), {elapsed:.3f}s (<1s)")
    assert ok


@pytest.mark.xfail(strict=True, reason="the printed constant term -7pi^4/720 is off by a factor 2; see test_criterion_02_corrected")
def test_criterion_02():
    res = G_i(5, 1)
    with CFG.active():
        pi, w, _ = ref_constants()
        literal = -(w**4) * pi / 90 + 31 * pi**5 / 2520 - 7 * pi**4 / 720
        corrected = -(w**4) * pi / 90 + 31 * pi**5 / 2520 - 7 * pi**4 / 360
        diff = abs(res.value - literal)
        diff_c = abs(res.value - corrected)
    ok = diff <= tol(35)
    record(
        2,
        ok,
        f"G_5^<1>(i) vs stated value diff={mp.nstr(diff, 5)} (<=1e-35); "
        f"with -7pi^4/360 diff={mp.nstr(diff_c, 3)}",
    )
    assert ok


def test_criterion_02_corrected():
    # the same series against the constant term -7pi^4/360, which the
    # theta-kernel route, the general evaluation formula and a brute-force
    # box sum all reproduce
    res = G_i(5, 1)
    with CFG.active():
        pi, w, _ = ref_constants()
        corrected = -(w**4) * pi / 90 + 31 * pi**5 / 2520 - 7 * pi**4 / 360
        assert abs(res.value - corrected) <= tol(35)
        theorem = eval_ring(theorem1_rhs_at(5, 1, half), make_constants(CFG)) / pi
        kernel = K_coeff(5, 1, TwistParams(0, 0, half), LatticeBasis.square(CFG), CFG) / (-120 * pi)
        assert abs(theorem - corrected) <= tol(35)
        assert abs(kernel - corrected) <= tol(35)
    box, _ = naive_box(5, 1, TwistParams(0, 0, half), LatticeBasis.square(CFG), 40, 400, PrecisionConfig(64))
    with mp.workprec(64):
        assert abs(box - corrected) < mpf(10) ** -9


SQUARE_IDS = ["aust-1", "4-2", "4-3", "4-4", "4-5", "4-6", "4-4-2", "4-4-3", "aust-2"]
HEX_IDS = ["e-16", "e-17", "e-18", "e-19", "e-20", "aust-3"]


def test_criterion_03():
    rc = RunConfig()
    worst = {}
    bad = []
    for ids, e in ((SQUARE_IDS, 30), (HEX_IDS, 25)):
        for ident in ids:
            entry = catalog_entry(ident)
            lhs, _, _ = evaluate_lhs(entry, rc)
            with CFG.active():
                diff = abs(lhs - eval_ring(entry.rhs, make_constants(CFG)))
            worst[e] = max(worst.get(e, mpf(0)), diff)
            if diff > tol(e):
                bad.append(ident)
    ok = not bad
    record(3, ok, f"catalog: (1,i) max diff={mp.nstr(worst[30], 3)} (<=1e-30), (1,rho) max diff={mp.nstr(worst[25], 3)} (<=1e-25) {bad or ''}")
    assert ok


def test_criterion_04():
    with CFG.active():
        pi, w, wt = ref_constants()
        rho = mpc(-0.5, mp.sqrt(3) / 2)
        cases = {
            "G4(i)": (eisenstein_G(4, mpc(0, 1), CFG), w**4 / 15),
            "G8(i)": (eisenstein_G(8, mpc(0, 1), CFG), w**8 / 525),
            "G12(i)": (eisenstein_G(12, mpc(0, 1), CFG), 2 * w**12 / 53625),
            "G2(i)": (eisenstein_G(2, mpc(0, 1), CFG), -pi),
            "G6(rho)": (eisenstein_G(6, rho, CFG), wt**6 / 35),
            "G12(rho)": (eisenstein_G(12, rho, CFG), wt**12 / 7007),
        }
        diffs = {name: abs(a - b) for name, (a, b) in cases.items()}
    worst = max(diffs.values())
    ok = worst <= tol(30)
    record(4, ok, f"Eisenstein values at i and rho, max diff={mp.nstr(worst, 3)} (<=1e-30)")
    assert ok


def grid_cells():
    for k in range(1, 6):
        for r in range(1, 4):
            for z in (Fraction(1, 4), half, Fraction(3, 4)):
                # k = 1 needs r z non-integral: only (r, z) = (2, 1/2) is excluded
                if k == 1 and (r * z).denominator == 1:
                    continue
                yield k, r, z


def test_criterion_05():
    basis = LatticeBasis.square(CFG)
    consts = make_constants(CFG)
    worst = mpf(0)
    cells = list(grid_cells())
    for k, r, z in cells:
        params = TwistParams(0, 0, z)
        kernel = K_coeff(k, r, params, basis, CFG)
        res = sinh_eisenstein_G(k, r, params, basis, cfg=CFG)
        with CFG.active():
            lattice = -mp.factorial(k) * (mp.pi * 1j / basis.omega2) ** r * res.value
            closed = eval_ring(K_closed(k, r, 0, 0, z, "i"), consts)
            worst = max(worst, abs(kernel - lattice), abs(kernel - closed), abs(lattice - closed))
    ok = worst <= tol(25) and len(cells) == 44
    record(5, ok, f"three routes on {len(cells)} grid cells, max pairwise diff={mp.nstr(worst, 3)} (<=1e-25)")
    assert ok


def test_criterion_06():
    problems = []
    for k in range(1, 7):
        for r in range(1, 5):
            for piece in theorem1_rhs(k, r):
                e = piece.expr
                for key, c in e.terms:
                    # Q[pi, w^4, z]: rational coefficients, no varpi-tilde or sqrt 3
                    if c.im or key[0] < 0 or key[1] % 4 or key[2] or key[3]:
                        problems.append((k, r, "ring"))
                if e.degree_in("pi") > k + r or e.degree_in("w") // 4 > (k + r) // 4 or e.degree_in("z") > k - 1:
                    problems.append((k, r, "degree"))
    P, W = RingExpr.gen("pi"), RingExpr.gen("w")
    pinv = RingExpr.gen("pi", -1)
    F = Fraction
    eq_111 = W**4 * pinv / 15 - P**3 * F(7, 90) + P**2 / 6
    eq_1112 = -(W**4) * P / 90 + P**5 * F(31, 2520) - P**4 * F(7, 360)
    aust1 = W**4 * pinv / 15 + P**3 * F(4, 45) - P**2 / 3
    specs = [
        theorem1_rhs_at(3, 1, half) == P * eq_111,
        theorem1_rhs_at(5, 1, half) == P * eq_1112,
        # z = 0 and z = 1 add to 2 pi times the coth sum
        theorem1_rhs_at(3, 1, 0) + theorem1_rhs_at(3, 1, 1) == P * aust1 * 2,
    ]
    ok = not problems and all(specs)
    record(6, ok, f"ring membership and degree bounds k<=6, r<=4: {len(problems)} violations; specializations exact: {specs}")
    assert ok


def test_criterion_07():
    exact = [diff_relation_check(k, r) for k in range(3, 7) for r in range(1, 4)]
    with CFG.active():
        basis = LatticeBasis(mpc(1), mpc(0, 2))
    fd = diff_relation_check(3, 2, basis=basis, cfg=CFG)
    ok = all(c.ok and c.mode == "exact" for c in exact) and fd.residual <= tol(15)
    record(7, ok, f"exact d/dz relation on {len(exact)} (k,r) pairs; finite-difference residual on (1,2i)={mp.nstr(fd.residual, 3)} (<=1e-15)")
    assert ok


def test_criterion_08():
    worst_cm = max(abs(cauchy_mellin_sum(k, CFG)[2]) for k in range(3))
    with CFG.active():
        pi = mp.pi
        s1 = abs(sinh_alternating_sum(-1, CFG) + 1 / (4 * pi))
        s5 = abs(sinh_alternating_sum(-5, CFG))
        s9 = abs(sinh_alternating_sum(-9, CFG))
    worst = max(worst_cm, s1, s5, s9)
    ok = worst <= tol(35)
    record(8, ok, f"Cauchy-Mellin k=0,1,2 max diff={mp.nstr(worst_cm, 3)}; alternating sinh sums max diff={mp.nstr(max(s1, s5, s9), 3)} (<=1e-35)")
    assert ok


def test_criterion_09():
    q = q_two_pi(CFG)
    with CFG.active():
        pi, w, _ = ref_constants()
        one_q = 1 - mp.exp(-2 * pi)
        printed = {
            1: one_q**2 / 8 * (mpf(1) / 3 - 1 / pi),
            2: one_q**4 / 32 * (w**4 / (15 * pi**4) - mpf(11) / 45 + 2 / (3 * pi)),
            3: -(one_q**6) / 128 * (w**4 / (15 * pi**4) - mpf(191) / 945 + 8 / (15 * pi)),
        }
    dq = max(abs(f_q(QParams(q, 2 * k, k), CFG) - printed[k]) for k in (1, 2, 3))
    dp = mpf(0)
    for k in range(1, 5):
        direct, lattice = sinh_power_identity(k, CFG)
        dp = max(dp, abs(direct - lattice))
    dr = mpf(0)
    for k in (1, 2):
        a = G_i(1, 2 * k + 1).value
        b = G_i(2, 2 * k).value
        with CFG.active():
            dr = max(dr, abs(a - b / mp.pi))
    ok = dq <= tol(35) and dp <= tol(30) and dr <= tol(30)
    record(9, ok, f"q-zeta printed values diff={mp.nstr(dq, 3)} (<=1e-35); sinh-power routes k<=4 diff={mp.nstr(dp, 3)}; G_1/G_2 relation diff={mp.nstr(dr, 3)} (<=1e-30)")
    assert ok


def test_criterion_10():
    worst_rec = mpf(0)
    for re_, im_ in ((0, 1), (0, 2), (half, Fraction(3, 2))):
        with CFG.active():
            tau = exact_tau(re_, im_)
            b1, b2 = LatticeBasis.from_tau(tau), LatticeBasis.from_tau(-1 / tau)
        h = TwistParams(0, 0, half)
        a = sinh_eisenstein_G(1, 1, h, b1, cfg=CFG).value
        b = sinh_eisenstein_G(1, 1, h, b2, cfg=CFG).value
        with CFG.active():
            rhs = -2 + (tau**2 - 1) * mp.pi / (3j * tau)
            worst_rec = max(worst_rec, abs(a + b - rhs))
    worst_par = mpf(0)
    cells = 0
    for k in range(1, 7):
        for r in range(1, 7):
            if (k - r) % 2 == 0 or (k == 1 and r % 2 == 0):
                continue
            cells += 1
            worst_par = max(worst_par, abs(G_i(k, r).value))
    ok = worst_rec <= tol(25) and worst_par <= tol(30)
    record(10, ok, f"reciprocity at 3 tau max diff={mp.nstr(worst_rec, 3)} (<=1e-25); parity on {cells} cells max |G|={mp.nstr(worst_par, 3)} (<=1e-30)")
    assert ok


def _theta_properties(rng):
    worst = mpf(0)
    with CFG.active():
        tau = mpc("0.3", "1.1")
        for _ in range(20):
            z = mpc(rng.uniform(-2, 2), rng.uniform(-1.5, 1.5))
            t = theta(z, tau, 0, CFG)
            scale = max(1, abs(t))
            worst = max(
                worst,
                abs(theta(z + 1, tau, 0, CFG) + t) / scale,
                abs(theta(z + tau, tau, 0, CFG) + mp.exp(-1j * mp.pi * tau - 2j * mp.pi * z) * t) / scale,
            )
        for _ in range(20):
            z = mpc(rng.uniform(-2, 2), rng.uniform(-1.5, 1.5))
            t = theta(z, tau, 0, CFG)
            worst = max(worst, abs(theta(-z, tau, 0, CFG) + t) / max(1, abs(t)))
    return worst


def _h2_relation():
    worst = mpf(0)
    with CFG.active():
        taus = [exact_tau(0, 1), exact_tau(0, 2), exact_tau(half, 1), mpc(-0.5, mp.sqrt(3) / 2)]
    for tau in taus:
        with CFG.active():
            b1, b2 = LatticeBasis.from_tau(tau), LatticeBasis.from_tau(-1 / tau)
        h1 = hurwitz_function(2, 0, 0, b1, CFG)
        h2 = hurwitz_function(2, 0, 0, b2, CFG)
        with CFG.active():
            worst = max(worst, abs(h2 - (tau**2 * h1 - 4j * mp.pi * tau)))
    return worst


def _bernoulli_invariants():
    ok = all(bernoulli_poly_high(m, 1) == bernoulli_poly(m) for m in range(15))
    ok &= all(bernoulli_poly_high(m, r)(half) == 0 for m in range(1, 14, 2) for r in range(1, 6))
    pts = [Fraction(-3, 2), Fraction(0), Fraction(1, 3), Fraction(5, 7)]
    for m in range(9):
        for r in (1, 2, 3):
            for s in (1, 2):
                for x in pts:
                    for y in pts:
                        lhs = bernoulli_poly_high(m, r + s)((r * x + s * y) / (r + s))
                        rhs = sum(math.comb(m, j) * bernoulli_poly_high(j, r)(x) * bernoulli_poly_high(m - j, s)(y) for j in range(m + 1))
                        ok &= lhs == rhs
    return ok


def _contour_independence():
    worst = mpf(0)
    basis = LatticeBasis.square(CFG)
    params = TwistParams(Fraction(1, 3), Fraction(1, 5), Fraction(2, 7))
    untw = TwistParams(0, 0, Fraction(1, 3))
    with CFG.active():
        R = basis.default_radius()
        fns = [
            (lambda t: gen_E(t, 0, 0, basis, CFG), 1),
            (lambda t: gen_E(t, params.x, params.y, basis, CFG), 1),
            (lambda t: gen_D(t, 2, untw, basis, CFG), 3),
            (lambda t: gen_D(t, 2, params, basis, CFG), 3),
            (lambda t: gen_K(t, 2, untw, basis, CFG), 0),
            (lambda t: gen_K(t, 3, params, basis, CFG), 0),
        ]
        for f, order in fns:
            a = laurent_coeffs(f, order, 8, R, CFG)
            b = laurent_coeffs(f, order, 8, R * mpf("1.7"), CFG)
            worst = max(worst, max(abs(a.coeff(j) - b.coeff(j)) / max(1, abs(a.coeff(j))) for j in range(-order, 8 - order)))
    return worst


def _limit_order_trend():
    # k = 1: boxes (T,T), (T,2T), (2T,T) approach a common limit
    basis = LatticeBasis.square(CFG)
    low = PrecisionConfig(64)
    params = TwistParams(0, Fraction(1, 7), Fraction(1, 3))
    target = sinh_eisenstein_G(1, 1, params, basis, cfg=low).value
    spread = []
    for T in (100, 200):
        vals = [naive_box(1, 1, params, basis, M, N, low)[0] for M, N in ((T, T), (T, 2 * T), (2 * T, T))]
        with low.active():
            spread.append(max(abs(v - target) for v in vals))
    return spread


def test_criterion_11():
    theta_worst = _theta_properties(random.Random(20261016))
    h2 = _h2_relation()
    bern = _bernoulli_invariants()
    contour = _contour_independence()
    trend = _limit_order_trend()
    ok = theta_worst <= tol(60) and h2 <= tol(30) and bern and contour <= tol(35) and trend[1] < trend[0] < 1
    record(
        11,
        ok,
        f"theta periodicity/oddness {mp.nstr(theta_worst, 3)}; H_2 modular {mp.nstr(h2, 3)}; Bernoulli exact {bern}; "
        f"contour radius {mp.nstr(contour, 3)} (<=1e-35); k=1 box spread {mp.nstr(trend[0], 3)} -> {mp.nstr(trend[1], 3)}",
    )
    assert ok


def test_criterion_12():
    with CFG.active():
        _, w, _ = ref_constants()
        numeric = hurwitz_number(12, LatticeBasis.square(CFG), CFG) / (-((2 * w) ** 12))
        H12 = hurwitz_H(12)
        diff = abs(numeric - mpf(H12.numerator) / H12.denominator)
    ok = H12 == Fraction(567, 130) and diff <= tol(30)
    record(12, ok, f"H_12 = {H12} from the recurrence vs Laurent extraction diff={mp.nstr(diff, 3)} (<=1e-30)")
    assert ok
