"""Identity verification suites and machine-readable reports.

Each check is registered under a stable identifier and belongs to one or
more suites.  A check returns a left-hand side, a right-hand side and some
bookkeeping; the runner times it, applies the relative-with-floor tolerance
and produces a ``VerificationRecord``.  Exact ring identities report the
number of mismatches as the left-hand side and zero as the right-hand side.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import partial
from typing import Callable

from mpmath import mp, mpc, mpf

from .bernoulli import zeta_even
from .closed_form import (
    K_closed,
    catalog_entry,
    bootstrap_check,
    diff_relation_check,
    eisenstein_exact,
    example_catalog,
    theorem1_rhs,
    theorem1_rhs_at,
    CatalogEntry,
)
from .errors import ConfigError
from .lattice import (
    Route,
    SeriesResult,
    TruncationPolicy,
    cauchy_mellin_sum,
    eisenstein_G_series,
    sinh_alternating_sum,
    sinh_eisenstein_G,
)
from .precision import PrecisionConfig, decimal_str, make_constants, to_mpf
from .qzeta import QParams, f_q, f_q_closed, q_two_pi, sinh_power_identity
from .ring import RingExpr, eval_ring
from .theta import K_coeff, LatticeBasis, TwistParams, hurwitz_function, hurwitz_number

SUITES = ("core", "theorem1", "catalog", "qzeta", "properties", "all")
FORMATS = ("text", "json", "csv")
ROUTES = {"accel": Route.row_accelerated, "naive": Route.naive_symmetric}


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = 256
    tolerance_exp: int = 30
    suite: str = "core"
    output_format: str = "text"
    max_m: int = 2000
    max_n: int = 256
    route: str = "accel"
    jobs: int = 1
    guard_bits: int = 32

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}")
        if self.output_format not in FORMATS:
            raise ConfigError(f"unknown format {self.output_format!r}")
        if self.route not in ROUTES:
            raise ConfigError(f"unknown route {self.route!r}")
        if self.tolerance_exp < 10:
            raise ConfigError("tolerance exponent must be >= 10")
        needed = 2 * self.tolerance_exp * 3.33 + 64
        if self.precision_bits + self.guard_bits < needed:
            raise ConfigError(
                f"{self.precision_bits} bits (+{self.guard_bits} guard) cannot certify 1e-{self.tolerance_exp};"
                f" need at least {math.ceil(needed)} working bits"
            )
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        try:
            self.policy()
            self.precision()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def precision(self) -> PrecisionConfig:
        return PrecisionConfig(self.precision_bits, self.guard_bits)

    def policy(self) -> TruncationPolicy:
        return TruncationPolicy(max_m=self.max_m, max_n=self.max_n)

    def series_route(self) -> Route:
        return ROUTES[self.route]

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Outcome:
    lhs: mpc
    rhs: mpc
    route: str
    terms_used: int = 0
    tol_exp: int | None = None
    note: str = ""


@dataclass(frozen=True)
class VerificationRecord:
    identity_id: str
    lhs_value: str
    rhs_value: str
    abs_diff: str
    tolerance: str
    passed: bool
    route: str
    terms_used: int
    wall_time: float
    note: str = ""

    def canonical(self) -> dict:
        d = asdict(self)
        d.pop("wall_time")
        return d


# -- registry ------------------------------------------------------------------

_CHECKS: dict[str, tuple[Callable[[RunConfig], Outcome], tuple[str, ...]]] = {}


def _register(identity_id: str, fn: Callable[[RunConfig], Outcome], suites: tuple[str, ...]) -> None:
    if identity_id in _CHECKS:
        raise ValueError(f"duplicate check {identity_id}")
    _CHECKS[identity_id] = (fn, suites)


def suite_ids(suite: str) -> list[str]:
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}")
    return sorted(i for i, (_, s) in _CHECKS.items() if suite == "all" or suite in s)


# -- shared evaluators -----------------------------------------------------------


def _basis(tag: str, pc: PrecisionConfig) -> LatticeBasis:
    return LatticeBasis.square(pc) if tag == "i" else LatticeBasis.hexagonal(pc)


def _G(cfg: RunConfig, k, r, params, basis) -> SeriesResult:
    return sinh_eisenstein_G(k, r, params, basis, cfg.policy(), cfg.series_route(), cfg.precision())


def evaluate_lhs(entry: CatalogEntry, cfg: RunConfig) -> tuple[mpc, int, str]:
    """Numeric left-hand side of a catalog identity: (value, terms used, route)."""
    pc = cfg.precision()
    basis = _basis(entry.basis_tag, pc)
    total = mpc(0)
    terms = 0
    route = cfg.series_route().value
    for t in entry.lhs:
        if t.kind == "G":
            res = _G(cfg, t.k, t.r, TwistParams(t.x, t.y, t.z), basis)
            val, terms = res.value, terms + res.terms_used
        elif t.kind == "eisenstein":
            res = eisenstein_G_series(t.k, basis.tau, pc, cfg.policy())
            val, terms = res.value, terms + res.terms_used
        elif t.kind == "axis":
            with pc.active():
                val = 2 * to_mpf(zeta_even(t.k)) * mp.pi**t.k / basis.tau**t.k
        else:
            raise ValueError(f"unknown term kind {t.kind}")
        with pc.active():
            total += to_mpf(t.coeff) * val
    return total, terms, route


def _ring_value(e: RingExpr, cfg: RunConfig, z=None) -> mpc:
    pc = cfg.precision()
    with pc.active():
        return eval_ring(e, make_constants(pc), z)


# -- catalog and Eisenstein checks --------------------------------------------------


def _catalog_check(identity_id: str, cfg: RunConfig) -> Outcome:
    entry = catalog_entry(identity_id)
    lhs, terms, route = evaluate_lhs(entry, cfg)
    return Outcome(lhs, _ring_value(entry.rhs, cfg), route, terms, entry.tol_digits, entry.description)


_CORE_CATALOG = {"1-11", "1-11-2", "4-2", "4-3", "4-4", "4-5", "4-6", "4-4-3"}

for _e in example_catalog():
    _register(
        _e.identity_id,
        partial(_catalog_check, _e.identity_id),
        ("catalog", "core") if _e.identity_id in _CORE_CATALOG else ("catalog",),
    )


def _eisenstein_check(l: int, tag: str, cfg: RunConfig) -> Outcome:
    pc = cfg.precision()
    res = eisenstein_G_series(l, _basis(tag, pc).tau, pc, cfg.policy())
    return Outcome(res.value, _ring_value(eisenstein_exact(l, tag), cfg), res.route.value, res.terms_used)


for _l, _tag in ((2, "i"), (4, "i"), (8, "i"), (12, "i"), (6, "rho"), (12, "rho")):
    _register(
        f"eisenstein-G{_l:02d}-{_tag}",
        partial(_eisenstein_check, _l, _tag),
        ("catalog", "core") if (_l, _tag) == (4, "i") else ("catalog",),
    )


def _hurwitz_two(cfg: RunConfig) -> Outcome:
    pc = cfg.precision()
    val = hurwitz_number(2, LatticeBasis.square(pc), pc)
    with pc.active():
        return Outcome(val, mpc(2 * mp.pi), "theta_kernel", 0, None, "H_2(1,i) = 2 pi")


_register("hurwitz-H02-i", _hurwitz_two, ("core", "catalog"))


def _bootstrap(cfg: RunConfig) -> Outcome:
    exact, numeric, _ = bootstrap_check(12, cfg.precision())
    pc = cfg.precision()
    with pc.active():
        return Outcome(mpc(numeric), mpc(to_mpf(exact)), "theta_kernel", 0, None, "recurrence H_12 vs Laurent extraction")


_register("hurwitz-H12-bootstrap", _bootstrap, ("catalog", "theorem1"))


# -- theorem checks on (1, i) --------------------------------------------------------

GRID_Z = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


def _zid(z: Fraction) -> str:
    return f"{z.numerator}_{z.denominator}"


def _admissible(k: int, r: int, z: Fraction) -> bool:
    return any(p.contains(z) for p in theorem1_rhs(k, r))


def _thm1_lattice(k: int, r: int, z: Fraction, cfg: RunConfig) -> Outcome:
    pc = cfg.precision()
    res = _G(cfg, k, r, TwistParams(0, 0, z), LatticeBasis.square(pc))
    with pc.active():
        lhs = mp.pi**r * res.value
    return Outcome(lhs, _ring_value(theorem1_rhs_at(k, r, z), cfg), res.route.value, res.terms_used)


def _k_routes(k: int, r: int, z: Fraction, cfg: RunConfig) -> Outcome:
    pc = cfg.precision()
    theta_val = K_coeff(k, r, TwistParams(0, 0, z), LatticeBasis.square(pc), pc)
    closed = _ring_value(K_closed(k, r, 0, 0, z, "i"), cfg)
    return Outcome(theta_val, closed, "theta_kernel", 0, 25, "theta-kernel vs closed form")


for _k in range(1, 6):
    for _r in range(1, 4):
        for _z in GRID_Z:
            if _admissible(_k, _r, _z):
                _register(f"thm1-k{_k}-r{_r}-z{_zid(_z)}", partial(_thm1_lattice, _k, _r, _z), ("theorem1",))
                _register(f"kroute-k{_k}-r{_r}-z{_zid(_z)}", partial(_k_routes, _k, _r, _z), ("theorem1",))


def _exact(mismatches: int, note: str) -> Outcome:
    return Outcome(mpc(mismatches), mpc(0), "exact", 0, None, note)


def _structure(cfg: RunConfig) -> Outcome:
    bad = 0
    for k in range(1, 7):
        for r in range(1, 5):
            for piece in theorem1_rhs(k, r):
                e = piece.expr
                for key, c in e.terms:
                    if key[0] < 0 or key[1] % 4 or key[2] or key[3] or c.im:
                        bad += 1
                if e.degree_in("pi") > k + r or e.degree_in("w") // 4 > (k + r) // 4 or e.degree_in("z") > k - 1:
                    bad += 1
    return _exact(bad, "membership in Q[pi, w^4, z] and degree bounds, k<=6, r<=4")


_register("thm1-structure", _structure, ("theorem1",))


def _specializations(cfg: RunConfig) -> Outcome:
    pi = RingExpr.gen("pi")
    half = Fraction(1, 2)
    checks = [
        theorem1_rhs_at(3, 1, half) == pi * catalog_entry("1-11").rhs,
        theorem1_rhs_at(5, 1, half) == pi * catalog_entry("1-11-2").rhs,
        # z = 0 and z = 1 add up to twice the coth sum
        theorem1_rhs_at(3, 1, 0) + theorem1_rhs_at(3, 1, 1) == pi * catalog_entry("aust-1").rhs * 2,
    ]
    return _exact(checks.count(False), "exact specializations z=1/2 (k=3,5) and endpoint sum")


_register("thm1-specializations", _specializations, ("theorem1",))


def _diff_exact(cfg: RunConfig) -> Outcome:
    bad = sum(not diff_relation_check(k, r).ok for k in range(3, 7) for r in range(1, 4))
    return _exact(bad, "formal d/dz relation, k=3..6, r=1..3")


_register("diffeq-exact", _diff_exact, ("theorem1", "properties"))


def _diff_fd(cfg: RunConfig) -> Outcome:
    pc = cfg.precision()
    with pc.active():
        basis = LatticeBasis(mpc(1), mpc(0, 2))
    res = diff_relation_check(3, 2, basis=basis, cfg=pc)
    lhs, rhs = res.details
    return Outcome(lhs, rhs, "finite_difference", 0, 15, "basis (1,2i), k=3, r=2, z=1/3")


_register("diffeq-fd-1_2i", _diff_fd, ("theorem1", "properties"))


# -- q-zeta and one-dimensional sums -------------------------------------------------


def _qzeta(k: int, cfg: RunConfig) -> Outcome:
    pc = cfg.precision()
    q = q_two_pi(pc)
    lhs = f_q(QParams(q, 2 * k, k), pc)
    return Outcome(lhs, f_q_closed(k).value(pc), "direct", 0, None, f"f_q({2 * k},{k}) at q=e^(-2 pi)")


for _k, _id in ((1, "5-12"), (2, "5-13"), (3, "5-14")):
    _register(_id, partial(_qzeta, _k), ("qzeta", "core"))


def _prop51(k: int, cfg: RunConfig) -> Outcome:
    direct, lattice = sinh_power_identity(k, cfg.precision(), cfg.policy())
    return Outcome(direct, lattice, cfg.series_route().value, 0, None, "sinh power sum vs lattice sum")


for _k in range(1, 5):
    _register(f"sinh-power-k{_k}", partial(_prop51, _k), ("qzeta",))


def _rel_g1(k: int, cfg: RunConfig) -> Outcome:
    pc = cfg.precision()
    basis = LatticeBasis.square(pc)
    h = TwistParams(0, 0, Fraction(1, 2))
    a = _G(cfg, 1, 2 * k + 1, h, basis)
    b = _G(cfg, 2, 2 * k, h, basis)
    with pc.active():
        return Outcome(a.value, b.value / mp.pi, a.route.value, a.terms_used + b.terms_used)


for _k in (1, 2):
    _register(f"rel-G1-k{_k}", partial(_rel_g1, _k), ("qzeta",))


def _cauchy_mellin(k: int, cfg: RunConfig) -> Outcome:
    lhs, rhs, _ = cauchy_mellin_sum(k, cfg.precision())
    return Outcome(lhs, rhs, "direct", 0, None, f"exponent {4 * k + 3}")


for _k in range(3):
    _register(f"cauchy-mellin-k{_k}", partial(_cauchy_mellin, _k), ("qzeta",))


def _alt_sum(j: int, cfg: RunConfig) -> Outcome:
    pc = cfg.precision()
    lhs = sinh_alternating_sum(j, pc)
    with pc.active():
        rhs = mpc(-1 / (4 * mp.pi)) if j == -1 else mpc(0)
    return Outcome(lhs, rhs, "direct")


for _j in (-1, -5, -9):
    _register(f"sinh-alternating-j{_j}", partial(_alt_sum, _j), ("qzeta",))


# -- properties ----------------------------------------------------------------------

HENKAN_TAUS = {"i": (0, 1), "2i": (0, 2), "(1+3i)/2": (Fraction(1, 2), Fraction(3, 2))}


def _tau(spec, pc: PrecisionConfig) -> mpc:
    with pc.active():
        return mpc(to_mpf(Fraction(spec[0])), to_mpf(Fraction(spec[1])))


def _henkan(name: str, cfg: RunConfig) -> Outcome:
    pc = cfg.precision()
    tau = _tau(HENKAN_TAUS[name], pc)
    h = TwistParams(0, 0, Fraction(1, 2))
    with pc.active():
        b1, b2 = LatticeBasis.from_tau(tau), LatticeBasis.from_tau(-1 / tau)
    a = _G(cfg, 1, 1, h, b1)
    b = _G(cfg, 1, 1, h, b2)
    with pc.active():
        rhs = -2 + (tau**2 - 1) * mp.pi / (3j * tau)
        return Outcome(a.value + b.value, rhs, a.route.value, a.terms_used + b.terms_used, 25)


for _name in HENKAN_TAUS:
    _register(f"reciprocity-tau={_name}", partial(_henkan, _name), ("properties",))

H2_TAUS = {"i": (0, 1), "2i": (0, 2), "1/2+i": (Fraction(1, 2), 1), "rho": None}


def _h2_rel(name: str, cfg: RunConfig) -> Outcome:
    pc = cfg.precision()
    spec = H2_TAUS[name]
    tau = make_constants(pc).rho if spec is None else _tau(spec, pc)
    with pc.active():
        b1, b2 = LatticeBasis.from_tau(tau), LatticeBasis.from_tau(-1 / tau)
    h1 = hurwitz_function(2, 0, 0, b1, pc)
    h2 = hurwitz_function(2, 0, 0, b2, pc)
    with pc.active():
        return Outcome(h2, tau**2 * h1 - 4j * mp.pi * tau, "theta_kernel")


for _name in H2_TAUS:
    _register(f"h2-modular-tau={_name}", partial(_h2_rel, _name), ("properties",))


def _parity(k: int, r: int, cfg: RunConfig) -> Outcome:
    pc = cfg.precision()
    res = _G(cfg, k, r, TwistParams(0, 0, Fraction(1, 2)), LatticeBasis.square(pc))
    return Outcome(mpc(abs(res.value)), mpc(0), res.route.value, res.terms_used)


for _k in range(1, 7):
    for _r in range(1, 7):
        if (_k - _r) % 2 and not (_k == 1 and _r % 2 == 0):
            _register(f"parity-k{_k}-r{_r}", partial(_parity, _k, _r), ("properties",))


# -- runner ----------------------------------------------------------------------------


def run_check(identity_id: str, cfg: RunConfig) -> VerificationRecord:
    fn, _ = _CHECKS[identity_id]
    pc = cfg.precision()
    start = time.perf_counter()
    out = fn(cfg)
    elapsed = time.perf_counter() - start
    tol_exp = cfg.tolerance_exp if out.tol_exp is None else min(cfg.tolerance_exp, out.tol_exp)
    with pc.active():
        lhs, rhs = mpc(out.lhs), mpc(out.rhs)
        diff = abs(lhs - rhs)
        tol = mpf(10) ** (-tol_exp)
        passed = bool(diff <= tol * max(1, abs(lhs), abs(rhs)))
        digits = pc.digits
        return VerificationRecord(
            identity_id,
            decimal_str(lhs, digits),
            decimal_str(rhs, digits),
            mp.nstr(diff, 10),
            f"1e-{tol_exp}",
            passed,
            out.route,
            int(out.terms_used),
            round(elapsed, 4),
            out.note,
        )


def _run_check_safe(identity_id: str, cfg: RunConfig) -> VerificationRecord:
    try:
        return run_check(identity_id, cfg)
    except Exception as exc:  # a crashing check is a failed check, not a crashed run
        return VerificationRecord(identity_id, "", "", "", f"1e-{cfg.tolerance_exp}", False, "error", 0, 0.0, f"{type(exc).__name__}: {exc}")


@dataclass
class Report:
    config: RunConfig
    records: list[VerificationRecord] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.records)

    @property
    def failed(self) -> int:
        return len(self.records) - self.passed

    def as_dict(self, canonical: bool = False) -> dict:
        recs = [r.canonical() if canonical else asdict(r) for r in self.records]
        return {
            "schema": 1,
            "config": self.config.as_dict(),
            "records": recs,
            "summary": {"passed": self.passed, "failed": self.failed},
        }


def run_suite(cfg: RunConfig, ids: list[str] | None = None) -> Report:
    ids = suite_ids(cfg.suite) if ids is None else sorted(ids)
    if cfg.jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            records = list(pool.map(_run_check_safe, ids, [cfg] * len(ids)))
    else:
        records = [_run_check_safe(i, cfg) for i in ids]
    records.sort(key=lambda r: r.identity_id)
    return Report(cfg, records)
