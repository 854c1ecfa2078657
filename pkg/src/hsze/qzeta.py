"""q-zeta values at q = e^{-2 pi} through the hyperbolic-sine series.

With q = e^{-2 pi} one has q^{mk}/(1-q^m)^{2k} = (2 sinh(m pi))^{-2k}, so

    f_q(2k, k) = ((1-q)/2)^{2k} sum_{m>=1} sinh(m pi)^{-2k}
               = ((1-q)/2)^{2k} * 1/2 * G_1^<2k-1>(0,0,1/2; 1,i) / pi.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpc, mpf

from .closed_form import G_closed
from .errors import NonconvergentQSeries, NotCatalogued
from .lattice import TruncationPolicy, sinh_eisenstein_G, sinh_power_sum
from .precision import PrecisionConfig, make_constants, resolve, to_mpf
from .ring import RingExpr, eval_ring
from .theta import LatticeBasis, TwistParams

__all__ = ["QParams", "q_two_pi", "f_q", "zeta_q", "sinh_power_identity", "QClosedForm", "f_q_closed"]


@dataclass(frozen=True)
class QParams:
    q: mpf
    s: int | mpc
    t: int | mpc

    def __post_init__(self):
        if not 0 < self.q < 1:
            raise NonconvergentQSeries(f"q must lie in (0, 1), got {self.q}")


def q_two_pi(cfg: PrecisionConfig | None = None) -> mpf:
    """e^{-2 pi} at working precision."""
    cfg = resolve(cfg)
    with cfg.active():
        return mp.exp(-2 * make_constants(cfg).pi)


def _is_real_positive(v) -> bool:
    return isinstance(v, (int, Fraction)) and v > 0 or (isinstance(v, mpf) and v > 0)


def f_q(params: QParams, cfg: PrecisionConfig | None = None, max_terms: int = 1_000_000) -> mpc:
    """(1-q)^s sum_{m>=1} q^{mt}/(1-q^m)^s by direct summation."""
    cfg = resolve(cfg)
    with cfg.active():
        q = mpf(params.q)
        s = params.s if isinstance(params.s, int) else mpc(params.s)
        t = params.t if isinstance(params.t, int) else mpc(params.t)
        monotone = _is_real_positive(params.s) and _is_real_positive(params.t)
        thr = cfg.trunc_threshold
        acc = mpc(0)
        m, small = 0, 0
        while small < 2:
            m += 1
            if m > max_terms:
                raise NonconvergentQSeries(f"no convergence within {max_terms} terms")
            term = q ** (m * t) / (1 - q**m) ** s
            prev = acc
            acc += term
            if monotone and acc.real < prev.real:
                raise NonconvergentQSeries("partial sums stopped increasing")
            small = small + 1 if abs(term) <= thr * abs(acc) else 0
        return (1 - q) ** s * acc


def zeta_q(s, q, cfg: PrecisionConfig | None = None) -> mpc:
    """zeta_q(s) = f_q(s, s-1)."""
    return f_q(QParams(q, s, s - 1), cfg)


def sinh_power_identity(
    k: int, cfg: PrecisionConfig | None = None, policy: TruncationPolicy | None = None
) -> tuple[mpc, mpc]:
    """(sum_{m != 0} sinh(m pi)^{-2k} directly, G_1^<2k-1>(i)/pi from the lattice sum)."""
    if k < 1:
        raise ValueError("k must be positive")
    cfg = resolve(cfg)
    direct = sinh_power_sum(2 * k, cfg)
    res = sinh_eisenstein_G(1, 2 * k - 1, TwistParams(0, 0, Fraction(1, 2)), LatticeBasis.square(cfg), policy, cfg=cfg)
    with cfg.active():
        return direct, res.value / make_constants(cfg).pi


@dataclass(frozen=True)
class QClosedForm:
    """(1-q)^q_power * scale * expr with q = e^{-2 pi}."""

    q_power: int
    scale: Fraction
    expr: RingExpr

    def value(self, cfg: PrecisionConfig | None = None) -> mpc:
        cfg = resolve(cfg)
        q = q_two_pi(cfg)
        with cfg.active():
            return (1 - q) ** self.q_power * to_mpf(self.scale) * eval_ring(self.expr, make_constants(cfg))


def f_q_closed(k: int) -> QClosedForm:
    """Exact form of f_q(2k, k) at q = e^{-2 pi} for k = 1, 2, 3."""
    if k not in (1, 2, 3):
        raise NotCatalogued(f"no exact q-zeta form catalogued for k={k}")
    expr = G_closed(1, 2 * k - 1, Fraction(1, 2), "i") * RingExpr.gen("pi", -1)
    return QClosedForm(2 * k, Fraction(1, 2 ** (2 * k + 1)), expr)
