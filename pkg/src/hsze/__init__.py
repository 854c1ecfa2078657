"""High-precision evaluation of hyperbolic-sine analogues of Eisenstein series."""

from .bernoulli import bernoulli_number, bernoulli_poly, bernoulli_poly_high
from .closed_form import K_closed, G_closed, example_catalog, theorem1_rhs, theorem1_rhs_at
from .lattice import (
    Route,
    SeriesResult,
    TruncationPolicy,
    eisenstein_G,
    inner_row_sum,
    lerch_phi,
    sinh_eisenstein_G,
)
from .precision import PrecisionConfig, make_constants
from .qzeta import f_q, f_q_closed, zeta_q
from .ring import RingExpr, eval_ring
from .theta import K_coeff, LatticeBasis, TwistParams, hurwitz_function, hurwitz_number

__version__ = "0.1.0"

__all__ = [
    "bernoulli_number",
    "bernoulli_poly",
    "bernoulli_poly_high",
    "K_closed",
    "G_closed",
    "example_catalog",
    "theorem1_rhs",
    "theorem1_rhs_at",
    "Route",
    "SeriesResult",
    "TruncationPolicy",
    "eisenstein_G",
    "inner_row_sum",
    "lerch_phi",
    "sinh_eisenstein_G",
    "PrecisionConfig",
    "make_constants",
    "f_q",
    "f_q_closed",
    "zeta_q",
    "RingExpr",
    "eval_ring",
    "K_coeff",
    "LatticeBasis",
    "TwistParams",
    "hurwitz_function",
    "hurwitz_number",
]
