"""Command-line front end: ``hsze verify|eval|table``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from fractions import Fraction

from mpmath import mp, mpc

from . import closed_form, lattice, qzeta, theta
from .errors import ConfigError, HszeError
from .precision import DEFAULT_BITS, PrecisionConfig, decimal_str, make_constants
from .verify import FORMATS, ROUTES, SUITES, Report, RunConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


# -- input parsing -------------------------------------------------------------------

_REAL = r"\d+(?:\.\d*)?(?:/\d+)?|\.\d+"
_COMPLEX = re.compile(rf"^(?P<re>[+-]?(?:{_REAL}))?(?:(?P<sg>[+-])?(?P<im>{_REAL})?i)?$")


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a rational number: {text!r}") from exc


def parse_complex(text: str, cfg: PrecisionConfig) -> mpc:
    """``p/q``, ``i``, ``rho``, ``2i``, ``1/2+3/2i`` and similar, at working precision."""
    t = text.strip().replace(" ", "")
    with cfg.active():
        if t == "rho":
            return make_constants(cfg).rho
        m = _COMPLEX.match(t)
        if not t or not m:
            raise ConfigError(f"not a complex number: {text!r}")
        re_part = Fraction(m["re"]) if m["re"] else Fraction(0)
        im_part = Fraction(0)
        if t.endswith("i"):
            if m["re"] and not m["sg"] and not m["im"]:
                # "2i" matches re="2" with no sign: it is purely imaginary
                re_part, im_part = Fraction(0), Fraction(m["re"])
            else:
                im_part = Fraction(m["im"]) if m["im"] else Fraction(1)
                if m["sg"] == "-":
                    im_part = -im_part
        return mpc(mp.mpf(re_part.numerator) / re_part.denominator, mp.mpf(im_part.numerator) / im_part.denominator)


def parse_basis(text: str, cfg: PrecisionConfig) -> theta.LatticeBasis:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ConfigError(f"basis must be two comma-separated periods, got {text!r}")
    if parts == ["1", "i"]:
        return theta.LatticeBasis.square(cfg)
    if parts == ["1", "rho"]:
        return theta.LatticeBasis.hexagonal(cfg)
    w1, w2 = (parse_complex(p, cfg) for p in parts)
    try:
        return theta.LatticeBasis(w1, w2)
    except HszeError as exc:
        raise ConfigError(str(exc)) from exc


def parse_range(text: str) -> list[int]:
    """``3``, ``1-4`` or ``1,3,5``."""
    out: list[int] = []
    try:
        for chunk in text.split(","):
            if "-" in chunk:
                a, b = chunk.split("-")
                out.extend(range(int(a), int(b) + 1))
            else:
                out.append(int(chunk))
    except ValueError as exc:
        raise ConfigError(f"bad integer range {text!r}") from exc
    return out


# -- verify ------------------------------------------------------------------------------


def _render_report(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.as_dict(), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["identity_id", "passed", "abs_diff", "tolerance", "route", "terms_used", "wall_time", "lhs_value", "rhs_value"])
        for r in report.records:
            w.writerow([r.identity_id, r.passed, r.abs_diff, r.tolerance, r.route, r.terms_used, r.wall_time, r.lhs_value, r.rhs_value])
        return buf.getvalue()
    lines = []
    for r in report.records:
        status = "PASS" if r.passed else "FAIL"
        extra = f"  [{r.note}]" if r.note and not r.passed else ""
        lines.append(f"{status}  {r.identity_id:<28} diff={r.abs_diff:<14} tol={r.tolerance:<6} route={r.route}{extra}")
    lines.append(f"passed {report.passed}, failed {report.failed}")
    return "\n".join(lines) + "\n"


def _run_config(args, **extra) -> RunConfig:
    return RunConfig(
        precision_bits=args.prec,
        tolerance_exp=args.tol,
        output_format=args.format,
        max_m=args.max_m,
        max_n=args.max_n,
        route=args.route,
        jobs=args.jobs,
        **extra,
    )


def cmd_verify(args) -> int:
    cfg = _run_config(args, suite=args.suite)
    report = run_suite(cfg)
    sys.stdout.write(_render_report(report, args.format))
    return EXIT_OK if report.failed == 0 else EXIT_FAIL


# -- eval --------------------------------------------------------------------------------


def _params(args) -> theta.TwistParams:
    return theta.TwistParams(parse_rational(args.x), parse_rational(args.y), parse_rational(args.z))


def _emit(args, fields: dict) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(fields, indent=2) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(fields.keys())
        w.writerow(fields.values())
        sys.stdout.write(buf.getvalue())
    else:
        for k, v in fields.items():
            sys.stdout.write(f"{k}: {v}\n")


def _eval_fields(kind: str, args, pc: PrecisionConfig) -> dict:
    digits = pc.digits
    fields: dict = {"kind": kind}
    if kind == "g":
        basis = parse_basis(args.basis, pc)
        params = _params(args)
        policy = lattice.TruncationPolicy(max_m=args.max_m, max_n=args.max_n)
        res = lattice.sinh_eisenstein_G(args.k, args.r, params, basis, policy, ROUTES[args.route], pc)
        fields.update(value=decimal_str(res.value, digits), est_error=mp.nstr(res.est_error, 5), route=res.route.value, terms_used=res.terms_used)
        if basis.tag and params.untwisted:
            fields["closed_form"] = closed_form.G_closed(args.k, args.r, params.z, basis.tag).to_text()
    elif kind == "k_coeff":
        basis = parse_basis(args.basis, pc)
        params = _params(args)
        val = theta.K_coeff(args.k, args.r, params, basis, pc)
        fields.update(value=decimal_str(val, digits), route="theta_kernel")
        closed = closed_form.K_closed(args.k, args.r, params.x, params.y, params.z, basis, pc)
        if isinstance(closed, closed_form.RingExpr):
            fields["closed_form"] = closed.to_text()
        else:
            fields["closed_value"] = decimal_str(closed, digits)
    elif kind == "hurwitz":
        basis = parse_basis(args.basis, pc)
        x, y = parse_rational(args.x), parse_rational(args.y)
        val = theta.hurwitz_function(args.k, x, y, basis, pc)
        fields.update(value=decimal_str(val, digits), route="theta_kernel")
        if basis.tag and x == 0 and y == 0:
            fields["closed_form"] = closed_form.hurwitz_symbolic(args.k, basis.tag).to_text()
    elif kind == "eisenstein":
        basis = parse_basis(args.basis, pc)
        res = lattice.eisenstein_G_series(args.k, basis.tau, pc)
        fields.update(value=decimal_str(res.value, digits), est_error=mp.nstr(res.est_error, 5), route=res.route.value, terms_used=res.terms_used)
        if basis.tag and basis.omega1 == 1:
            fields["closed_form"] = closed_form.eisenstein_exact(args.k, basis.tag).to_text()
    elif kind == "theta":
        tau = parse_complex(args.tau, pc)
        zz = parse_complex(args.zc, pc)
        val = theta.theta(zz, tau, args.deriv, pc)
        fields.update(value=decimal_str(val, digits), route="theta_series")
    elif kind == "phi":
        val = lattice.lerch_phi(parse_rational(args.alpha), parse_complex(args.beta, pc), pc)
        fields.update(value=decimal_str(val, digits), route="closed_form")
    elif kind == "qzeta":
        q = qzeta.q_two_pi(pc) if args.q is None else parse_complex(args.q, pc).real
        val = qzeta.f_q(qzeta.QParams(q, args.s, args.t), pc)
        fields.update(value=decimal_str(val, digits), route="direct")
        if args.q is None and args.s == 2 * args.t and args.t in (1, 2, 3):
            form = qzeta.f_q_closed(args.t)
            fields["closed_form"] = f"(1-e^(-2pi))^{form.q_power} * {form.scale} * [{form.expr.to_text()}]"
    return fields


def cmd_eval(args) -> int:
    pc = PrecisionConfig(args.prec)
    _emit(args, _eval_fields(args.kind, args, pc))
    return EXIT_OK


# -- table -------------------------------------------------------------------------------


def cmd_table(args) -> int:
    pc = PrecisionConfig(args.prec)
    basis = parse_basis(args.basis, pc)
    z = parse_rational(args.z)
    x, y = parse_rational(args.x), parse_rational(args.y)
    policy = lattice.TruncationPolicy(max_m=args.max_m, max_n=args.max_n)
    rows = []
    for k in parse_range(args.k):
        for r in parse_range(args.r) if args.kind in ("g", "k_coeff") else [0]:
            row = {"kind": args.kind, "k": k, "r": r, "x": str(x), "y": str(y), "z": str(z), "basis": args.basis}
            try:
                if args.kind == "g":
                    res = lattice.sinh_eisenstein_G(k, r, theta.TwistParams(x, y, z), basis, policy, ROUTES[args.route], pc)
                    val, err = res.value, mp.nstr(res.est_error, 5)
                elif args.kind == "k_coeff":
                    val, err = theta.K_coeff(k, r, theta.TwistParams(x, y, z), basis, pc), ""
                elif args.kind == "hurwitz":
                    val, err = theta.hurwitz_function(k, x, y, basis, pc), ""
                else:
                    res = lattice.eisenstein_G_series(k, basis.tau, pc, policy)
                    val, err = res.value, mp.nstr(res.est_error, 5)
                with pc.active():
                    v = mpc(val)
                    row.update(status="ok", value_re=mp.nstr(v.real, pc.digits), value_im=mp.nstr(v.imag, pc.digits), est_error=err)
            except HszeError as exc:
                row.update(status=f"inadmissible: {exc}", value_re="", value_im="", est_error="")
            rows.append(row)
    try:
        with open(args.out, "w", newline="") as fh:
            if args.format == "json":
                json.dump({"schema": 1, "rows": rows}, fh, indent=2)
                fh.write("\n")
            else:
                w = csv.DictWriter(fh, fieldnames=list(rows[0].keys()), lineterminator="\n")
                w.writeheader()
                w.writerows(rows)
    except OSError as exc:
        sys.stderr.write(f"hsze: cannot write {args.out}: {exc.strerror}\n")
        return EXIT_FAIL
    sys.stdout.write(f"wrote {len(rows)} rows to {args.out}\n")
    return EXIT_OK


# -- parser --------------------------------------------------------------------------------


def _default_prec() -> int:
    env = os.environ.get("HSZE_PREC")
    if not env:
        return DEFAULT_BITS
    try:
        return int(env)
    except ValueError:
        return -1  # rejected by PrecisionConfig with a clear message


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=_default_prec(), help="precision in bits (env HSZE_PREC)")
    common.add_argument("--tol", type=int, default=30, help="tolerance 1e-TOL")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--max-m", type=int, default=2000, dest="max_m")
    common.add_argument("--max-n", type=int, default=256, dest="max_n")
    common.add_argument("--route", choices=sorted(ROUTES), default="accel")

    p = argparse.ArgumentParser(prog="hsze", description="Hyperbolic-sine Eisenstein series toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run an identity verification suite")
    v.add_argument("--suite", choices=SUITES, default="core")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", parents=[common], help="evaluate a single quantity")
    e.add_argument("kind", choices=["g", "k_coeff", "hurwitz", "eisenstein", "theta", "phi", "qzeta"])
    e.add_argument("--k", type=int, default=3)
    e.add_argument("--r", type=int, default=1)
    e.add_argument("--x", default="0")
    e.add_argument("--y", default="0")
    e.add_argument("--z", default="1/2")
    e.add_argument("--basis", default="1,i")
    e.add_argument("--tau", default="i")
    e.add_argument("--zc", default="1/3", help="complex argument for theta")
    e.add_argument("--deriv", type=int, default=0)
    e.add_argument("--alpha", default="1/2")
    e.add_argument("--beta", default="1/2")
    e.add_argument("--s", type=int, default=2)
    e.add_argument("--t", type=int, default=1)
    e.add_argument("--q", default=None, help="q in (0,1); default e^(-2 pi)")
    e.set_defaults(func=cmd_eval)

    t = sub.add_parser("table", parents=[common], help="write a table of values")
    t.add_argument("--kind", choices=["g", "k_coeff", "hurwitz", "eisenstein"], default="g")
    t.add_argument("--k", default="1-4")
    t.add_argument("--r", default="1-4")
    t.add_argument("--x", default="0")
    t.add_argument("--y", default="0")
    t.add_argument("--z", default="1/2")
    t.add_argument("--basis", default="1,i")
    t.add_argument("--out", required=True)
    t.set_defaults(func=cmd_table)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        PrecisionConfig(args.prec)
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write(f"hsze: configuration error: {exc}\n")
        return EXIT_CONFIG
    except HszeError as exc:
        sys.stderr.write(f"hsze: {type(exc).__name__}: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
