"""Command-line front end.

Subcommands: polys, verify, moment, cf, mgf, density, mean-max, simulate.
Data goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 verification failure, 2 usage error, 3 numerical failure.  The
CHERNOFF_RELTOL environment variable overrides the default quadrature
relative tolerance.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
from typing import Optional

import numpy as np

from . import algebra, moments
from .airy import airy_zero
from .simulate import SimConfig, estimate, save_sample_set
from .simulate import simulate as run_paths
from .errors import (AccuracyUnreachable, ContourTooLeft, NoConvergence,
                     NotIntegrable, OverflowDomain, UnknownStatistic)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

_RELTOL_ENV = "CHERNOFF_RELTOL"


class _UsageError(Exception):
    pass


def _contour_from_env(sigma: float = 0.0) -> moments.ContourSpec:
    raw = os.environ.get(_RELTOL_ENV)
    if raw is None:
        return moments.ContourSpec(sigma=sigma)
    try:
        rel = float(raw)
    except ValueError:
        raise _UsageError(f"{_RELTOL_ENV}={raw!r} is not a number")
    if not (0.0 < rel < 1.0):
        raise _UsageError(f"{_RELTOL_ENV} must lie in (0, 1), got {rel!r}")
    return moments.ContourSpec(sigma=sigma, rel_tol=rel)


def _contour_dict(spec: moments.ContourSpec) -> dict:
    return dataclasses.asdict(spec)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


def _scalar_output(args, quantity: str, value: float, err: float,
                   spec: moments.ContourSpec, plain: str, **extra) -> None:
    if args.format == "json":
        doc = {"quantity": quantity, **extra, "value": value,
               "err_estimate": err, "contour": _contour_dict(spec)}
        _emit(json.dumps(doc), args.out)
    elif args.format == "csv":
        keys = list(extra)
        head = "quantity," + ",".join(keys) + ",value,err_estimate"
        row = quantity + "," + ",".join(str(extra[k]) for k in keys) \
            + f",{value:.17g},{err:.3g}"
        _emit(head + "\n" + row, args.out)
    else:
        _emit(plain, args.out)


def cmd_polys(args) -> int:
    if args.max_n < 0:
        raise _UsageError("--max-n must be >= 0")
    if args.format == "json":
        docs = [algebra.moment_polynomial_json(n) for n in range(args.max_n + 1)]
        _emit(json.dumps(docs), args.out)
    elif args.format == "csv":
        lines = ["n,power,coefficient"]
        for n in range(args.max_n + 1):
            for p, c in algebra.moment_polynomial(n).items():
                lines.append(f"{n},{p},{c.numerator}/{c.denominator}")
        _emit("\n".join(lines), args.out)
    else:
        lines = [f"p_{n}(z) = {algebra.moment_polynomial(n)}"
                 for n in range(args.max_n + 1)]
        _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.max_n < 2:
        raise _UsageError("--max-n must be >= 2")
    spec = _contour_from_env()
    report = algebra.verify_conjectures(args.max_n)
    lines = [f"conjectures up to n = {args.max_n}:"]
    if report.all_ok:
        lines.append(f"  ok: odd vanish, degree = n/2, sinh leading "
                     f"coefficient, mod-3 support ({len(report.rows)} rows)")
    else:
        for row in report.rows:
            if row.ok:
                continue
            lines.append(f"  FAIL n={row.n}: degree {row.degree} "
                         f"(ok={row.degree_ok}), leading {row.leading} "
                         f"(ok={row.leading_ok}), mod3 ok={row.mod3_ok}")
    checks = moments.identity_suite(spec)
    lines.append("numeric identities:")
    lines.extend("  " + c.describe() for c in checks)
    ok = report.all_ok and all(c.passed for c in checks)
    lines.append("all checks passed" if ok else "VERIFICATION FAILED")
    print("\n".join(lines))
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_moment(args) -> int:
    if args.n < 0:
        raise _UsageError("--n must be >= 0")
    if args.gamma <= 0:
        raise _UsageError("--gamma must be positive")
    spec = _contour_from_env()
    qr = moments.moment_quad(args.n, args.gamma, spec)
    _scalar_output(args, "moment", qr.value, qr.err_estimate, spec,
                   f"E V^{args.n} (gamma={args.gamma:.10g}) = {qr.value:.15g}"
                   f"  err<={qr.err_estimate:.3g}",
                   n=args.n, gamma=args.gamma)
    return EXIT_OK


def cmd_cf(args) -> int:
    if args.gamma <= 0:
        raise _UsageError("--gamma must be positive")
    spec = _contour_from_env()
    # V_gamma = s V, so the cf at gamma is the canonical cf at argument s t
    s = moments.length_scale(args.gamma)
    qr = moments.char_fn_quad(s * args.t, spec)
    val = qr.value
    _scalar_output(args, "char_fn", val.real,
                   qr.err_estimate + abs(val.imag), spec,
                   f"cf({args.t:.10g}) (gamma={args.gamma:.10g}) = {val.real:.15g}"
                   f"  err<={qr.err_estimate + abs(val.imag):.3g}",
                   t=args.t, gamma=args.gamma)
    return EXIT_OK


def cmd_mgf(args) -> int:
    if args.gamma <= 0:
        raise _UsageError("--gamma must be positive")
    t = complex(args.t_re, args.t_im)
    s = moments.length_scale(args.gamma)
    if args.sigma is None:
        sigma = max(0.0, airy_zero(1) + 1.0 - (s * t).real)
    else:
        sigma = args.sigma
    spec = dataclasses.replace(_contour_from_env(), sigma=sigma)
    qr = moments.mgf_quad(s * t, sigma=sigma, contour=spec)
    val = qr.value
    doc_extra = {"t_re": args.t_re, "t_im": args.t_im, "gamma": args.gamma,
                 "value_im": val.imag}
    _scalar_output(args, "mgf", val.real, qr.err_estimate, spec,
                   f"mgf({t}) (gamma={args.gamma:.10g}) = {val.real:.15g}"
                   f"{val.imag:+.3g}i  err<={qr.err_estimate:.3g}",
                   **doc_extra)
    return EXIT_OK


def cmd_density(args) -> int:
    if args.gamma <= 0:
        raise _UsageError("--gamma must be positive")
    if args.step <= 0 or args.x_to < args.x_from:
        raise _UsageError("need --from <= --to and --step > 0")
    n = int(math.floor((args.x_to - args.x_from) / args.step + 1e-9)) + 1
    xs = args.x_from + args.step * np.arange(n)
    fs = moments.density_grid(xs, args.gamma, args.tol)
    if args.format == "json":
        doc = {"quantity": "density", "gamma": args.gamma, "tol": args.tol,
               "x": [float(x) for x in xs], "f": [float(f) for f in fs]}
        _emit(json.dumps(doc), args.out)
    else:
        lines = ["x,f"]
        lines.extend(f"{x:.17g},{f:.17g}" for x, f in zip(xs, fs))
        _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_mean_max(args) -> int:
    if args.gamma <= 0:
        raise _UsageError("--gamma must be positive")
    spec = _contour_from_env()
    qr = moments.mean_max_quad(args.gamma, spec)
    _scalar_output(args, "mean_max", qr.value, qr.err_estimate, spec,
                   f"E M (gamma={args.gamma:.10g}) = {qr.value:.15g}"
                   f"  err<={qr.err_estimate:.3g}",
                   gamma=args.gamma)
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        cfg = SimConfig(gamma=args.gamma, horizon=args.horizon,
                           step=args.step, num_paths=args.paths, seed=args.seed)
    except ValueError as exc:
        raise _UsageError(str(exc))
    print(f"simulating {cfg.num_paths} paths "
          f"(N = {cfg.steps_per_side} steps/side) ...", file=sys.stderr)
    samples = run_paths(cfg)
    save_sample_set(samples, args.out)
    print(f"wrote {args.out} and {args.out}.json", file=sys.stderr)

    spec = _contour_from_env()
    rows = [
        ("v_mean", estimate(samples, "v_moment", order=1), 0.0),
        ("v2_mean", estimate(samples, "v_moment", order=2),
         moments.moment(2, cfg.gamma, spec)),
        ("v4_mean", estimate(samples, "v_moment", order=4),
         moments.moment(4, cfg.gamma, spec)),
        ("m_mean", estimate(samples, "m_mean"),
         moments.mean_max(cfg.gamma, spec)),
        ("w_at_argmax_mean", estimate(samples, "w_at_argmax_mean"),
         4.0 / 3.0 * moments.mean_max(cfg.gamma, spec)),
    ]
    if args.format == "json":
        doc = {"quantity": "simulate", "config": dataclasses.asdict(cfg),
               "out": args.out,
               "estimates": {name: {"value": est.value, "stderr": est.stderr,
                                    "analytic": ana}
                             for name, est, ana in rows}}
        print(json.dumps(doc))
    else:
        print(f"{'statistic':<18} {'estimate':>14} {'stderr':>12} {'analytic':>14}")
        for name, est, ana in rows:
            print(f"{name:<18} {est.value:>14.6f} {est.stderr:>12.2g} {ana:>14.6f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="chernoff",
        description="Chernoff distribution: exact moment polynomials, "
                    "contour-integral numerics, and Monte Carlo simulation.")
    sub = ap.add_subparsers(dest="command", metavar="command")

    def common(p, fmt="plain"):
        p.add_argument("--format", choices=("plain", "json", "csv"), default=fmt)
        p.add_argument("--out", default=None, help="write output to a file")

    p = sub.add_parser("polys", help="exact moment polynomials p_0..p_N")
    p.add_argument("--max-n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_polys)

    p = sub.add_parser("verify", help="exact conjecture checks + numeric identities")
    p.add_argument("--max-n", type=int, default=30)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("moment", help="E V^n by contour integration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", type=float, default=moments.CANONICAL_GAMMA)
    common(p)
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("cf", help="characteristic function E exp(itV)")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--gamma", type=float, default=moments.CANONICAL_GAMMA)
    common(p)
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("mgf", help="moment generating function E exp(tV)")
    p.add_argument("--t-re", type=float, required=True)
    p.add_argument("--t-im", type=float, default=0.0)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--gamma", type=float, default=moments.CANONICAL_GAMMA)
    common(p)
    p.set_defaults(func=cmd_mgf)

    p = sub.add_parser("density", help="density table (CSV: x,f)")
    p.add_argument("--from", dest="x_from", type=float, required=True)
    p.add_argument("--to", dest="x_to", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--gamma", type=float, default=moments.CANONICAL_GAMMA)
    p.add_argument("--tol", type=float, default=1e-8)
    common(p, fmt="csv")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("mean-max", help="E M, the expected maximum")
    p.add_argument("--gamma", type=float, default=moments.CANONICAL_GAMMA)
    common(p)
    p.set_defaults(func=cmd_mean_max)

    p = sub.add_parser("simulate", help="Monte Carlo oracle; writes CSV + sidecar")
    p.add_argument("--gamma", type=float, default=moments.CANONICAL_GAMMA)
    p.add_argument("--horizon", type=float, default=4.0)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--paths", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="chernoff_samples.csv")
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.set_defaults(func=cmd_simulate)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if exc.code is not None else 0
        return EXIT_OK if code == 0 else EXIT_USAGE
    if getattr(args, "command", None) is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ContourTooLeft, NotIntegrable, UnknownStatistic, ValueError) as exc:
        print(f"invalid arguments: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NoConvergence, AccuracyUnreachable, OverflowDomain) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
