"""Command-line front end: windows | solve | bound | rates | resonance.

Emits JSON (default) or CSV. Every JSON payload carries a meta block with
the full effective configuration, sufficient to reproduce the run.

Exit status: 0 success, 2 usage, 3 near resonance, 4 quadrature budget,
5 bound violation, 6 degenerate rate fit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .analysis import (ORDER_HALF, certify_bound, near_resonance_sweep, rate_fit)
from .errors import (BudgetExceededError, DegenerateFitError, DomainError,
                     ExpressionSyntaxError, InvalidLambdaError,
                     InvalidProblemError, NearResonanceError,
                     SingularSystemError, UnknownIdentifierError)
from .kernels import active_backend
from .quadrature import QuadConfig
from .solver import ProblemSpec, make_context, solve_grid
from .windows import InWindow, eps_of_theta, resonance_points, window

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RESONANCE = 3
EXIT_BUDGET = 4
EXIT_BOUND_VIOLATION = 5
EXIT_DEGENERATE_FIT = 6

SLOPE_WINDOWS = {ORDER_HALF: (0.4, 0.6), "one": (0.9, 1.1)}


def _add_common(p: argparse.ArgumentParser, needs_f: bool = True):
    if needs_f:
        p.add_argument("--f", required=True, help="right-hand side expression in t")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, default=0.5)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default="-", help="output path, or - for stdout")
    p.add_argument("--panels-per-period", type=int, default=4)
    p.add_argument("--gauss-order", type=int, default=8)
    p.add_argument("--min-panels", type=int, default=4)
    p.add_argument("--max-panels", type=int, default=10_000_000)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="neumann-bvp",
        description="Non-resonant singularly perturbed Neumann BVP toolkit")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("windows", help="non-resonance windows and resonance points")
    _add_common(p, needs_f=False)
    p.add_argument("--n-max", type=int, required=True)

    p = sub.add_parser("solve", help="evaluate the solution on a grid")
    _add_common(p)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--form", choices=("naive", "reduced"), default="reduced")

    p = sub.add_parser("bound", help="a priori error bound and certification")
    _add_common(p)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--mu-samples", type=int, default=4097)

    p = sub.add_parser("rates", help="log-log convergence rate to f/k")
    _add_common(p)
    p.add_argument("--n-from", type=int, default=2)
    p.add_argument("--n-to", type=int, default=14)
    p.add_argument("--grid", type=int, default=101)

    p = sub.add_parser("resonance", help="sup |y| growth approaching resonance")
    _add_common(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--deltas", required=True,
                   help="comma-separated decreasing phase offsets, e.g. 0.5,0.25")
    p.add_argument("--grid", type=int, default=201)
    return top


def _quad(args) -> QuadConfig:
    return QuadConfig(panels_per_period=args.panels_per_period,
                      gauss_order=args.gauss_order,
                      min_panels=args.min_panels,
                      max_panels=args.max_panels)


def _meta(args, **extra) -> dict:
    meta = {
        "command": args.command,
        "version": __version__,
        "backend": active_backend(),
        "k": args.k, "a": args.a, "b": args.b, "lambda": args.lam,
        "panels_per_period": args.panels_per_period,
        "gauss_order": args.gauss_order,
        "min_panels": args.min_panels,
        "max_panels": args.max_panels,
        "format": args.format,
    }
    if hasattr(args, "f"):
        meta["f"] = args.f
    meta.update(extra)
    return meta


def cmd_windows(args):
    rows = [window(n, args.lam, args.k, args.a, args.b)
            for n in range(args.n_max + 1)]
    m_max = max(args.n_max, 1)
    res = resonance_points(args.k, args.a, args.b, m_max)
    payload = {
        "meta": _meta(args, n_max=args.n_max),
        "windows": [{"n": w.n, "lo": w.lo, "hi": w.hi} for w in rows],
        "resonances": [{"m": m + 1, "eps_star": e} for m, e in enumerate(res)],
    }
    csv_rows = ([{"kind": "window", "index": w.n, "lo": w.lo, "hi": w.hi,
                  "eps_star": ""} for w in rows]
                + [{"kind": "resonance", "index": m + 1, "lo": "", "hi": "",
                    "eps_star": e} for m, e in enumerate(res)])
    return payload, ("kind", "index", "lo", "hi", "eps_star"), csv_rows


def cmd_solve(args):
    p = ProblemSpec.from_expression(args.f, args.a, args.b, args.k)
    ctx = make_context(p, args.eps, args.lam, _quad(args), eval_form=args.form)
    grid = np.linspace(args.a, args.b, args.grid)
    prof = solve_grid(p, ctx, grid)
    assert isinstance(ctx.window, InWindow)
    data = [{"t": float(t), "y": float(y), "y1": float(y1), "y2": float(y2),
             "residual": float(r)}
            for t, y, y1, y2, r in zip(prof.grid, prof.y, prof.y1, prof.y2,
                                       prof.residual)]
    payload = {
        "meta": _meta(args, eps=args.eps, theta=ctx.theta,
                      window_n=ctx.window.n, form=args.form, grid=args.grid),
        "data": data,
    }
    return payload, ("t", "y", "y1", "y2", "residual"), data


def cmd_bound(args):
    p = ProblemSpec.from_expression(args.f, args.a, args.b, args.k)
    report = certify_bound(p, args.eps, args.lam, grid_size=args.grid,
                           quad=_quad(args), mu_samples=args.mu_samples)
    row = {
        "eps": report.eps, "lambda": report.lam,
        "mu1": report.mu1, "mu2": report.mu2,
        "f1a": report.f1a, "f1b": report.f1b, "f2a": report.f2a,
        "bound": report.bound,
        "sup_error": report.sup_error_measured,
        "certified": report.certified,
        "caveat": report.caveat,
    }
    payload = {"meta": _meta(args, eps=args.eps, grid=args.grid,
                             mu_samples=args.mu_samples), **row}
    code = EXIT_OK if report.certified else EXIT_BOUND_VIOLATION
    return payload, tuple(row), [row], code


def cmd_rates(args):
    p = ProblemSpec.from_expression(args.f, args.a, args.b, args.k)
    fit = rate_fit(p, args.lam, args.n_from, args.n_to, args.grid, _quad(args))
    lo, hi = SLOPE_WINDOWS[fit.expected_order]
    rows = [{"eps": e, "sup_error": err} for e, err in fit.points]
    payload = {
        "meta": _meta(args, n_from=args.n_from, n_to=args.n_to, grid=args.grid),
        "points": rows,
        "slope": fit.slope,
        "intercept": fit.intercept,
        "r_squared": fit.r_squared,
        "expected_order": fit.expected_order,
        "pass": lo <= fit.slope <= hi,
    }
    return payload, ("eps", "sup_error"), rows


def cmd_resonance(args):
    p = ProblemSpec.from_expression(args.f, args.a, args.b, args.k)
    deltas = [float(d) for d in args.deltas.split(",")]
    sweep = near_resonance_sweep(p, args.m, deltas, grid_size=args.grid,
                                 quad=_quad(args))
    rows = [{"delta": d, "eps": eps_of_theta(args.m * math.pi + d, args.k,
                                             args.a, args.b),
             "sup_abs_y": s} for d, s in sweep]
    payload = {"meta": _meta(args, m=args.m, deltas=deltas, grid=args.grid),
               "data": rows}
    return payload, ("delta", "eps", "sup_abs_y"), rows


def _render(args, payload, fieldnames, rows) -> str:
    if args.format == "json":
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (repr(float(v)) if isinstance(v, float) else v)
                         for k, v in row.items()})
    return buf.getvalue()


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"windows": cmd_windows, "solve": cmd_solve, "bound": cmd_bound,
                "rates": cmd_rates, "resonance": cmd_resonance}
    try:
        result = handlers[args.command](args)
    except NearResonanceError as exc:
        print(f"error: NearResonance: {exc}", file=sys.stderr)
        return EXIT_RESONANCE
    except BudgetExceededError as exc:
        print(f"error: BudgetExceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DegenerateFitError as exc:
        print(f"error: DegenerateFit: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE_FIT
    except (InvalidLambdaError, InvalidProblemError, ExpressionSyntaxError,
            UnknownIdentifierError, DomainError, SingularSystemError,
            ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if len(result) == 4:
        payload, fieldnames, rows, code = result
    else:
        payload, fieldnames, rows = result
        code = EXIT_OK
    text = _render(args, payload, fieldnames, rows)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
