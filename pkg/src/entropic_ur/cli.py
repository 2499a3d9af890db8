"""Command-line front end.

Every subcommand builds one report object with the keys ``command``,
``parameters``, ``results``, ``checks`` and ``version`` and renders it as a
table, JSON or CSV. Exit status: 0 when every expectation holds, 1 when a
checked expectation fails, 2 on usage or numerical errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .bounds import (
    CHECK_TOL,
    conjugate_order,
    eta,
    renyi_bound,
    shannon_bound,
    violation_threshold,
    ww_bound,
)
from .entropy import EntropyOrderPair
from .errors import EntropicURError, InvalidScenario
from .scenarios import (
    AGREEMENT_TOL,
    WW_LIMIT,
    BoxScenarioParams,
    GaussianScenarioParams,
    run_box_counterexample,
    run_gaussian_counterexample,
    run_renyi_ur_check,
)
from .search import FamilySpec, minimize_entropy_sum
from .states import BoxState, GaussianState, PhysicalConstants

HBAR_ENV = "ENTROPIC_UR_HBAR"
MACHINE_DIGITS = 12
TABLE_DIGITS = 6
EXIT_OK, EXIT_FAILED, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers


def _positive(text):
    v = float(text)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def _range(text):
    """``start:stop:count`` -> evenly spaced values."""
    try:
        a, b, n = text.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected START:STOP:COUNT, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("COUNT must be at least 1")
    return np.linspace(a, b, n).tolist()


def parse_state(text, hbar):
    """``gaussian:x0,p0,sigma`` or ``box:a``."""
    kind, _, args = text.partition(":")
    try:
        values = [float(v) for v in args.split(",")] if args else []
    except ValueError:
        raise UsageError(f"cannot parse state parameters in {text!r}") from None
    if kind == "gaussian" and len(values) == 3:
        return GaussianState(*values, hbar=hbar)
    if kind == "box" and len(values) == 1:
        return BoxState(values[0], hbar=hbar)
    raise UsageError(f"state must be 'gaussian:x0,p0,sigma' or 'box:a', got {text!r}")


def resolve_hbar(flag):
    if flag is not None:
        return flag
    env = os.environ.get(HBAR_ENV)
    if env is None:
        return 1.0
    try:
        return _positive(env)
    except (ValueError, argparse.ArgumentTypeError):
        raise UsageError(f"{HBAR_ENV}={env!r} is not a positive number") from None


# ---------------------------------------------------------------------------
# reports


def _check(name, lhs, rhs, satisfied=None):
    margin = lhs - rhs
    if satisfied is None:
        satisfied = margin >= -CHECK_TOL
    return {"name": name, "lhs": lhs, "rhs": rhs, "margin": margin, "satisfied": bool(satisfied)}


def _report(command, parameters, results, checks, expectations):
    """``expectations`` names the checks whose failure makes the exit status 1."""
    report = {
        "command": command,
        "parameters": parameters,
        "results": results,
        "checks": checks,
        "version": __version__,
    }
    ok = all(c["satisfied"] for c in checks if c["name"] in expectations)
    return report, EXIT_OK if ok else EXIT_FAILED


def cmd_verify_renyi(args, hbar):
    state = parse_state(args.state, hbar)
    check = run_renyi_ur_check(state, args.dx, args.dp, args.alpha, PhysicalConstants(hbar), args.tail_eps)
    params = {"alpha": args.alpha, "dx": args.dx, "dp": args.dp, "state": args.state, "hbar": hbar}
    checks = [_check("renyi_uncertainty_relation", check.lhs, check.rhs, check.satisfied)]
    return _report("verify-renyi", params, check.to_dict(), checks, {"renyi_uncertainty_relation"})


def cmd_ww_gaussian(args, hbar):
    rep = run_gaussian_counterexample(GaussianScenarioParams(args.delta))
    results = {**rep.to_dict(), "entropy_sum": rep.pipeline_value, "ww_limit": WW_LIMIT}
    checks = [
        _check("pipeline_matches_closed_form", AGREEMENT_TOL, rep.agreement_error),
        _check("ww_bound_limit", rep.pipeline_value, WW_LIMIT, not rep.violated),
    ]
    return _report("ww-gaussian", {"delta": args.delta}, results, checks, {"pipeline_matches_closed_form"})


def cmd_ww_box(args, hbar):
    params = BoxScenarioParams(args.sx, args.dtx, args.alpha, args.sp)
    try:
        rep = run_box_counterexample(params)
    except InvalidScenario as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, EXIT_FAILED
    d = rep.details
    results = {
        **rep.to_dict(),
        "lhs": d["lhs"],
        "rhs": d["rhs"],
        "threshold": d["threshold"],
    }
    consistent = rep.violated == (args.dtx < d["threshold"]) or abs(args.dtx - d["threshold"]) <= 1e-6
    checks = [
        _check("compactified_norm_inequality", d["lhs"], d["rhs"], not rep.violated),
        _check("threshold_agreement", args.dtx, d["threshold"], consistent),
        _check("pipeline_matches_closed_form", AGREEMENT_TOL, rep.agreement_error),
    ]
    echo = {"sx": args.sx, "dtx": args.dtx, "alpha": args.alpha, "sp": args.sp}
    return _report(
        "ww-box", echo, results, checks, {"threshold_agreement", "pipeline_matches_closed_form"}
    )


def cmd_threshold(args, hbar):
    alphas = args.scan if args.scan is not None else [args.alpha]
    rows = [{"alpha": a, "threshold": violation_threshold(a)} for a in alphas]
    lowest = min(r["threshold"] for r in rows)
    checks = [_check("at_least_one_quarter", lowest, 0.25)]
    params = {"alphas": alphas}
    return _report("threshold", params, {"rows": rows}, checks, {"at_least_one_quarter"})


def _scan_row(delta):
    rep = run_gaussian_counterexample(GaussianScenarioParams(delta))
    return {
        "delta": delta,
        "entropy_sum": rep.pipeline_value,
        "ww_limit": WW_LIMIT,
        "violated": rep.violated,
    }


def cmd_scan_gaussian(args, hbar):
    deltas = sorted(args.delta_range)
    with ThreadPoolExecutor() as pool:
        rows = list(pool.map(_scan_row, deltas))
    return _report("scan-gaussian", {"deltas": deltas}, {"rows": rows}, [], set())


def cmd_bounds(args, hbar):
    consts = PhysicalConstants(hbar)
    pair = EntropyOrderPair(args.alpha, conjugate_order(args.alpha))
    results = {
        "alpha": pair.alpha,
        "beta": pair.beta,
        "renyi_bound": renyi_bound(pair, args.dx, args.dp, consts),
        "shannon_bound": shannon_bound(args.dx, args.dp, consts),
        "ww_bound": ww_bound(args.dx, args.dp, consts),
        "ww_limit": WW_LIMIT,
    }
    if pair.alpha >= 1:
        results["eta"] = eta(pair, args.dx, args.dp, consts)
    params = {"dx": args.dx, "dp": args.dp, "alpha": args.alpha, "hbar": hbar}
    return _report("bounds", params, results, [], set())


def cmd_optimize(args, hbar):
    consts = PhysicalConstants(hbar)
    family = FamilySpec.gaussian(args.dx, args.dp, hbar)
    opt = minimize_entropy_sum(family, args.dx, args.dp, args.alpha, consts, args.budget, args.seed)
    params = {
        "family": args.family,
        "dx": args.dx,
        "dp": args.dp,
        "alpha": args.alpha,
        "budget": args.budget,
        "seed": args.seed,
        "hbar": hbar,
    }
    checks = [_check("gap_nonnegative", opt.best_value, opt.bound_value)]
    return _report("optimize", params, opt.to_dict(), checks, {"gap_nonnegative"})


# ---------------------------------------------------------------------------
# rendering


def _round(obj, digits):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return float(f"{obj:.{digits}g}") if math.isfinite(obj) else obj
    if isinstance(obj, dict):
        return {k: _round(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v, digits) for v in obj]
    if isinstance(obj, np.generic):
        return _round(obj.item(), digits)
    return obj


def _cell(value, digits):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.{digits}g}"
    if isinstance(value, (list, tuple)):
        return ";".join(_cell(v, digits) for v in value)
    if isinstance(value, dict):
        return ";".join(f"{k}={_cell(v, digits)}" for k, v in value.items())
    return str(value)


def _flat_rows(report):
    results = report["results"]
    if "rows" in results:
        return results["rows"]
    flat = {k: v for k, v in results.items() if not isinstance(v, dict)}
    for k, v in results.items():
        if isinstance(v, dict):
            flat.update({f"{k}.{kk}": vv for kk, vv in v.items()})
    return [flat]


def render_json(report):
    return json.dumps(_round(report, MACHINE_DIGITS), indent=2) + "\n"


def render_csv(report):
    rows = _flat_rows(report)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if rows:
        header = list(rows[0])
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(row.get(k), MACHINE_DIGITS) for k in header])
    return buf.getvalue()


def render_table(report):
    lines = [f"{report['command']}  (version {report['version']})"]
    rows = _flat_rows(report)
    if len(rows) == 1 and "rows" not in report["results"]:
        width = max(len(k) for k in rows[0])
        lines += [f"  {k:<{width}}  {_cell(v, TABLE_DIGITS)}" for k, v in rows[0].items()]
    elif rows:
        header = list(rows[0])
        cells = [[_cell(r[k], TABLE_DIGITS) for k in header] for r in rows]
        widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(header)]
        lines.append("  " + "  ".join(h.rjust(w) for h, w in zip(header, widths)))
        lines += ["  " + "  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    if report["checks"]:
        lines.append("checks:")
        for c in report["checks"]:
            flag = "PASS" if c["satisfied"] else "FAIL"
            lines.append(
                f"  [{flag}] {c['name']}: lhs={_cell(c['lhs'], TABLE_DIGITS)} "
                f"rhs={_cell(c['rhs'], TABLE_DIGITS)} margin={_cell(c['margin'], TABLE_DIGITS)}"
            )
    return "\n".join(lines) + "\n"


RENDERERS = {"table": render_table, "json": render_json, "csv": render_csv}


# ---------------------------------------------------------------------------
# parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--hbar", type=_positive, default=None,
                        help=f"reduced Planck constant (default: ${HBAR_ENV} or 1)")
    common.add_argument("--format", choices=sorted(RENDERERS), default=None,
                        help="output format (default: csv for scan-gaussian, table otherwise)")
    common.add_argument("--output", default="-", help="output file (default: standard output)")

    parser = argparse.ArgumentParser(
        prog="entropic-ur", description="Checks of binned entropic uncertainty relations."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-renyi", parents=[common], help="binned Renyi relation for one state")
    p.add_argument("--alpha", type=float, default=1.0, help="momentum order >= 1 (default 1)")
    p.add_argument("--dx", type=_positive, default=1.0, help="position bin width (default 1)")
    p.add_argument("--dp", type=_positive, default=1.0, help="momentum bin width (default 1)")
    p.add_argument("--state", default="gaussian:0,0,1",
                   help="gaussian:x0,p0,sigma or box:a (default gaussian:0,0,1)")
    p.add_argument("--tail-eps", type=_positive, default=1e-12,
                   help="uncovered mass allowed per uniform binning (default 1e-12)")
    p.set_defaults(func=cmd_verify_renyi)

    p = sub.add_parser("ww-gaussian", parents=[common], help="half-line Gaussian vs the WW bound")
    p.add_argument("--delta", type=float, default=2.0, help="sqrt(x0 p0 / hbar) (default 2)")
    p.set_defaults(func=cmd_ww_gaussian)

    p = sub.add_parser("ww-box", parents=[common], help="box state vs the compactified inequality")
    p.add_argument("--sx", type=_positive, default=1.0, help="position compactification scale (default 1)")
    p.add_argument("--dtx", type=_positive, default=0.1, help="compactified position bin width (default 0.1)")
    p.add_argument("--alpha", type=float, default=2.0, help="order > 1 (default 2)")
    p.add_argument("--sp", type=_positive, default=1.0, help="momentum compactification scale (default 1)")
    p.set_defaults(func=cmd_ww_box)

    p = sub.add_parser("threshold", parents=[common], help="critical compactified bin width")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--alpha", type=float, default=2.0, help="single order (default 2)")
    g.add_argument("--scan", type=_range, default=None, metavar="A1:A2:N", help="evenly spaced orders")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("scan-gaussian", parents=[common], help="WW comparison over a delta range")
    p.add_argument("--delta-range", type=_range, default=_range("0:5:51"), metavar="D1:D2:N",
                   help="evenly spaced deltas (default 0:5:51)")
    p.set_defaults(func=cmd_scan_gaussian, default_format="csv")

    p = sub.add_parser("bounds", parents=[common], help="closed-form bounds side by side")
    p.add_argument("--dx", type=_positive, default=1.0, help="position bin width (default 1)")
    p.add_argument("--dp", type=_positive, default=1.0, help="momentum bin width (default 1)")
    p.add_argument("--alpha", type=float, default=1.0, help="momentum order > 1/2 (default 1)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("optimize", parents=[common], help="smallest entropy sum over Gaussians")
    p.add_argument("--family", choices=["gaussian"], default="gaussian")
    p.add_argument("--dx", type=_positive, default=1.0, help="position bin width (default 1)")
    p.add_argument("--dp", type=_positive, default=1.0, help="momentum bin width (default 1)")
    p.add_argument("--alpha", type=float, default=1.0, help="momentum order >= 1 (default 1)")
    p.add_argument("--budget", type=int, default=500, help="objective evaluations (default 500)")
    p.add_argument("--seed", type=int, default=0, help="multistart seed (default 0)")
    p.set_defaults(func=cmd_optimize)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        hbar = resolve_hbar(args.hbar)
        report, code = args.func(args, hbar)
    except (UsageError, EntropicURError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if report is None:
        return code
    fmt = args.format or getattr(args, "default_format", "table")
    text = RENDERERS[fmt](report)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return code


def main():
    sys.exit(run())
