"""Command-line interface: ``rareweak <subcommand> [options]``.

Exit status is 0 on success, 2 on usage errors and 3 when a computation
fails (for example a mixture fit that does not converge).
"""

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import normal
from .empirical import PValueSample, classify, empirical_hc_threshold
from .fdr import cutoff_from_curve, fit_mixture, local_fdr_curve, oracle_fit
from .model import RwModel, p_value
from .phase import detection_boundary, identification_boundary, recovery_boundary
from .reference import KNOWN_DISCREPANCIES, REFERENCE_THRESHOLDS
from .simulation import METHODS, StudyConfig, emit_error_table, run_study
from .thresholds import (
    NoThresholdError,
    cb_threshold,
    hc_cb_ratio_at_boundary,
    identification_tau,
    hc_threshold,
    threshold_set,
)

EXIT_USAGE = 2
EXIT_FAILURE = 3


class UsageError(Exception):
    pass


class ComputationError(Exception):
    def __init__(self, message, document=None):
        super().__init__(message)
        self.document = document


# ---------------------------------------------------------------- input

def read_values(path):
    """Read one number per line; blank lines and ``#`` comments are skipped."""
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            x = float(line)
        except ValueError:
            raise UsageError(f"{path}:{lineno}: not a number: {line!r}") from None
        if not math.isfinite(x):
            raise UsageError(f"{path}:{lineno}: non-finite value {line!r}")
        values.append(x)
    if not values:
        raise UsageError(f"{path}: no values")
    return np.array(values)


def read_pvalues(path, kind):
    values = read_values(path)
    if kind == "z":
        print("note: converting z-scores to p-values with p = 1 - Phi(z)", file=sys.stderr)
        return p_value(values)
    if np.any((values < 0.0) | (values > 1.0)):
        raise UsageError(f"{path}: p-values must lie in [0, 1]")
    return values


def read_zscores(path, kind):
    values = read_values(path)
    if kind == "p":
        if np.any((values < 0.0) | (values > 1.0)):
            raise UsageError(f"{path}: p-values must lie in [0, 1]")
        print("note: converting p-values to z-scores with z = Phi^-1(1 - p)", file=sys.stderr)
        return normal.isf(values)
    return values


def float_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


# ---------------------------------------------------------------- output

def format_number(x, full_precision=False):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x) if full_precision else f"{x:.6g}"


def to_csv(rows, full_precision=False):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if not rows:
        return ""
    header = list(rows[0])
    writer.writerow(header)
    for row in rows:
        cells = []
        for key in header:
            v = row.get(key)
            if v is None:
                cells.append("")
            elif isinstance(v, str):
                cells.append(v)
            else:
                cells.append(format_number(v, full_precision))
        writer.writerow(cells)
    return buf.getvalue()


def _jsonable(obj, full_precision):
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            k = str(k)
            if isinstance(v, (float, np.floating)) and math.isinf(v):
                # JSON has no infinity: null plus a sibling flag
                out[k] = None
                out[f"{k}_inf"] = "+inf" if v > 0 else "-inf"
            else:
                out[k] = _jsonable(v, full_precision)
        return out
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_jsonable(v, full_precision) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x) or math.isinf(x):
            return None
        return x if full_precision else float(f"{x:.6g}")
    return obj


def to_json(payload, full_precision=False):
    return json.dumps(_jsonable(payload, full_precision), indent=2) + "\n"


def write_document(args, rows, payload=None):
    if args.format == "json":
        text = to_json(rows if payload is None else payload, args.full_precision)
    else:
        text = to_csv(rows, args.full_precision)
    if args.out and args.out != "-":
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- commands

def _model(epsilon, tau):
    try:
        return RwModel(epsilon, tau)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_thresholds(args):
    levels = args.q
    if any(not 0.0 < q < 1.0 for q in levels):
        raise UsageError("fdr levels must lie in (0, 1)")
    if args.table2a:
        rows = []
        for tau, eps, _, ref_hc, ref_cb in REFERENCE_THRESHOLDS:
            ts = threshold_set(RwModel(eps, tau), levels)
            rows.append({
                "tau": tau,
                "epsilon": eps,
                "z_ks": ts.z_ks,
                "z_hc": ts.z_hc,
                "z_cb": ts.z_cb,
                "reference_z_hc": ref_hc,
                "reference_z_cb": math.inf if ref_cb is None else ref_cb,
                "identifiable": eps > 0 and eps >= math.exp(-tau * tau / 2.0),
                "note": KNOWN_DISCREPANCIES.get((tau, eps), ""),
            })
        write_document(args, rows)
        return 0
    if args.epsilon is None or args.tau is None:
        raise UsageError("--epsilon and --tau are required unless --table2a is given")
    m = _model(args.epsilon, args.tau)
    try:
        ts = threshold_set(m, levels)
    except NoThresholdError as exc:
        raise UsageError(str(exc)) from None
    row = {"epsilon": m.epsilon, "tau": m.tau, "z_ks": ts.z_ks, "z_hc": ts.z_hc, "z_cb": ts.z_cb}
    for q, z in ts.fdr_cutoffs.items():
        row[f"fdr_{q:g}"] = z
    row["hc_multiple_maxima"] = ts.hc_multiple_maxima
    payload = {
        "epsilon": m.epsilon,
        "tau": m.tau,
        "z_ks": ts.z_ks,
        "z_hc": ts.z_hc,
        "z_cb": ts.z_cb,
        "fdr_cutoffs": {f"{q:g}": z for q, z in ts.fdr_cutoffs.items()},
        "hc_multiple_maxima": ts.hc_multiple_maxima,
    }
    write_document(args, [row], payload)
    return 0


def cmd_hc(args):
    p = read_pvalues(args.input, args.kind)
    if p.size < 2:
        raise UsageError("empirical HC needs at least 2 values")
    if not 0.0 < args.search_fraction <= 1.0:
        raise UsageError("--search-fraction must lie in (0, 1]")
    res = empirical_hc_threshold(PValueSample.from_values(p), args.search_fraction)
    significant = np.flatnonzero(classify(p, res.threshold))
    if args.emit_objective:
        p_sorted = np.sort(p)
        rows = [
            {"i": i + 1, "p": p_sorted[i], "hc": v}
            for i, v in enumerate(res.objective_values)
        ]
        write_document(args, rows)
        return 0
    payload = {
        "threshold": res.threshold,
        "z_threshold": normal.isf(res.threshold),
        "hc_star": res.hc_star,
        "argmax_index": res.argmax_index,
        "d": int(p.size),
        "n_significant": int(significant.size),
        "significant": significant.tolist(),
    }
    row = dict(payload)
    row["significant"] = " ".join(str(i) for i in significant)
    write_document(args, [row], payload)
    return 0


def cmd_fdr(args):
    levels = args.levels
    if any(not 0.0 < q < 1.0 for q in levels):
        raise UsageError("fdr levels must lie in (0, 1)")
    z = read_zscores(args.input, args.kind)
    if args.mode == "oracle":
        if args.epsilon is None or args.tau is None:
            raise UsageError("oracle mode needs --epsilon and --tau")
        m = _model(args.epsilon, args.tau)
        if m.tau == 0.0:
            raise UsageError("tau = 0: no threshold exists")
        fit = oracle_fit(m)
    else:
        if z.size < 10:
            raise UsageError("mixture fitting needs at least 10 values")
        fit = fit_mixture(z, tol=args.tol, max_iter=args.max_iter)
    lo = min(float(z.min()), 0.0) - 1.0
    hi = max(float(z.max()), fit.tau_hat) + 10.0
    grid = np.arange(lo, hi + args.grid_step, args.grid_step)
    curves = local_fdr_curve(fit, grid)
    cutoffs = {q: cutoff_from_curve(curves, q) for q in levels}

    fit_info = {
        "eta0_hat": fit.eta0_hat,
        "tau_hat": fit.tau_hat,
        "loglik": fit.loglik,
        "iterations": fit.iterations,
        "converged": fit.converged,
    }
    rows = [
        {"level": q, "z_cutoff": c, "n_selected": int(np.sum(z > c)), **fit_info, "mode": args.mode}
        for q, c in cutoffs.items()
    ]
    payload = {
        "mode": args.mode,
        "fit": fit_info,
        "cutoffs": [{"level": q, "z_cutoff": c, "n_selected": int(np.sum(z > c))} for q, c in cutoffs.items()],
    }
    if args.curves:
        curve_rows = [
            {
                "z": curves.z_grid[i],
                "local_fdr": curves.local_fdr[i],
                "local_fndr": curves.local_fndr[i],
                "tail_fdr": curves.tail_fdr[i],
                "tail_fndr": curves.tail_fndr[i],
            }
            for i in range(curves.z_grid.size)
        ]
        payload["curves"] = curve_rows
        if args.format == "csv":
            rows = curve_rows
    if not fit.converged:
        raise ComputationError(
            f"mixture fit did not converge after {fit.iterations} iterations", (rows, payload)
        )
    write_document(args, rows, payload)
    return 0


def cmd_phase(args):
    if args.d < 2:
        raise UsageError("--d must be >= 2")
    if not 0.0 < args.grid_step <= 0.5:
        raise UsageError("--grid-step must lie in (0, 0.5]")
    n = int(round(0.5 / args.grid_step))
    logd = math.log(args.d)
    rows = []
    for beta in np.linspace(0.5, 1.0, n + 1):
        beta = float(beta)
        rows.append({
            "beta": beta,
            "epsilon": args.d ** -beta,
            "r_detect": detection_boundary(beta),
            "r_ident": identification_boundary(beta),
            "r_recov": recovery_boundary(beta),
            "tau_ident": math.sqrt(2.0 * beta * logd),
        })
    write_document(args, rows)
    return 0


def cmd_ratio(args):
    rows = []
    for eps in args.epsilon:
        if not 0.0 < eps < 1.0:
            raise UsageError("--epsilon values must lie in (0, 1)")
        for dr in args.delta_r:
            if dr < 0.0:
                raise UsageError("--delta-r values must be >= 0")
            tau = identification_tau(eps, dr, args.d)
            m = RwModel(eps, tau)
            z_hc, z_cb = hc_threshold(m), cb_threshold(m)
            rows.append({
                "epsilon": eps, "delta_r": dr, "tau": tau,
                "z_hc": z_hc, "z_cb": z_cb, "ratio": z_hc / z_cb,
            })
    write_document(args, rows)
    return 0


def cmd_simulate(args):
    try:
        cfg = StudyConfig(
            epsilon=args.epsilon,
            tau_list=args.tau,
            d=args.d,
            replications=args.B,
            master_seed=args.seed,
            methods=args.methods,
            fdr_mode=args.fdr_mode,
            search_fraction=args.search_fraction,
        )
        for tau in cfg.tau_list:
            RwModel(cfg.epsilon, tau)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    summary = run_study(cfg, jobs=args.jobs)
    rows = emit_error_table(summary)
    for row in rows:
        row["fit_failures"] = summary.fit_failures[row["tau"]]
    write_document(args, rows)
    return 0


# ---------------------------------------------------------------- parser

def _default_seed():
    raw = os.environ.get("RAREWEAK_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"RAREWEAK_SEED must be an integer, got {raw!r}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="output path (default: standard output)")
    common.add_argument("--full-precision", action="store_true",
                        help="write all digits instead of 6 significant ones")

    parser = argparse.ArgumentParser(
        prog="rareweak",
        description="HC, KS, CB and fdr thresholds in the rare-weak normal mixture.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("thresholds", parents=[common], help="population thresholds for one model")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--tau", type=float)
    p.add_argument("--q", type=float_list, default=[0.2, 0.5, 0.8], help="local fdr levels")
    p.add_argument("--table2a", action="store_true", help="all 15 benchmark settings")
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("hc", parents=[common], help="empirical HC threshold of a sample")
    p.add_argument("input", help="file with one value per line, '-' for stdin")
    p.add_argument("--kind", choices=("p", "z"), default="p")
    p.add_argument("--search-fraction", type=float, default=0.5)
    p.add_argument("--emit-objective", action="store_true", help="write (i, p_(i), HC) rows")
    p.set_defaults(func=cmd_hc)

    p = sub.add_parser("fdr", parents=[common], help="local fdr fit and cutoffs")
    p.add_argument("input", help="file with one value per line, '-' for stdin")
    p.add_argument("--kind", choices=("p", "z"), default="z")
    p.add_argument("--levels", type=float_list, default=[0.2, 0.5, 0.8])
    p.add_argument("--mode", choices=("estimated", "oracle"), default="estimated")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--tau", type=float)
    p.add_argument("--grid-step", type=float, default=1e-3)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=500)
    p.add_argument("--curves", action="store_true", help="include the fdr/fndr curves")
    p.set_defaults(func=cmd_fdr)

    p = sub.add_parser("phase", parents=[common], help="phase-space boundary table")
    p.add_argument("--d", type=int, default=10_000)
    p.add_argument("--grid-step", type=float, default=0.01)
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("ratio", parents=[common], help="HC/CB ratio near the identification boundary")
    p.add_argument("--epsilon", type=float_list, default=[1e-1, 1e-2, 1e-3, 1e-4])
    p.add_argument("--delta-r", type=float_list, default=[0.0])
    p.add_argument("--d", type=int, default=10_000)
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("simulate", parents=[common], help="Monte-Carlo error study")
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--tau", type=float_list, default=[3.0, 4.0, 5.0, 6.0])
    p.add_argument("--d", type=int, default=10_000)
    p.add_argument("--B", type=int, default=200)
    p.add_argument("--seed", type=int, default=None, help="master seed (default $RAREWEAK_SEED or 0)")
    p.add_argument("--methods", type=lambda s: [m for m in s.split(",") if m],
                   default=["HC", "CB", "FNDR"], help=f"comma list from {','.join(METHODS)}")
    p.add_argument("--fdr-mode", choices=("estimated", "oracle"), default="estimated")
    p.add_argument("--search-fraction", type=float, default=0.5)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        return args.func(args)
    except UsageError as exc:
        print(f"rareweak {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ComputationError as exc:
        if exc.document is not None:
            write_document(args, *exc.document)
        print(f"rareweak {args.command}: failed: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
