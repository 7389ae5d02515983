"""Command-line interface: ``fourierpdf <command> [options]``.

Exit status: 0 success, 1 a table comparison failed, 2 usage error,
3 numerical or I/O failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import __version__
from .exact_dists import geary_consistency, uniform_sum_coeff_exact
from .moments import Family
from .montecarlo import histogram, ks_distance, sample
from .numerics import DEFAULT_PRECISION_BITS
from .quadrature import QuadratureError
from .series import (
    TruncationSpec,
    build_model,
    cdf_eval,
    default_truncation,
    pdf_eval,
    percentile,
    tail_prob,
)
from .tables import TABLE_IDS, reproduce_table

SCHEMA = "fourierpdf.output/1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ERROR = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class OutputRecord:
    command: str
    params: dict[str, Any]
    columns: list[str]
    rows: list[list[Any]]
    summary: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {
            "schema": SCHEMA,
            "command": self.command,
            "params": self.params,
            "results": [dict(zip(self.columns, r)) for r in self.rows],
        }
        if self.summary:
            doc["summary"] = self.summary
        return json.dumps(doc, indent=2, default=_json_default)

    def to_csv(self, decimals: int) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_value(v, decimals) for v in row])
        return buf.getvalue()


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"not JSON serialisable: {type(obj).__name__}")


def format_value(v: Any, decimals: int) -> str:
    """Fixed notation, or scientific when ``0 < |v| < 1e-3``."""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if not math.isfinite(v):
            return repr(v)
        if v != 0.0 and abs(v) < 1e-3:
            return f"{v:.{decimals}e}"
        return f"{v:.{decimals}f}"
    return str(v)


def _truncation(args) -> TruncationSpec:
    try:
        default = default_truncation(args.dist, args.n)
    except ValueError:
        if args.K is None or args.J is None:
            raise UsageError(f"no default truncation for {args.dist} n={args.n}; give -K and -J")
        return TruncationSpec(args.K, args.J)
    return TruncationSpec(args.K if args.K is not None else default.K, args.J if args.J is not None else default.J)


def _check_n(args) -> None:
    low = 1 if args.dist == Family.UNIFORM_SUM.value else 3
    if args.n < low:
        raise UsageError(f"-n must be >= {low} for {args.dist}")


def _model(args):
    _check_n(args)
    trunc = _truncation(args)
    return build_model(args.dist, args.n, trunc, args.precision_bits), trunc


def cmd_coeffs(args) -> OutputRecord:
    if args.exact and args.dist != Family.UNIFORM_SUM.value:
        raise UsageError("--exact is only available for --dist uniform-sum (no closed form for skewness)")
    model, trunc = _model(args)
    columns = ["k", "a_hat"]
    rows = []
    for k, a in enumerate(model.a):
        row = [k, float(a)]
        if args.exact:
            exact = uniform_sum_coeff_exact(args.n, k)
            row += [exact, float(a) - exact]
        rows.append(row)
    if args.exact:
        columns += ["a_exact", "difference"]
    summary = {}
    if args.exact:
        summary["max_abs_difference"] = max(abs(r[3]) for r in rows)
    params = {"dist": args.dist, "n": args.n, "K": trunc.K, "J": trunc.J, "exact": args.exact,
              "precision_bits": args.precision_bits}
    return OutputRecord("coeffs", params, columns, rows, summary)


def parse_grid(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must look like a:b:steps, got {text!r}")
    try:
        a, b, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"malformed grid {text!r}") from None
    if steps < 1 or not (math.isfinite(a) and math.isfinite(b)) or b < a:
        raise UsageError(f"malformed grid {text!r}: need a <= b and steps >= 1")
    return np.linspace(a, b, steps + 1) if steps > 1 or a != b else np.array([a])


def cmd_eval(args) -> OutputRecord:
    model, trunc = _model(args)
    if (args.x is None) == (args.grid is None):
        raise UsageError("give exactly one of --x or --grid")
    xs = np.asarray(args.x, dtype=float) if args.x is not None else parse_grid(args.grid)
    A = model.A
    if np.any(np.abs(xs) > A + 1):
        raise UsageError(f"evaluation points must lie within [-A-1, A+1] = [{-A - 1:.6g}, {A + 1:.6g}]")
    if args.which == "pdf":
        values = np.atleast_1d(pdf_eval(model, xs))
        if args.clip:
            values = np.maximum(values, 0.0)
    elif args.which == "cdf":
        values = np.atleast_1d(cdf_eval(model, xs))
    else:
        values = np.atleast_1d(tail_prob(model, xs))
    params = {"dist": args.dist, "n": args.n, "K": trunc.K, "J": trunc.J, "which": args.which,
              "A": A, "precision_bits": args.precision_bits}
    return OutputRecord("eval", params, ["x", args.which], [[float(x), float(v)] for x, v in zip(xs, values)])


def cmd_percentile(args) -> OutputRecord:
    for a in args.alpha:
        if not 0.0 < a < 1.0:
            raise UsageError(f"alpha must lie in (0, 1), got {a}")
    model, trunc = _model(args)
    rows = [[a, percentile(model, a, args.tol)] for a in args.alpha]
    params = {"dist": args.dist, "n": args.n, "K": trunc.K, "J": trunc.J, "tol": args.tol,
              "precision_bits": args.precision_bits}
    return OutputRecord("percentile", params, ["alpha", "x_alpha"], rows)


def cmd_reproduce(args) -> tuple[OutputRecord, int]:
    report = reproduce_table(args.table, args.precision_bits)
    columns = ["table", "row", "column", "reference", "computed", "abs_diff", "tolerance", "underlined", "pass"]
    rows = [[c.table_id, c.row, c.column, c.reference, c.computed, c.abs_diff, c.tolerance, c.underlined, c.passed]
            for c in report.cells]
    summary = {"passed": report.passed, "cells": len(report.cells), "failures": len(report.failures),
               "max_abs_diff": report.max_abs_diff}
    record = OutputRecord("reproduce", {"table": args.table, "precision_bits": args.precision_bits},
                          columns, rows, summary)
    return record, EXIT_OK if report.passed else EXIT_FAIL


def cmd_mc(args) -> OutputRecord:
    if args.N < 100:
        raise UsageError("-N must be >= 100")
    if args.bins < 1:
        raise UsageError("--bins must be >= 1")
    model, trunc = _model(args)
    fh = open(args.out, "w", encoding="utf-8", newline="")
    batch = sample(args.dist, args.n, args.N, args.seed, workers=args.workers)
    hist = histogram(batch, args.bins)
    ks = ks_distance(batch, model)
    centers = hist.centers
    model_pdf = np.atleast_1d(pdf_eval(model, centers))
    with fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["bin_center", "density", "model_pdf"])
        for c, h, p in zip(centers, hist.heights, model_pdf):
            writer.writerow([repr(float(c)), repr(float(h)), repr(float(p))])
    params = {"dist": args.dist, "n": args.n, "N": args.N, "seed": args.seed, "bins": args.bins,
              "K": trunc.K, "J": trunc.J, "out": args.out, "generator": batch.generator}
    row = [ks, batch.N, args.seed, args.bins, batch.mean(), batch.variance(), batch.redraws]
    return OutputRecord("mc", params, ["ks_distance", "N", "seed", "bins", "mean", "variance", "redraws"], [row])


def cmd_check_geary(args) -> OutputRecord:
    if args.n < 6:
        raise UsageError(
            "check-geary needs n >= 6: below that the recurrence weight (1-z^2)^((n-7)/2) "
            "is not integrable after the z = sin(theta) substitution"
        )
    if args.grid_points < 1:
        raise UsageError("--grid-points must be >= 1")
    prev = build_model(Family.NORMAL_SKEWNESS, args.n - 1, precision_bits=args.precision_bits)
    cur = build_model(Family.NORMAL_SKEWNESS, args.n, precision_bits=args.precision_bits)
    half = cur.A / 2
    grid = np.linspace(-half, half, args.grid_points) if args.grid_points > 1 else np.array([0.0])
    check = geary_consistency(prev, cur, grid, args.quad_points)
    rows = [[float(x), float(r), float(m), float(d), float(e)]
            for x, r, m, d, e in zip(check.grid, check.rhs, check.model, check.deviation, check.quad_error)]
    params = {"n": args.n, "grid_points": args.grid_points, "quad_points": args.quad_points,
              "precision_bits": args.precision_bits}
    summary = {"max_deviation": check.max_deviation, "max_quad_error": float(np.max(check.quad_error))}
    return OutputRecord("check-geary", params, ["x", "recurrence", "model", "deviation", "quad_error"], rows, summary)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-bits", type=int, default=DEFAULT_PRECISION_BITS,
                        help="working precision for coefficient evaluation (default %(default)s, minimum 256)")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--decimals", type=int, default=None, help="digits printed in CSV output")

    dist = argparse.ArgumentParser(add_help=False)
    dist.add_argument("--dist", required=True, choices=[f.value for f in Family])
    dist.add_argument("-n", type=int, required=True, help="sample size")
    dist.add_argument("-K", type=int, default=None, help="number of cosine harmonics")
    dist.add_argument("-J", type=int, default=None, help="moment series truncation order")

    parser = argparse.ArgumentParser(prog="fourierpdf", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", parents=[common, dist], help="Fourier cosine coefficients")
    p.add_argument("--exact", action="store_true", help="add closed-form coefficients (uniform-sum only)")
    p.set_defaults(func=cmd_coeffs, subparser=p, default_decimals=10)

    p = sub.add_parser("eval", parents=[common, dist], help="evaluate pdf, cdf or upper tail")
    p.add_argument("--which", choices=["pdf", "cdf", "tail"], default="pdf")
    p.add_argument("--x", type=float, nargs="+", default=None)
    p.add_argument("--grid", default=None, metavar="A:B:STEPS")
    p.add_argument("--clip", action="store_true", help="clip negative density values at zero")
    p.set_defaults(func=cmd_eval, subparser=p, default_decimals=6)

    p = sub.add_parser("percentile", parents=[common, dist], help="solve F(x) = alpha")
    p.add_argument("--alpha", type=float, nargs="+", required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_percentile, subparser=p, default_decimals=4)

    p = sub.add_parser("reproduce", parents=[common], help="recompute a reference table and compare")
    p.add_argument("--table", type=int, required=True, choices=TABLE_IDS)
    p.set_defaults(func=cmd_reproduce, subparser=p, default_decimals=8)

    p = sub.add_parser("mc", parents=[common, dist], help="Monte Carlo histogram and KS distance")
    p.add_argument("-N", type=int, default=10**6, help="replications")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--bins", type=int, default=80)
    p.add_argument("--out", required=True, help="histogram CSV path")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_mc, subparser=p, default_decimals=6)

    p = sub.add_parser("check-geary", parents=[common], help="Geary recurrence consistency for skewness")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--grid-points", type=int, default=101)
    p.add_argument("--quad-points", type=int, default=256)
    p.set_defaults(func=cmd_check_geary, subparser=p, default_decimals=6)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision_bits < 256:
        parser.error("--precision-bits must be >= 256")
    decimals = args.decimals if args.decimals is not None else args.default_decimals
    try:
        result = args.func(args)
    except UsageError as exc:
        args.subparser.error(str(exc))
    except (QuadratureError, ArithmeticError) as exc:
        print(f"fourierpdf: numerical error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"fourierpdf: {exc}", file=sys.stderr)
        return EXIT_ERROR
    record, code = result if isinstance(result, tuple) else (result, EXIT_OK)
    if args.format == "json":
        sys.stdout.write(record.to_json() + "\n")
    else:
        sys.stdout.write(record.to_csv(decimals))
        for key, value in record.summary.items():
            print(f"{key}: {format_value(value, decimals)}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
