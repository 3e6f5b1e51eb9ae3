"""Command-line entry point: ``lemni <command> [options]``.

Exit codes are shared by every command: 0 success or holds, 1 semantic
failure (non-membership, violation), 2 bad input, 3 evaluation error,
4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analytic as an
from .criteria import CriterionKind, CriterionParams, gamma_threshold
from .errors import BasePointMismatch, EvaluationError, InvalidParams, LemniError
from .harness import margin_sweep, run_verification
from .regions import boundary_csv, boundary_svg, region_from_spec
from .subordination import DEFAULT_RADII, ClassSpec, DiskGrid, class_membership

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EVAL, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _radii(text):
    return tuple(float(r) for r in text.split(","))


def _grid(args):
    return DiskGrid(args.radii or DEFAULT_RADII, args.angles)


def _load_function(spec):
    path = Path(spec)
    if not spec.lstrip().startswith("{") and path.suffix == ".json" and path.is_file():
        spec = path.read_text()
    try:
        return an.from_spec(spec)
    except (KeyError, ValueError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"malformed function spec {spec!r}: {exc}") from exc


def _write(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {out}: {exc}") from exc


def _add_params(p, gamma=True):
    p.add_argument("--A", type=float, default=1.0)
    p.add_argument("--B", type=float, default=0.0)
    p.add_argument("--c", type=float, default=1.0)
    if gamma:
        p.add_argument("--gamma", type=float, default=None, help="defaults to the threshold")
    p.add_argument("--k", type=float, default=1.0)


def _add_grid(p):
    p.add_argument("--radii", type=_radii, default=None, help="comma-separated radii")
    p.add_argument("--angles", type=int, default=512)


# ----------------------------------------------------------------- commands


def threshold_note(A, B, c):
    if A == 0 and B == 0:
        return "degenerate: A=B=0"
    if A == 1 and B == 0 and c == 1:
        return "A=1, B=0, c=1 specialization: gamma >= 4 (real-part form)"
    if c == 1:
        return "c=1 specialization: 4(|A|+|B|)/(1-|B|)"
    if A == 1 and B == 0:
        return "A=1, B=0 specialization: 2(1+1/c)"
    return "general bound 2(|A|+|B|)(1+c)/(c(1-|B|))"


def cmd_threshold(args):
    try:
        value = gamma_threshold(args.A, args.B, args.c)
    except InvalidParams as exc:
        raise UsageError(str(exc)) from exc
    print(f"{value!r}")
    print(f"note: {threshold_note(args.A, args.B, args.c)}")
    return EXIT_OK


def cmd_check(args):
    f = _load_function(args.f)
    try:
        spec = ClassSpec(args.cls, c=args.c, A=args.A, B=args.B)
        grid = _grid(args)
    except InvalidParams as exc:
        raise UsageError(str(exc)) from exc
    try:
        verdict = class_membership(f, spec, grid)
    except BasePointMismatch as exc:
        print(json.dumps({"holds": False, "status": "base point mismatch", "detail": str(exc)}))
        return EXIT_FAIL
    doc = verdict.to_dict() | {"class": spec.describe()}
    _write(json.dumps(doc, sort_keys=True) + "\n", args.out)
    return EXIT_OK if verdict.holds_at_resolution else EXIT_FAIL


def _criterion_params(args, kind):
    base = CriterionParams(gamma=1.0, A=args.A, B=args.B, c=args.c, k=args.k).for_kind(kind)
    gamma = args.gamma
    if gamma is None:
        gamma = base.threshold if kind.has_gamma else 1.0
    return CriterionParams(gamma=gamma, A=base.A, B=base.B, c=base.c, k=base.k)


def cmd_verify(args):
    kind = CriterionKind.parse(args.kind)
    params = _criterion_params(args, kind)
    report = run_verification(kind, params, args.trials, args.seed, _grid(args), explore=args.explore)
    _write(report.to_json(indent=2) + "\n", args.out)
    print(
        f"{kind.value}: hypothesis_true_count={report.hypothesis_true_count} "
        f"violations={len(report.conclusion_violations)} mode={report.mode}",
        file=sys.stderr,
    )
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_plot_boundary(args):
    if args.n < 16:
        raise UsageError("--n must be at least 16")
    region = region_from_spec(args.region, c=args.c, A=args.A, B=args.B)
    text = boundary_csv(region, args.n) if args.format == "csv" else boundary_svg(region, args.n)
    _write(text, args.out)
    return EXIT_OK


def cmd_margin_sweep(args):
    kind = CriterionKind.parse(args.kind)
    params = _criterion_params(args, kind)
    table = margin_sweep(kind, params, args.multipliers, args.trials, args.seed, _grid(args))
    text = table.to_csv() if args.format == "csv" else table.to_json(indent=2) + "\n"
    _write(text, args.out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="lemni", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("threshold", help="smallest admissible gamma for (A, B, c)")
    _add_params(p, gamma=False)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("check", help="class membership verdict for one function")
    p.add_argument("--f", required=True, help="family spec (moebius:a=1), JSON tree, or .json file")
    p.add_argument("--class", dest="cls", required=True,
                   choices=["sstar_qc", "sl", "janowski", "cor24", "cor27"])
    _add_params(p, gamma=False)
    _add_grid(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="randomized verification of one criterion")
    p.add_argument("--kind", required=True, choices=[k.value for k in CriterionKind])
    _add_params(p)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--explore", action="store_true", help="report only; allow gamma below threshold")
    _add_grid(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plot-boundary", help="boundary curve as CSV or SVG")
    p.add_argument("--region", required=True, choices=["lemniscate", "janowski"])
    p.add_argument("--A", type=float, default=1.0)
    p.add_argument("--B", type=float, default=0.0)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--n", type=int, default=1024)
    p.add_argument("--format", choices=["csv", "svg"], default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_plot_boundary)

    p = sub.add_parser("margin-sweep", help="min conclusion margin versus gamma multiplier")
    p.add_argument("--kind", required=True, choices=[k.value for k in CriterionKind if k.has_gamma])
    _add_params(p)
    p.add_argument("--multipliers", type=lambda s: [float(x) for x in s.split(",")],
                   default=[0.25, 0.5, 1.0, 2.0])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    _add_grid(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_margin_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, InvalidParams) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EvaluationError as exc:
        point = getattr(exc, "point", None)
        doc = {"error": str(exc), "witness": None if point is None else {"re": point.real, "im": point.imag}}
        print(json.dumps(doc), file=sys.stderr)
        return EXIT_EVAL
    except LemniError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
