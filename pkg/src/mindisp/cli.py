"""Command-line front end.

    mindisp gen --kind van-der-corput --n 64 --dim 2 --seed 0 --out pts.txt
    mindisp disp --input pts.txt
    mindisp cff verify --family fam.txt --k 1 --r 2
    mindisp cff search --k 1 --r 1 --d 3
    mindisp reduce --input pts.txt --eps 0.01 --k 1
    mindisp bounds --eps 1e-4 --dim 1000000
    mindisp regions --dim 1000000 --eps-min 1e-12 --eps-max 1e-2 --steps 11 --format csv

Data goes to standard output, diagnostics to standard error.  Exit codes:
0 success, 2 usage, 3 parse, 4 validity/parameter, 5 node budget.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bounds import best_main_bound, lower_bound_catalog, region_csv, region_scan, upper_bound_catalog
from .cff import min_ground_size, read_family, verify_cover_free
from .emptybox import DEFAULT_NODE_BUDGET, largest_empty_box
from .errors import BudgetExhausted, MindispError, ParameterError, ParseError, ValidityError
from .geometry import GENERATORS, generate_points, read_points, write_points
from .reduction import reduction_consistency

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VALIDITY, EXIT_BUDGET = 0, 2, 3, 4, 5


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def cmd_gen(args) -> int:
    X = generate_points(args.kind, args.n, args.dim, args.m, args.seed)
    write_points(X, args.out)
    _emit({"kind": args.kind, "dim": X.dim, "points": len(X), "seed": args.seed, "out": args.out})
    return EXIT_OK


def cmd_disp(args) -> int:
    X = read_points(args.input)
    try:
        res = largest_empty_box(X, node_budget=args.budget)
    except BudgetExhausted as exc:
        print(f"error: {exc}; best empty box so far has volume {exc.best.value!r}", file=sys.stderr)
        return EXIT_BUDGET
    _emit(res.to_json())
    if args.figure:
        from .plotting import plot_dispersion_2d

        plot_dispersion_2d(X, res, args.figure)
    return EXIT_OK


def cmd_cff_verify(args) -> int:
    F = read_family(args.family)
    _emit(verify_cover_free(F, args.k, args.r).to_json())
    return EXIT_OK


def cmd_cff_search(args) -> int:
    res = min_ground_size(args.k, args.r, args.d, node_budget=args.budget)
    _emit(res.to_json())
    if not res.exact:
        print(f"warning: node budget {args.budget} exhausted; C lies in [{res.lo}, {res.hi}]", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_reduce(args) -> int:
    X = read_points(args.input)
    _emit(reduction_consistency(X, args.eps, args.k).to_json())
    return EXIT_OK


def cmd_bounds(args) -> int:
    if not 0.0 < args.eps < 1.0:
        raise ParameterError(f"eps must lie in (0, 1), got {args.eps}")
    out = {
        "eps": args.eps,
        "dim": args.dim,
        "lower": [r.to_json() for r in lower_bound_catalog(args.eps, args.dim, c=args.c)],
        "main": best_main_bound(args.eps, args.dim).to_json() if args.dim >= 2 else None,
        "upper": [
            r.to_json() for r in upper_bound_catalog(args.eps, args.dim, big_c=args.big_c, c=args.c)
        ]
        if args.dim >= 2
        else [],
    }
    _emit(out)
    return EXIT_OK


def cmd_regions(args) -> int:
    rows = region_scan(args.dim, args.eps_min, args.eps_max, args.steps)
    if args.format == "csv":
        sys.stdout.write(region_csv(rows))
    else:
        from .svgchart import render_regions_svg

        sys.stdout.write(render_regions_svg(rows, args.dim))
    if args.figure:
        from .plotting import plot_regions

        plot_regions(rows, args.dim, args.figure)
    return EXIT_OK


def _steps(text: str) -> int:
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("steps must be >= 2")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mindisp", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a point set file")
    g.add_argument("--kind", required=True, choices=GENERATORS)
    g.add_argument("--n", type=int, default=0)
    g.add_argument("--dim", type=int, required=True)
    g.add_argument("--m", type=int, default=None, help="points per axis (centered-grid)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("disp", help="exact dispersion of a point set file")
    d.add_argument("--input", required=True)
    d.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    d.add_argument("--figure", default=None, help="also draw points and witness (d = 2)")
    d.set_defaults(func=cmd_disp)

    c = sub.add_parser("cff", help="cover-free family tools")
    csub = c.add_subparsers(dest="action", required=True)
    v = csub.add_parser("verify")
    v.add_argument("--family", required=True)
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--r", type=int, required=True)
    v.set_defaults(func=cmd_cff_verify)
    s = csub.add_parser("search")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--budget", type=int, default=10**7)
    s.set_defaults(func=cmd_cff_search)

    r = sub.add_parser("reduce", help="check the box-hitting / cover-free link on a point set")
    r.add_argument("--input", required=True)
    r.add_argument("--eps", type=float, required=True)
    r.add_argument("--k", type=int, required=True)
    r.set_defaults(func=cmd_reduce)

    b = sub.add_parser("bounds", help="evaluate every bound at (eps, d)")
    b.add_argument("--eps", type=float, required=True)
    b.add_argument("--dim", type=int, required=True)
    b.add_argument("--c", type=float, default=1.0, help="stand-in for the unspecified constants c")
    b.add_argument("--big-c", type=float, default=1.0, help="stand-in for the unspecified constant C")
    b.set_defaults(func=cmd_bounds)

    rg = sub.add_parser("regions", help="best rigorous lower bound over an eps grid")
    rg.add_argument("--dim", type=int, required=True)
    rg.add_argument("--eps-min", type=float, required=True)
    rg.add_argument("--eps-max", type=float, required=True)
    rg.add_argument("--steps", type=_steps, required=True)
    rg.add_argument("--format", choices=("csv", "svg"), default="csv")
    rg.add_argument("--figure", default=None, help="also render a matplotlib figure to this path")
    rg.set_defaults(func=cmd_regions)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidityError, ParameterError) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_VALIDITY
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except MindispError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDITY


if __name__ == "__main__":
    sys.exit(main())
