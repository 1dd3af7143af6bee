"""Command-line front end.

Usage::

    geofermat solve    scene.json [--tol R] [--out F]
    geofermat inverse  scene.json [--out F]
    geofermat classify scene.json
    geofermat epsilon  scene.json [--grid S] [--out F] [--svg F]

Exit status is 0 on success, 1 for invalid input and 2 when the solver
does not converge.  Every command validates the whole scene before writing
anything.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

import numpy as np

from .epsilon import EpsilonConfig, epsilon_sweep
from .errors import ConvergenceError, GeofermatError, SceneError
from .fermat import DEFAULT_TOL, classify, inequality_margins, probe_check, solve_forward
from .inverse import angle_fan_at, inverse_weights
from .scene import load_scene

EXIT_OK, EXIT_INVALID, EXIT_CONVERGENCE = 0, 1, 2


def fmt(x):
    """17 significant digits, so the CSV round-trips doubles exactly."""
    if x is None:
        return ""
    return format(float(x), ".17g")


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def parse_grid(spec):
    """Parse ``logspace:lo,hi,n``, ``linspace:lo,hi,n`` or a comma list."""
    kind, sep, rest = spec.partition(":")
    try:
        if not sep:
            values = [float(v) for v in spec.split(",") if v.strip()]
            if not values:
                raise SceneError("empty epsilon grid")
            return tuple(values)
        parts = rest.split(",")
        if len(parts) != 3:
            raise SceneError(f"grid {spec!r} needs three parameters lo,hi,n")
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise SceneError(f"cannot parse grid {spec!r}") from None
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise SceneError(f"grid bounds must satisfy lo <= hi, got {lo} > {hi}")
    if n < 1:
        raise SceneError(f"grid needs at least one point, got n={n}")
    if kind == "logspace":
        if lo <= 0.0:
            raise SceneError("logspace bounds must be positive")
        return tuple(np.logspace(math.log10(lo), math.log10(hi), n).tolist())
    if kind == "linspace":
        return tuple(np.linspace(lo, hi, n).tolist())
    raise SceneError(f"unknown grid kind {kind!r}; use logspace, linspace or a comma list")


def cmd_solve(args):
    scene = load_scene(args.scene)
    scene.require("weights")
    sol = solve_forward(scene.weights, scene.triangle, scene.surface, tol=args.tol)
    ok, best = probe_check(sol, scene.weights, scene.triangle, scene.surface)
    if not ok:
        raise ConvergenceError(f"a random probe beats the solution: {best!r} < {sol.objective!r}",
                               best=sol.location)
    coords = list(sol.location) + [None] * (3 - len(sol.location))
    row = [str(sol.topology), *map(fmt, coords), *map(fmt, sol.branches), fmt(sol.objective), fmt(sol.residual)]
    header = ["topology", "a0_1", "a0_2", "a0_3", "branch_1", "branch_2", "branch_3", "objective", "residual"]
    _emit(_csv_text(header, [row]), args.out)


def cmd_inverse(args):
    scene = load_scene(args.scene)
    scene.require("a0")
    fan = angle_fan_at(scene.surface, scene.triangle, scene.a0)
    w = inverse_weights(fan, scene.C)
    header = ["B1", "B2", "B3", "C", "angle_12", "angle_23", "angle_31"]
    _emit(_csv_text(header, [[*map(fmt, w), fmt(w.C), *map(fmt, fan)]]), args.out)


def cmd_classify(args):
    scene = load_scene(args.scene)
    scene.require("weights")
    topo = classify(scene.weights, scene.triangle, scene.surface)
    margins = inequality_margins(scene.weights, scene.triangle, scene.surface)
    header = ["topology", "margin_1", "margin_2", "margin_3"]
    _emit(_csv_text(header, [[str(topo), *map(fmt, margins)]]), None)


def cmd_epsilon(args):
    scene = load_scene(args.scene)
    grid = parse_grid(args.grid) if args.grid is not None else scene.epsilon_grid
    if grid is None:
        raise SceneError("scene is missing required field: epsilon_grid (or pass --grid)")
    cfg = EpsilonConfig(scene.surface, scene.triangle, 0.0, scene.C)
    rows = epsilon_sweep(cfg, grid)
    out = []
    for row in rows:
        r = row.result
        if r is None:
            out.append([fmt(row.eps)] + [""] * 7 + [row.status])
        else:
            out.append([fmt(r.eps), *map(fmt, r.weights), fmt(r.deviation), *map(fmt, r.fan), row.status])
    header = ["eps", "B1", "B2", "B3", "deviation", "angle_12", "angle_23", "angle_31", "status"]
    text = _csv_text(header, out)
    if args.svg is not None:
        from .svg import render_epsilon_svg

        render_epsilon_svg(scene.surface, scene.triangle, rows, args.svg)
    _emit(text, args.out)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="geofermat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="locate the weighted Fermat-Torricelli point")
    p.add_argument("scene")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative stationarity tolerance")
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("inverse", help="weights that make a0 the minimizer")
    p.add_argument("scene")
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser("classify", help="floating or absorbed tree")
    p.add_argument("scene")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("epsilon", help="epsilon sweep of the vertex A1")
    p.add_argument("scene")
    p.add_argument("--grid", help="logspace:lo,hi,n | linspace:lo,hi,n | comma list")
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.add_argument("--svg", help="write an SVG of the unrolled triangle and A0(eps)")
    p.set_defaults(func=cmd_epsilon)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "tol", 1.0) <= 0.0:
        print("geofermat: error: --tol must be positive", file=sys.stderr)
        return EXIT_INVALID
    try:
        args.func(args)
    except ConvergenceError as exc:
        print(f"geofermat: convergence failure: {exc}", file=sys.stderr)
        if exc.best is not None:
            print(f"geofermat: best iterate {list(map(fmt, exc.best))}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except GeofermatError as exc:
        print(f"geofermat: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
