"""Command-line front end.

Three command groups: `lattice` loads and validates order structures,
`shapes` enumerates simplices and horns over them, and `verify` runs
the named verification suites and emits a text or JSON report (with
optional rendered figures).  Exit status: 0 on success, 1 when a
verification check fails or a lattice fails validation, 2 for bad
arguments.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .lattice import LatticeStructureError, builtin_lattice, validate_lattice
from .report import SUITE_NAMES, RunConfig
from .shapes import (
    HornSpec,
    enumerate_horn,
    enumerate_simplex,
    point_label,
)

__all__ = ["main"]


def _load_lattice(parser: argparse.ArgumentParser, source: str):
    try:
        return builtin_lattice(source)
    except (ValueError, LatticeStructureError, OSError) as exc:
        parser.error(f"cannot load lattice {source!r}: {exc}")


def _cmd_lattice_check(parser, args) -> int:
    try:
        lat = builtin_lattice(args.source)
    except (ValueError, LatticeStructureError, OSError) as exc:
        print(f"invalid: {exc}")
        return 1
    violations = validate_lattice(lat)
    if not violations:
        print(f"ok: {args.source} is a bounded distributive lattice "
              f"({lat.size} elements)")
        return 0
    for v in violations:
        witness = ", ".join(lat.label(i) for i in v.witness)
        print(f"violated: {v.axiom}  at  {witness}")
    return 1


def _cmd_lattice_list(parser, args) -> int:
    print("chain:N       total order 0 < 1 < ... < N-1  (N >= 1)")
    print("boolean:K     subsets of a K-element set under union/intersection")
    print("product:A,B   componentwise product of two sources")
    print("<path>        JSON file with size/meet/join/bottom/top tables")
    return 0


def _cmd_lattice_show(parser, args) -> int:
    lat = _load_lattice(parser, args.source)
    labels = [lat.label(i) for i in range(lat.size)]
    width = max(len(s) for s in labels)

    def table(rows) -> list[str]:
        head = " " * width + " | " + " ".join(s.rjust(width) for s in labels)
        lines = [head, "-" * len(head)]
        for i, row in enumerate(rows):
            lines.append(
                labels[i].rjust(width)
                + " | "
                + " ".join(labels[v].rjust(width) for v in row)
            )
        return lines

    print(f"{args.source}: {lat.size} elements, "
          f"bottom = {lat.label(lat.bottom)}, top = {lat.label(lat.top)}")
    print()
    print("meet:")
    print("\n".join(table(lat.meet)))
    print()
    print("join:")
    print("\n".join(table(lat.join)))
    return 0


def _cmd_shapes(parser, args) -> int:
    lat = _load_lattice(parser, args.source)
    if args.kind == "horn":
        if not 0 <= args.k <= args.n:
            parser.error(f"horn index k = {args.k} out of range 0..{args.n}")
        spec = HornSpec(args.n, args.k)
        points = enumerate_horn(lat, spec, args.guard)
        title = f"horn n={args.n} k={args.k} over {args.source}"
    else:
        points = enumerate_simplex(lat, args.n, args.guard)
        title = f"simplex n={args.n} over {args.source}"
    if args.format == "jsonl":
        for pt in points:
            print(json.dumps(
                {"coords": list(pt.coords), "label": point_label(lat, pt)},
                sort_keys=True,
            ))
    else:
        for pt in points:
            print(point_label(lat, pt))
    if args.figure:
        from .figures import render_points_figure

        try:
            render_points_figure(lat, points, args.figure, title)
        except ValueError as exc:
            parser.error(str(exc))
        print(f"figure written to {args.figure}", file=sys.stderr)
    return 0


def _cmd_verify(parser, args) -> int:
    selected = set(args.suite or [])
    if args.suite_pos and args.suite_pos != "all":
        selected.add(args.suite_pos)
    suites = tuple(s for s in SUITE_NAMES if s in selected) or SUITE_NAMES
    kwargs = dict(
        guard=args.guard,
        seed=args.seed,
        instances=args.instances,
        suites=suites,
    )
    if args.lattice:
        kwargs["lattices"] = tuple(args.lattice)
    if args.nmax is not None:
        kwargs["nmax"] = args.nmax
    try:
        config = RunConfig(**kwargs)
        config.resolve_lattices()
    except (ValueError, LatticeStructureError, OSError) as exc:
        parser.error(str(exc))

    from .suites import run_suites

    report = run_suites(config)
    if args.format == "json":
        sys.stdout.write(report.render_json())
    else:
        sys.stdout.write(report.render_text())
    if args.figures:
        from .figures import render_report_figure

        os.makedirs(args.figures, exist_ok=True)
        path = os.path.join(args.figures, "report.png")
        render_report_figure(report, path)
        print(f"figure written to {path}", file=sys.stderr)
    return report.exit_code


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anodyne",
        description="Finite-model verification of the lifting calculus "
        "of pushout-products, pullback-homs, and horn retracts.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    lat = sub.add_parser("lattice", help="load, validate, and print lattices")
    lat_sub = lat.add_subparsers(dest="subcommand", required=True)
    p = lat_sub.add_parser("check", help="validate the twelve lattice equations")
    p.add_argument("source", help="chain:N, boolean:K, product:A,B, or a file")
    p.set_defaults(func=_cmd_lattice_check)
    p = lat_sub.add_parser("list", help="list builtin lattice formats")
    p.set_defaults(func=_cmd_lattice_list)
    p = lat_sub.add_parser("show", help="print labeled meet/join tables")
    p.add_argument("source")
    p.set_defaults(func=_cmd_lattice_show)

    shapes = sub.add_parser("shapes", help="enumerate simplices and horns")
    shapes_sub = shapes.add_subparsers(dest="subcommand", required=True)
    for kind in ("simplex", "horn"):
        p = shapes_sub.add_parser(
            kind, help=f"list the points of a {kind} over a lattice"
        )
        p.add_argument("source", help="lattice source")
        p.add_argument("n", type=int, help="dimension (n >= 0)")
        if kind == "horn":
            p.add_argument("k", type=int, help="left-out face index")
        p.add_argument(
            "--format", choices=("text", "jsonl"), default="text",
            help="text labels (default) or one JSON object per point",
        )
        p.add_argument(
            "--figure", metavar="PATH",
            help="also render the points to an image (total orders only)",
        )
        p.add_argument(
            "--guard", type=int, default=None,
            help="override the enumeration size guard",
        )
        p.set_defaults(func=_cmd_shapes, kind=kind)

    verify = sub.add_parser("verify", help="run verification suites")
    verify.add_argument(
        "suite_pos", nargs="?", default="all", metavar="suite",
        choices=SUITE_NAMES + ("all",),
        help=f"one of {', '.join(SUITE_NAMES)}, or all (default)",
    )
    verify.add_argument(
        "--suite", action="append", choices=SUITE_NAMES,
        help="add a suite to the selection (repeatable)",
    )
    verify.add_argument(
        "--lattice", action="append", metavar="SOURCE",
        help="lattice for the retract suite (repeatable; default "
        "chain:2 chain:3 chain:4 boolean:2)",
    )
    verify.add_argument(
        "--nmax", "--n", dest="nmax", type=int, default=None,
        help="dimension bound: retract suite cap and symbolic sweep bound",
    )
    verify.add_argument(
        "--guard", type=int, default=RunConfig().guard,
        help="size guard for derived sets (default %(default)s)",
    )
    verify.add_argument(
        "--seed", type=int, default=0, help="random seed (default 0)"
    )
    verify.add_argument(
        "--instances", type=int, default=100,
        help="random instances per property suite (default 100)",
    )
    verify.add_argument(
        "--format", choices=("text", "json"), default="text",
        help="report format (default text)",
    )
    verify.add_argument(
        "--figures", metavar="DIR",
        help="also render report figures into this directory",
    )
    verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(parser, args)


if __name__ == "__main__":
    raise SystemExit(main())
