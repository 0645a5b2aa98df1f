"""Command line: render a figure from simulator artifacts.

Usage:
    plotkit dynamics3 --in trajectory.csv [--in2 summary.json] --out fig.png
    plotkit dynamics2 --in trajectory.csv [--in2 summary.json] --out fig.png
    plotkit contour   --in sweep.csv --out fig.png

Exit codes: 0 success, 1 usage/schema error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .figures import render_contour, render_dynamics
from .schema import SchemaError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> _Parser:
    parser = _Parser(prog="plotkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="kind", required=True)
    for kind, blurb in (
        ("dynamics3", "opinion, action, and discrepancy panels"),
        ("dynamics2", "opinion and action panels"),
        ("contour", "mean discrepancy over the trait grid"),
    ):
        p = sub.add_parser(kind, help=blurb)
        p.add_argument("--in", dest="input", required=True, metavar="PATH")
        p.add_argument("--out", dest="output", required=True, metavar="PATH")
        if kind.startswith("dynamics"):
            p.add_argument(
                "--in2",
                dest="summary",
                metavar="PATH",
                help="summary.json; colors the committed-minority rows separately",
            )
            p.add_argument("--alpha", type=float, default=0.25, help="agent-line alpha")
        else:
            p.add_argument("--levels", type=int, default=12, help="contour level count")
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.kind == "contour":
            render_contour(args.input, args.output, levels=args.levels)
        else:
            render_dynamics(
                args.input,
                args.output,
                panels=3 if args.kind == "dynamics3" else 2,
                summary_path=args.summary,
                alpha=args.alpha,
            )
    except (SchemaError, ValueError) as exc:
        print(f"plotkit: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"plotkit: i/o error: {exc}", file=sys.stderr)
        return 2
    print(args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
