"""Command-line figure rendering from simulation artifacts."""

from __future__ import annotations

import argparse
import sys

from .render import KINDS, FigureSpec, render
from .schema import SchemaError


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="socbec-figures",
        description="Render figures from socbec CSV/JSON artifacts")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render", help="render one figure")
    p.add_argument("inputs", nargs="+", help="artifact files")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--out", required=True, help="output image path")
    p.add_argument("--column", dest="columns", action="append", default=[],
                   help="trajectory column for timeseries (repeatable)")
    p.add_argument("--label", dest="labels", action="append", default=[],
                   help="legend label per input (repeatable)")

    p = sub.add_parser("paper-set",
                       help="render the standard seven-figure set")
    p.add_argument("--data", required=True, help="data root directory")
    p.add_argument("--out", required=True, help="output directory")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "render":
            style = {}
            if args.columns:
                style["columns"] = args.columns
            if args.labels:
                style["labels"] = args.labels
            render(FigureSpec(args.kind, tuple(args.inputs), style), args.out)
            return 0
        from .collection import render_standard_set
        for path in render_standard_set(args.data, args.out):
            print(path)
        return 0
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
