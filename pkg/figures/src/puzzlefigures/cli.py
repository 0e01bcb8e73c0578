"""Command-line entry point: one CSV in, one image out."""

from __future__ import annotations

import argparse
import sys

from .render import KINDS, FigureSpec, render_figure
from .schema import SchemaError

EXIT_OK = 0
EXIT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="puzzlefigures",
        description="Render charts from a puzzlebench aggregates CSV.",
    )
    parser.add_argument("--csv", required=True, help="aggregates CSV file")
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--dpi", type=int, default=150)
    parser.add_argument(
        "--no-inset",
        dest="inset",
        action="store_false",
        help="skip the tokens-per-request inset on the hanoi chart",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = None
    try:
        spec = FigureSpec(
            csv_path=args.csv,
            kind=args.kind,
            out_path=args.out,
            dpi=args.dpi,
            inset=args.inset,
        )
        render_figure(spec)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(f"wrote {args.out}", file=sys.stderr)
    return EXIT_OK


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
