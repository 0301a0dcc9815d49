"""Small plotting CLI over exported result files.

Examples:
    mpsplit-plot --kind cdf --in out/cdf/cdf.csv --traffic 1 --out cdf_t1.png
    mpsplit-plot --kind decision_timeseries --field power \\
        --in out/records/decisions.csv --out power.png
    mpsplit-plot --kind sweep_lines --in sweep/sweep.csv --out sweep.png
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import DECISION_FIELDS, KINDS, FigureSpec, plot
from .schema import SchemaError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mpsplit-plot", description=__doc__)
    parser.add_argument("--kind", choices=KINDS, required=True)
    parser.add_argument("--in", dest="input_path", type=Path, required=True, help="input CSV")
    parser.add_argument("--out", dest="output_path", type=Path, required=True, help="output image")
    parser.add_argument("--traffic", type=int, default=None, help="traffic type to plot (1-based)")
    parser.add_argument(
        "--solutions",
        default=None,
        help="comma-separated solution filter (default: all present)",
    )
    parser.add_argument(
        "--field",
        choices=DECISION_FIELDS,
        default="ratio",
        help="decision_timeseries variant: split ratios or transmit powers",
    )
    parser.add_argument("--title", default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    solutions = None
    if args.solutions:
        solutions = tuple(s.strip() for s in args.solutions.split(",") if s.strip())
    try:
        spec = FigureSpec(
            kind=args.kind,
            input_path=args.input_path,
            output_path=args.output_path,
            traffic=args.traffic,
            solutions=solutions,
            decision_field=args.field,
            title=args.title,
        )
        out = plot(spec)
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
