"""Command-line entry point: twirlplot --csv results.csv --kind ... --out fig.png."""

from __future__ import annotations

import argparse

from .plots import KINDS, PlotSpec, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="twirlplot")
    parser.add_argument("--csv", required=True, help="sweep results.csv")
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--ansatz", type=int, nargs="*", default=[],
                        help="optional ansatz-id filter")
    parser.add_argument("--depth", type=int, nargs="*", default=[],
                        help="optional depth filter")
    args = parser.parse_args(argv)
    spec = PlotSpec(args.csv, args.kind, args.out,
                    tuple(args.ansatz), tuple(args.depth))
    agg = render(spec)
    print(f"wrote {args.out} ({len(agg.ansatz_ids)} ansatzes x {len(agg.orders)} orders)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
