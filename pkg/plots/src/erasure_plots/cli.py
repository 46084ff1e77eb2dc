"""`plot <erasure|pdf> --csv <path> --out <path>` front end."""

from __future__ import annotations

import argparse
import sys

from .render import PlotSpec, SchemaError, plot_erasure_panel, plot_pdf_overlay


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="plot", description="Render erasure-probability result CSVs."
    )
    p.add_argument("kind", choices=["erasure", "pdf"])
    p.add_argument("--csv", required=True, help="input CSV from erasure-sim")
    p.add_argument("--out", required=True, help="output image path")
    p.add_argument("--linear-y", action="store_true",
                   help="linear instead of log y axis (erasure panels)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = PlotSpec(
        csv_path=args.csv,
        panel=args.kind,
        output_path=args.out,
        log_y=not args.linear_y,
    )
    try:
        if args.kind == "erasure":
            plot_erasure_panel(spec)
        else:
            plot_pdf_overlay(spec)
    except (SchemaError, OSError) as exc:
        print(f"plot: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
