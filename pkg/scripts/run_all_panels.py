#!/usr/bin/env python3
"""Reproduce all four result panels plus the pdf-of-maximum data as CSVs.

Full budgets take a while single-threaded; pass --quick for a smoke run.

Usage:
    python3 scripts/run_all_panels.py --outdir results [--quick]
Then render with the plots package:
    plot erasure --csv results/panel_a.csv --out results/panel_a.png
    plot pdf --csv results/pdf_n4.csv --out results/pdf_n4.png
"""

import argparse
import pathlib
import sys

from preamble_erasure.cli import main as sim


def run(argv):
    print("+ erasure-sim " + " ".join(argv), file=sys.stderr)
    rc = sim(argv)
    if rc != 0:
        sys.exit(rc)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--quick", action="store_true",
                    help="2000 trials and a coarse SNR grid")
    args = ap.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    trials = "2000" if args.quick else "100000"
    snr = ["0", "2", "4"] if args.quick else [str(s) for s in range(0, 11)]
    common = ["--trials", trials, "--seed", str(args.seed), "--snr-db", *snr]

    for panel in ("a", "b", "c"):
        run(["--panel", panel, "--method", "quadrature", "monte_carlo",
             *common, "--out", str(outdir / f"panel_{panel}.csv")])
    run(["--panel", "d", "--n", "4", "--n-rt", "1",
         "--foff-fac", "0", "0.05", "0.1", "0.2",
         *common, "--out", str(outdir / "panel_d.csv")])
    for n in (4, 8):
        run(["--panel", "pdf", "--n", str(n), "--n-rt", "1", "--snr-db", "0", "4", "8",
             "--trials", trials, "--seed", str(args.seed),
             "--out", str(outdir / f"pdf_n{n}.csv")])


if __name__ == "__main__":
    main()
